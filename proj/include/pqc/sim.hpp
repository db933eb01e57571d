#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/ir.hpp"

namespace pqc {
class BoundCircuit;
}

namespace pqc::sim {

/// Fully numeric circuit as read back from cQASM.
struct Circuit {
    std::size_t qubit_count = 0;
    std::vector<Gate> gates;
};

/// Parses the cQASM subset produced by emit_cqasm. Without a `qubits`
/// line the qubit count is one past the largest index used. Symbolic
/// operands are rejected: only bound circuits can be executed.
Circuit parse_cqasm(std::string_view text);

/// Gate list of a bound circuit, for simulation without going through text.
Circuit from_bound(const BoundCircuit& circuit);

/// Dense state over n qubits. Qubit 0 is the least significant bit of the
/// basis index. Rotations follow R_P(theta) = exp(-i theta P / 2).
class Statevector {
public:
    explicit Statevector(std::size_t qubit_count);

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    std::span<const std::complex<double>> amplitudes() const noexcept { return amplitudes_; }
    double norm_squared() const;

    /// Applies one unitary gate. measure is a no-op here; prep_z is only
    /// accepted while the qubit is still |0>.
    void apply(const Gate& gate);

    /// Probability of each basis index.
    std::vector<double> probabilities() const;

private:
    void apply_1q(std::size_t q, const std::complex<double> (&m)[2][2]);

    std::size_t qubit_count_;
    std::vector<std::complex<double>> amplitudes_;
    std::vector<bool> touched_;
};

/// Evolves |0...0> through every non-measure gate.
Statevector evolve(const Circuit& circuit);

struct Counts {
    /// Bitstring over the measured qubits in ascending qubit order: the
    /// first character is the lowest measured qubit.
    std::map<std::string, std::uint64_t> histogram;
    std::uint64_t shots = 0;

    friend bool operator==(const Counts&, const Counts&) = default;
};

/// Samples `shots` outcomes from the exact distribution with an mt19937_64
/// seeded with `seed`, one inverse-CDF draw per shot.
Counts run(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed);

/// Exact marginal over the measured qubits.
std::map<std::string, double> exact_distribution(const Circuit& circuit);

/// Measured qubits in ascending order. Throws MeasurementBeforeGate when a
/// measured qubit is used again afterwards.
std::vector<std::size_t> measured_qubits(const Circuit& circuit);

/// Per-amplitude comparison after removing a global phase.
bool equal_up_to_global_phase(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                              double tolerance);

}  // namespace pqc::sim
