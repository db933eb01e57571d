#pragma once

// Test-only helpers: the four-gate listing program, a seeded generator of
// random parameterized programs, and small oracles that do not go through
// the compiler.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pqc/ir.hpp"
#include "pqc/platform.hpp"
#include "pqc/sim.hpp"
#include "pqc/template.hpp"

namespace pqc::testing {

/// hadamard %p_int / rz q[0], %p_real / ry %p_int2, %p_angle / cnot %p_int, %p_int2
struct Listing {
    std::shared_ptr<const PlatformConfig> platform;
    std::shared_ptr<ParamRegistry> registry;
    ParamId p_int, p_real, p_angle, p_int2;
    Program program;
};

inline Listing make_listing(std::uint64_t seed = 7) {
    auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(5));
    auto registry = std::make_shared<ParamRegistry>(seed);
    const ParamId p_int = registry->create(ParamType::Int);
    const ParamId p_real = registry->create(ParamType::Real, "pname");
    const ParamId p_angle = registry->create(ParamType::Angle, std::nullopt, 1.724);
    const ParamId p_int2 = registry->create(ParamType::Int, "pname2", 4);
    Kernel kernel("kernel", platform, registry);
    kernel.gate("hadamard", {p_int});
    kernel.gate("rz", {0}, p_real);
    kernel.gate("ry", {p_int2}, p_angle);
    kernel.gate("cnot", {p_int, p_int2});
    Program program("listing", 5, registry);
    program.add_kernel(std::move(kernel));
    return {platform, registry, p_int, p_real, p_angle, p_int2, std::move(program)};
}

/// Flattened gate list of a program whose operands all have values.
inline sim::Circuit to_circuit(const Program& program) {
    sim::Circuit c;
    c.qubit_count = program.qubit_count();
    for (const Kernel& k : program.kernels()) c.gates.insert(c.gates.end(), k.gates().begin(), k.gates().end());
    return c;
}

inline sim::Circuit to_circuit(const std::vector<Gate>& gates, std::size_t qubits) { return {qubits, gates}; }

struct RandomCase {
    /// Program with unvalued parameters.
    Program symbolic;
    /// Same circuit, every parameter constructed with its value from `binds`.
    Program prevalued;
    BindSet binds;  // keyed by ids of `symbolic`'s registry (ids coincide)
};

/// Random program on <= 6 qubits with <= 40 gates and <= 6 parameters.
/// Rotation runs on a shared qubit are deliberately frequent so the merge
/// rules get exercised.
inline RandomCase random_case(std::uint64_t seed, std::shared_ptr<const PlatformConfig> platform) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    std::uniform_real_distribution<double> angle_dist(-4.0, 4.0);

    const std::size_t qubits = uniform(2, 6);
    const std::size_t n_params = uniform(1, 6);
    struct Spec {
        ParamType type;
        double value;
    };
    std::vector<Spec> specs;
    for (std::size_t i = 0; i < n_params; ++i) {
        if (coin(0.35)) {
            specs.push_back({ParamType::Int, static_cast<double>(uniform(0, qubits - 1))});
        } else {
            specs.push_back({coin(0.5) ? ParamType::Angle : ParamType::Real, angle_dist(rng)});
        }
    }

    struct Op {
        std::string name;
        std::vector<std::size_t> qubits;
        std::vector<int> qubit_param;  // -1 literal
        double angle = 0;
        int angle_param = -1;
    };
    std::vector<Op> ops;
    const char* one_q[] = {"h", "x", "y", "z", "hadamard"};
    const char* rot[] = {"rx", "ry", "rz"};
    const std::size_t n_gates = uniform(1, 40);
    std::size_t hot = uniform(0, qubits - 1);
    for (std::size_t g = 0; g < n_gates; ++g) {
        Op op;
        const std::size_t pick = uniform(0, 9);
        if (pick <= 4) {
            op.name = rot[uniform(0, 2)];
            op.qubits = {coin(0.6) ? hot : uniform(0, qubits - 1)};
            op.angle = coin(0.2) ? std::numbers::pi * static_cast<double>(uniform(0, 4)) - 2 * std::numbers::pi
                                 : angle_dist(rng);
        } else if (pick <= 6) {
            op.name = one_q[uniform(0, 4)];
            op.qubits = {uniform(0, qubits - 1)};
        } else {
            op.name = pick == 7 ? "cnot" : (pick == 8 ? "cz" : "swap");
            const std::size_t a = uniform(0, qubits - 1);
            std::size_t b = uniform(0, qubits - 2);
            if (b >= a) ++b;
            op.qubits = {a, b};
            hot = coin(0.5) ? a : b;
        }
        for (std::size_t q : op.qubits) {
            int chosen = -1;
            if (coin(0.3)) {
                for (std::size_t i = 0; i < specs.size(); ++i) {
                    if (specs[i].type == ParamType::Int && specs[i].value == static_cast<double>(q)) chosen = static_cast<int>(i);
                }
            }
            op.qubit_param.push_back(chosen);
        }
        const bool rotation = op.name == "rx" || op.name == "ry" || op.name == "rz";
        if (rotation && coin(0.35)) {
            std::vector<int> angle_params;
            for (std::size_t i = 0; i < specs.size(); ++i) {
                if (specs[i].type != ParamType::Int) angle_params.push_back(static_cast<int>(i));
            }
            if (!angle_params.empty()) op.angle_param = angle_params[uniform(0, angle_params.size() - 1)];
        }
        ops.push_back(std::move(op));
    }

    auto build = [&](bool prevalued) {
        auto registry = std::make_shared<ParamRegistry>(seed);
        std::vector<ParamId> ids;
        for (const Spec& s : specs) {
            ids.push_back(prevalued ? registry->create(s.type, std::nullopt, s.value) : registry->create(s.type));
        }
        Kernel kernel("main", platform, registry);
        for (const Op& op : ops) {
            std::vector<QubitRef> refs;
            for (std::size_t i = 0; i < op.qubits.size(); ++i) {
                if (op.qubit_param[i] >= 0) {
                    refs.emplace_back(ids[static_cast<std::size_t>(op.qubit_param[i])]);
                } else {
                    refs.emplace_back(op.qubits[i]);
                }
            }
            std::optional<AngleArg> angle;
            const bool rotation = op.name == "rx" || op.name == "ry" || op.name == "rz";
            if (rotation) {
                angle = op.angle_param >= 0 ? AngleArg(ids[static_cast<std::size_t>(op.angle_param)]) : AngleArg(op.angle);
            }
            kernel.gate(op.name, std::move(refs), angle);
        }
        Program program("random" + std::to_string(seed), qubits, registry);
        program.add_kernel(std::move(kernel));
        return program;
    };

    RandomCase out{build(false), build(true), {}};
    for (std::size_t i = 0; i < specs.size(); ++i) out.binds[ParamId{static_cast<std::uint32_t>(i)}] = specs[i].value;
    return out;
}

/// Random fully literal circuit on <= 5 qubits, rich in same-axis runs and
/// multiples of pi.
inline Program random_literal_program(std::uint64_t seed, std::shared_ptr<const PlatformConfig> platform) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::uniform_real_distribution<double> angle_dist(-7.0, 7.0);
    const std::size_t qubits = uniform(1, 5);
    auto registry = std::make_shared<ParamRegistry>(seed);
    Kernel kernel("main", platform, registry);
    const char* rot[] = {"rx", "ry", "rz"};
    const std::size_t n = uniform(1, 40);
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t pick = uniform(0, 9);
        if (pick <= 6) {
            const double a = uniform(0, 3) == 0 ? std::numbers::pi * static_cast<double>(uniform(0, 4)) : angle_dist(rng);
            kernel.gate(rot[uniform(0, 2)], {uniform(0, qubits - 1)}, a);
        } else if (pick == 7 || qubits == 1) {
            kernel.gate(uniform(0, 1) ? "h" : "x", {uniform(0, qubits - 1)});
        } else {
            const std::size_t a = uniform(0, qubits - 1);
            std::size_t b = uniform(0, qubits - 2);
            if (b >= a) ++b;
            kernel.gate(uniform(0, 1) ? "cnot" : "cz", {a, b});
        }
    }
    Program program("literal" + std::to_string(seed), qubits, registry);
    program.add_kernel(std::move(kernel));
    return program;
}

/// Exhaustive max cut written independently of pqc::vqe.
template <class Edges>
double oracle_max_cut(std::size_t n, const Edges& edges) {
    double best = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        double cut = 0;
        for (const auto& e : edges) {
            if (((mask >> e.a) & 1ULL) != ((mask >> e.b) & 1ULL)) cut += e.weight;
        }
        best = std::max(best, cut);
    }
    return best;
}

}  // namespace pqc::testing
