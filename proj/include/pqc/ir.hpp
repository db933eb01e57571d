#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/error.hpp"
#include "pqc/param.hpp"
#include "pqc/platform.hpp"

namespace pqc {

/// How an operand is known to the compiler.
///
/// Literal: a plain number written into the circuit.
/// Symbolic: a parameter whose value is not known yet.
/// Bound: a parameter whose value has been substituted; the number is
/// known but the operand still remembers which parameter it came from, so
/// it can be rebound later.
enum class OperandKind : std::uint8_t { Literal, Symbolic, Bound };

class QubitRef {
public:
    template <std::integral T>
    QubitRef(T index) : index_(checked(index)) {}  // NOLINT(google-explicit-constructor)
    QubitRef(ParamId param) : kind_(OperandKind::Symbolic), param_(param) {}  // NOLINT(google-explicit-constructor)

    static QubitRef bound(ParamId param, std::size_t index);

    OperandKind kind() const noexcept { return kind_; }
    bool is_symbolic() const noexcept { return kind_ == OperandKind::Symbolic; }
    /// True for Literal and Bound operands.
    bool has_index() const noexcept { return kind_ != OperandKind::Symbolic; }
    std::size_t index() const;
    std::optional<ParamId> param() const noexcept;

    friend bool operator==(const QubitRef&, const QubitRef&) = default;

private:
    QubitRef() = default;
    template <std::integral T>
    static std::size_t checked(T index);

    OperandKind kind_ = OperandKind::Literal;
    std::size_t index_ = 0;
    ParamId param_{};
};

class AngleArg {
public:
    AngleArg(double radians) : radians_(radians) {}  // NOLINT(google-explicit-constructor)
    AngleArg(ParamId param) : kind_(OperandKind::Symbolic), param_(param) {}  // NOLINT(google-explicit-constructor)

    static AngleArg bound(ParamId param, double radians);

    OperandKind kind() const noexcept { return kind_; }
    bool is_symbolic() const noexcept { return kind_ == OperandKind::Symbolic; }
    bool has_value() const noexcept { return kind_ != OperandKind::Symbolic; }
    double value() const;
    std::optional<ParamId> param() const noexcept;

    friend bool operator==(const AngleArg&, const AngleArg&) = default;

private:
    OperandKind kind_ = OperandKind::Literal;
    double radians_ = 0.0;
    ParamId param_{};
};

struct Gate {
    std::string name;
    std::vector<QubitRef> qubits;
    std::optional<AngleArg> angle;
    std::optional<std::uint32_t> cycle;

    bool has_symbolic_qubit() const;
    bool has_param_operand() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// An ordered gate list. Gates added through gate() are checked against the
/// platform and the parameter registry the kernel was created with.
class Kernel {
public:
    Kernel(std::string name, std::shared_ptr<const PlatformConfig> platform,
           std::shared_ptr<const ParamRegistry> params);

    Kernel& gate(std::string_view name, std::vector<QubitRef> qubits, std::optional<AngleArg> angle = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    /// Used by passes; bypasses the checks done by gate().
    void replace_gates(std::vector<Gate> gates) { gates_ = std::move(gates); }

private:
    std::string name_;
    std::shared_ptr<const PlatformConfig> platform_;
    std::shared_ptr<const ParamRegistry> params_;
    std::vector<Gate> gates_;
};

class Program {
public:
    Program(std::string name, std::size_t qubit_count, std::shared_ptr<ParamRegistry> params);

    Program& add_kernel(Kernel kernel);

    const std::string& name() const noexcept { return name_; }
    std::size_t qubit_count() const noexcept { return qubit_count_; }
    const std::vector<Kernel>& kernels() const noexcept { return kernels_; }
    std::vector<Kernel>& kernels() noexcept { return kernels_; }
    const ParamRegistry& params() const noexcept { return *params_; }
    const std::shared_ptr<ParamRegistry>& params_ptr() const noexcept { return params_; }

    std::size_t gate_count() const;

    /// Digest of the circuit structure: names, operands and parameter ids.
    /// Parameter values are excluded, they change between iterations.
    std::uint64_t content_hash() const;

private:
    std::string name_;
    std::size_t qubit_count_;
    std::shared_ptr<ParamRegistry> params_;
    std::vector<Kernel> kernels_;
};

struct Diagnostic {
    enum class Severity { Error, Deferred };

    Severity severity = Severity::Error;
    std::string kernel;
    std::size_t gate_index = 0;
    std::string reason;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& diagnostic);

/// Structural checks. Returns an empty list for a well-formed program; never
/// throws for malformed input and never modifies its arguments.
std::vector<Diagnostic> validate(const Program& program, const PlatformConfig& platform);

/// Human readable rendering used in messages, e.g. `rz q[0], %theta`.
std::string describe(const Gate& gate, const ParamRegistry& params);

template <std::integral T>
std::size_t QubitRef::checked(T index) {
    if constexpr (std::signed_integral<T>) {
        if (index < 0) throw Error(ErrorKind::IndexOutOfRange, "negative qubit index");
    }
    return static_cast<std::size_t>(index);
}

}  // namespace pqc
