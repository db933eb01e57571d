#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pqc {

enum class ErrorKind {
    DuplicateName,
    TypeValueMismatch,
    MalformedName,
    UnknownParam,
    UnknownGate,
    ArityMismatch,
    ParamTypeMisuse,
    ValidationFailed,
    NoRuleForGate,
    SymbolicQubitPresent,
    ConnectivityViolation,
    UnboundParam,
    LengthMismatch,
    UnboundParamInStrictMode,
    IoError,
    SyntaxError,
    IndexOutOfRange,
    MeasurementBeforeGate,
    UnsupportedOperation,
    TooFewNodesForRegular4,
    InvalidGraph,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `line()` is set by the cQASM parser.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> line = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> line_;
};

}  // namespace pqc
