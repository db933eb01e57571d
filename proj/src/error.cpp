#include "pqc/error.hpp"

namespace pqc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::TypeValueMismatch: return "TypeValueMismatch";
        case ErrorKind::MalformedName: return "MalformedName";
        case ErrorKind::UnknownParam: return "UnknownParam";
        case ErrorKind::UnknownGate: return "UnknownGate";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::ParamTypeMisuse: return "ParamTypeMisuse";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::NoRuleForGate: return "NoRuleForGate";
        case ErrorKind::SymbolicQubitPresent: return "SymbolicQubitPresent";
        case ErrorKind::ConnectivityViolation: return "ConnectivityViolation";
        case ErrorKind::UnboundParam: return "UnboundParam";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::UnboundParamInStrictMode: return "UnboundParamInStrictMode";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::MeasurementBeforeGate: return "MeasurementBeforeGate";
        case ErrorKind::UnsupportedOperation: return "UnsupportedOperation";
        case ErrorKind::TooFewNodesForRegular4: return "TooFewNodesForRegular4";
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, std::optional<std::size_t> line) {
    std::string out(to_string(kind));
    if (line) out += " (line " + std::to_string(*line) + ")";
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind), line_(line) {}

}  // namespace pqc
