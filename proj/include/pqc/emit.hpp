#pragma once

#include <filesystem>
#include <string>

#include "pqc/template.hpp"

namespace pqc {

struct EmitOptions {
    /// Print unbound parameters as `%name` instead of failing.
    bool symbolic = false;
    /// Prepend `version 1.0` and `qubits N`.
    bool header = false;
};

/// cQASM text, one gate per line with a four-space indent:
///
///     hadamard q[1]
///     rz q[0], 2.1
///     cnot q[1], q[4]
///
/// Angles use at most 6 significant digits with trailing zeros trimmed.
std::string emit_cqasm(const BoundCircuit& circuit, const EmitOptions& options = {});
std::string emit_cqasm(const CompiledTemplate& tmpl, const EmitOptions& options = {});

/// Emission of a plain, fully numeric gate list.
std::string emit_cqasm(const std::vector<Gate>& gates, std::size_t qubit_count, const EmitOptions& options = {});

/// Writes exactly the emit_cqasm text. Throws IoError.
void write_cqasm_file(const BoundCircuit& circuit, const std::filesystem::path& path, const EmitOptions& options = {});
void write_cqasm_file(const CompiledTemplate& tmpl, const std::filesystem::path& path, const EmitOptions& options = {});

std::string format_angle(double radians);

}  // namespace pqc
