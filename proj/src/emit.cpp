#include "pqc/emit.hpp"

#include <cstdio>
#include <fstream>

#include "pqc/error.hpp"

namespace pqc {

std::string format_angle(double radians) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", radians);
    std::string out(buf);
    if (out == "-0") out = "0";
    return out;
}

namespace {

void append_header(std::string& out, std::size_t qubit_count) {
    out += "version 1.0\n";
    out += "qubits " + std::to_string(qubit_count) + "\n";
}

void append_qubit(std::string& out, std::size_t index) {
    out += "q[";
    out += std::to_string(index);
    out += ']';
}

/// Shared line writer. `qubit_of` / `angle_of` return the numeric value of
/// a parameter operand, or nullopt when it is unbound.
template <class QubitOf, class AngleOf>
void append_gate(std::string& out, const Gate& gate, const ParamRegistry* params, const EmitOptions& options,
                 QubitOf&& qubit_of, AngleOf&& angle_of) {
    auto unbound = [&](ParamId id) {
        const std::string name = params ? params->at(id).name : std::to_string(id.value);
        if (!options.symbolic) {
            throw Error(ErrorKind::UnboundParamInStrictMode, "parameter '" + name + "' has no value");
        }
        out += '%';
        out += name;
    };
    out += "    ";
    out += gate.name;
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        out += i == 0 ? " " : ", ";
        const QubitRef& q = gate.qubits[i];
        if (auto id = q.param()) {
            if (auto v = qubit_of(*id)) {
                append_qubit(out, *v);
            } else {
                unbound(*id);
            }
        } else {
            append_qubit(out, q.index());
        }
    }
    if (gate.angle) {
        out += ", ";
        if (auto id = gate.angle->param()) {
            if (auto v = angle_of(*id)) {
                out += format_angle(*v);
            } else {
                unbound(*id);
            }
        } else {
            out += format_angle(gate.angle->value());
        }
    }
    out += '\n';
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace

std::string emit_cqasm(const BoundCircuit& circuit, const EmitOptions& options) {
    const CompiledTemplate& t = circuit.source();
    std::string out;
    out.reserve(t.gates().size() * 20 + 32);
    if (options.header) append_header(out, t.qubit_count());
    auto lookup = [&](ParamId id) -> std::optional<double> { return circuit.value(id); };
    auto qubit_of = [&](ParamId id) -> std::optional<std::size_t> { return static_cast<std::size_t>(circuit.value(id)); };
    for (const Gate& gate : t.gates()) append_gate(out, gate, &t.params(), options, qubit_of, lookup);
    t.stats().count_emit();
    return out;
}

std::string emit_cqasm(const CompiledTemplate& tmpl, const EmitOptions& options) {
    std::string out;
    if (options.header) append_header(out, tmpl.qubit_count());
    auto angle_of = [&](ParamId id) { return tmpl.default_value(id); };
    auto qubit_of = [&](ParamId id) -> std::optional<std::size_t> {
        if (auto v = tmpl.default_value(id)) return static_cast<std::size_t>(*v);
        return std::nullopt;
    };
    for (const Gate& gate : tmpl.gates()) append_gate(out, gate, &tmpl.params(), options, qubit_of, angle_of);
    tmpl.stats().count_emit();
    return out;
}

std::string emit_cqasm(const std::vector<Gate>& gates, std::size_t qubit_count, const EmitOptions& options) {
    std::string out;
    if (options.header) append_header(out, qubit_count);
    // Bound operands carry their value; only Symbolic ones are unresolved.
    for (const Gate& gate : gates) {
        Gate plain = gate;
        for (QubitRef& q : plain.qubits) {
            if (q.kind() == OperandKind::Bound) q = QubitRef(q.index());
        }
        if (plain.angle && plain.angle->kind() == OperandKind::Bound) plain.angle = AngleArg(plain.angle->value());
        append_gate(out, plain, nullptr, options, [](ParamId) { return std::optional<std::size_t>{}; },
                    [](ParamId) { return std::optional<double>{}; });
    }
    return out;
}

void write_cqasm_file(const BoundCircuit& circuit, const std::filesystem::path& path, const EmitOptions& options) {
    write_text(emit_cqasm(circuit, options), path);
}

void write_cqasm_file(const CompiledTemplate& tmpl, const std::filesystem::path& path, const EmitOptions& options) {
    write_text(emit_cqasm(tmpl, options), path);
}

}  // namespace pqc
