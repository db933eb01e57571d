#include "pqc/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "pqc/error.hpp"
#include "pqc/template.hpp"

namespace pqc::sim {

namespace {

using cd = std::complex<double>;

struct GateInfo {
    std::string_view name;
    std::size_t operands;
    bool angle;
};

constexpr GateInfo kGates[] = {
    {"x", 1, false},     {"y", 1, false},       {"z", 1, false},  {"h", 1, false},  {"hadamard", 1, false},
    {"rx", 1, true},     {"ry", 1, true},       {"rz", 1, true},  {"cnot", 2, false}, {"cz", 2, false},
    {"measure", 1, false}, {"prep_z", 1, false},
};

const GateInfo* find_gate(std::string_view name) {
    for (const GateInfo& g : kGates) {
        if (g.name == name) return &g;
    }
    return nullptr;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_operands(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
bool parse_number(std::string_view text, T& out) {
    if (text.empty()) return false;
    if constexpr (std::is_floating_point_v<T>) {
        // from_chars for double rejects a leading '+'; strtod is locale bound
        // but the subset only uses plain decimal notation.
        std::string copy(text);
        char* end = nullptr;
        out = std::strtod(copy.c_str(), &end);
        return end == copy.c_str() + copy.size() && std::isfinite(out);
    } else {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        return ec == std::errc() && ptr == text.data() + text.size();
    }
}

}  // namespace

Circuit parse_cqasm(std::string_view text) {
    Circuit circuit;
    bool declared = false;
    std::size_t max_index = 0;
    bool any_qubit = false;
    std::size_t line_no = 0;

    while (!text.empty() || line_no == 0) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (text.empty()) break;
            continue;
        }

        const auto space = line.find_first_of(" \t");
        const std::string_view word = line.substr(0, space);
        const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

        if (word == "version") {
            double v = 0;
            if (!parse_number(rest, v)) throw Error(ErrorKind::SyntaxError, "malformed version line", line_no);
            continue;
        }
        if (word == "qubits") {
            std::size_t n = 0;
            if (declared || !circuit.gates.empty()) {
                throw Error(ErrorKind::SyntaxError, "qubits must be declared once, before any gate", line_no);
            }
            if (!parse_number(rest, n) || n == 0) throw Error(ErrorKind::SyntaxError, "malformed qubits line", line_no);
            circuit.qubit_count = n;
            declared = true;
            continue;
        }

        const GateInfo* info = find_gate(word);
        if (info == nullptr) throw Error(ErrorKind::UnknownGate, "unknown gate '" + std::string(word) + "'", line_no);
        if (rest.empty()) throw Error(ErrorKind::SyntaxError, "missing operands", line_no);
        const auto operands = split_operands(rest);
        const std::size_t expected = info->operands + (info->angle ? 1 : 0);
        if (operands.size() != expected) {
            throw Error(ErrorKind::SyntaxError,
                        "'" + std::string(word) + "' expects " + std::to_string(expected) + " operand(s)", line_no);
        }

        Gate gate;
        gate.name = std::string(word);
        for (std::size_t i = 0; i < info->operands; ++i) {
            std::string_view op = operands[i];
            if (!op.empty() && op.front() == '%') {
                throw Error(ErrorKind::SyntaxError, "symbolic operand '" + std::string(op) + "' in executable cQASM",
                            line_no);
            }
            if (op.size() < 4 || op.substr(0, 2) != "q[" || op.back() != ']') {
                throw Error(ErrorKind::SyntaxError, "expected q[<index>], got '" + std::string(op) + "'", line_no);
            }
            std::size_t index = 0;
            if (!parse_number(op.substr(2, op.size() - 3), index)) {
                throw Error(ErrorKind::SyntaxError, "bad qubit index '" + std::string(op) + "'", line_no);
            }
            if (declared && index >= circuit.qubit_count) {
                throw Error(ErrorKind::IndexOutOfRange,
                            "q[" + std::to_string(index) + "] with " + std::to_string(circuit.qubit_count) + " qubits",
                            line_no);
            }
            max_index = std::max(max_index, index);
            any_qubit = true;
            gate.qubits.emplace_back(index);
        }
        if (gate.qubits.size() == 2 && gate.qubits[0].index() == gate.qubits[1].index()) {
            throw Error(ErrorKind::SyntaxError, "identical operands", line_no);
        }
        if (info->angle) {
            std::string_view op = operands.back();
            if (!op.empty() && op.front() == '%') {
                throw Error(ErrorKind::SyntaxError, "symbolic angle '" + std::string(op) + "' in executable cQASM",
                            line_no);
            }
            double angle = 0;
            if (!parse_number(op, angle)) throw Error(ErrorKind::SyntaxError, "bad angle '" + std::string(op) + "'", line_no);
            gate.angle = AngleArg(angle);
        }
        circuit.gates.push_back(std::move(gate));
    }
    if (!declared) circuit.qubit_count = any_qubit ? max_index + 1 : 0;
    return circuit;
}

Circuit from_bound(const BoundCircuit& circuit) { return Circuit{circuit.qubit_count(), circuit.gates()}; }

Statevector::Statevector(std::size_t qubit_count)
    : qubit_count_(qubit_count), amplitudes_(std::size_t{1} << qubit_count), touched_(qubit_count, false) {
    if (qubit_count > 30) throw Error(ErrorKind::InvalidArgument, "too many qubits for a dense statevector");
    amplitudes_[0] = 1.0;
}

double Statevector::norm_squared() const {
    double total = 0;
    for (const cd& a : amplitudes_) total += std::norm(a);
    return total;
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amplitudes_[i]);
    return p;
}

void Statevector::apply_1q(std::size_t q, const cd (&m)[2][2]) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (i & bit) continue;
        const cd a0 = amplitudes_[i];
        const cd a1 = amplitudes_[i | bit];
        amplitudes_[i] = m[0][0] * a0 + m[0][1] * a1;
        amplitudes_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void Statevector::apply(const Gate& gate) {
    const GateInfo* info = find_gate(gate.name);
    if (info == nullptr) throw Error(ErrorKind::UnknownGate, "simulator has no gate '" + gate.name + "'");
    if (gate.qubits.size() != info->operands || gate.angle.has_value() != info->angle) {
        throw Error(ErrorKind::ArityMismatch, "malformed '" + gate.name + "' gate");
    }
    for (const QubitRef& q : gate.qubits) {
        if (q.index() >= qubit_count_) {
            throw Error(ErrorKind::IndexOutOfRange, "q[" + std::to_string(q.index()) + "] on " +
                                                        std::to_string(qubit_count_) + " qubits");
        }
    }
    const std::size_t q0 = gate.qubits[0].index();
    const std::string_view name = gate.name;
    const cd i1(0.0, 1.0);

    if (name == "measure") return;
    if (name == "prep_z") {
        if (touched_[q0]) {
            throw Error(ErrorKind::UnsupportedOperation, "prep_z is only supported before other gates on q[" +
                                                             std::to_string(q0) + "]");
        }
        return;
    }
    for (const QubitRef& q : gate.qubits) touched_[q.index()] = true;

    if (name == "cnot" || name == "cz") {
        const std::size_t q1 = gate.qubits[1].index();
        const std::size_t c = std::size_t{1} << q0;
        const std::size_t t = std::size_t{1} << q1;
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if (!(i & c)) continue;
            if (name == "cz") {
                if (i & t) amplitudes_[i] = -amplitudes_[i];
            } else if (!(i & t)) {
                std::swap(amplitudes_[i], amplitudes_[i | t]);
            }
        }
        return;
    }
    if (name == "x") {
        const cd m[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
        apply_1q(q0, m);
    } else if (name == "y") {
        const cd m[2][2] = {{0.0, -i1}, {i1, 0.0}};
        apply_1q(q0, m);
    } else if (name == "z") {
        const cd m[2][2] = {{1.0, 0.0}, {0.0, -1.0}};
        apply_1q(q0, m);
    } else if (name == "h" || name == "hadamard") {
        const double r = 1.0 / std::sqrt(2.0);
        const cd m[2][2] = {{r, r}, {r, -r}};
        apply_1q(q0, m);
    } else {
        const double theta = gate.angle->value();
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        if (name == "rx") {
            const cd m[2][2] = {{c, -i1 * s}, {-i1 * s, c}};
            apply_1q(q0, m);
        } else if (name == "ry") {
            const cd m[2][2] = {{c, -s}, {s, c}};
            apply_1q(q0, m);
        } else {
            const cd m[2][2] = {{std::polar(1.0, -theta / 2), 0.0}, {0.0, std::polar(1.0, theta / 2)}};
            apply_1q(q0, m);
        }
    }
}

Statevector evolve(const Circuit& circuit) {
    Statevector state(circuit.qubit_count);
    for (const Gate& g : circuit.gates) state.apply(g);
    return state;
}

std::vector<std::size_t> measured_qubits(const Circuit& circuit) {
    std::vector<bool> measured(circuit.qubit_count, false);
    for (const Gate& g : circuit.gates) {
        for (const QubitRef& q : g.qubits) {
            const std::size_t idx = q.index();
            if (idx >= measured.size()) {
                throw Error(ErrorKind::IndexOutOfRange, "q[" + std::to_string(idx) + "] on " +
                                                            std::to_string(circuit.qubit_count) + " qubits");
            }
            if (g.name == "measure") {
                measured[idx] = true;
            } else if (measured[idx]) {
                throw Error(ErrorKind::MeasurementBeforeGate,
                            "q[" + std::to_string(idx) + "] is used by '" + g.name + "' after being measured");
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < measured.size(); ++q) {
        if (measured[q]) out.push_back(q);
    }
    return out;
}

namespace {

std::string key_for(std::size_t basis, const std::vector<std::size_t>& measured) {
    std::string key(measured.size(), '0');
    for (std::size_t k = 0; k < measured.size(); ++k) {
        if ((basis >> measured[k]) & 1U) key[k] = '1';
    }
    return key;
}

}  // namespace

Counts run(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw Error(ErrorKind::InvalidArgument, "shots must be positive");
    const auto measured = measured_qubits(circuit);
    const std::vector<double> p = evolve(circuit).probabilities();

    std::vector<double> cdf(p.size());
    double acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, acc);
    std::vector<std::uint64_t> hits(p.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        // Never land on a zero-probability entry through rounding at the top.
        while (p[idx] == 0.0 && idx > 0) --idx;
        ++hits[idx];
    }

    Counts counts;
    counts.shots = shots;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (hits[i] != 0) counts.histogram[key_for(i, measured)] += hits[i];
    }
    return counts;
}

std::map<std::string, double> exact_distribution(const Circuit& circuit) {
    const auto measured = measured_qubits(circuit);
    const std::vector<double> p = evolve(circuit).probabilities();
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0.0) out[key_for(i, measured)] += p[i];
    }
    return out;
}

bool equal_up_to_global_phase(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                              double tolerance) {
    if (a.size() != b.size()) return false;
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::abs(a[i]) > std::abs(a[pivot])) pivot = i;
    }
    std::complex<double> phase = 1.0;
    if (std::abs(a[pivot]) > tolerance) {
        if (std::abs(b[pivot]) <= tolerance) return false;
        phase = b[pivot] / a[pivot];
        phase /= std::abs(phase);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] * phase - b[i]) > tolerance) return false;
    }
    return true;
}

}  // namespace pqc::sim
