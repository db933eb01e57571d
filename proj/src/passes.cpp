#include "pqc/passes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pqc/error.hpp"

namespace pqc {

namespace {

constexpr double kElisionTolerance = 1e-9;

bool is_rotation(const std::string& name) { return name == "rx" || name == "ry" || name == "rz"; }

bool fixed_for_policy(OperandKind kind, MergePolicy policy) {
    return kind == OperandKind::Literal || (kind == OperandKind::Bound && policy == MergePolicy::Aggressive);
}

bool mergeable(const Gate& gate, MergePolicy policy) {
    return is_rotation(gate.name) && gate.qubits.size() == 1 && gate.angle &&
           fixed_for_policy(gate.qubits[0].kind(), policy) && fixed_for_policy(gate.angle->kind(), policy);
}

bool kernel_may_alias(const Kernel& kernel, MergePolicy policy) {
    for (const Gate& gate : kernel.gates()) {
        for (const QubitRef& q : gate.qubits) {
            if (!fixed_for_policy(q.kind(), policy)) return true;
        }
    }
    return false;
}

std::vector<Gate> merge_runs(const std::vector<Gate>& gates, MergePolicy policy) {
    std::vector<Gate> out;
    std::vector<std::size_t> run_length;
    std::vector<std::optional<std::size_t>> open_run;  // per qubit, index into `out`
    auto slot = [&](std::size_t q) -> std::optional<std::size_t>& {
        if (q >= open_run.size()) open_run.resize(q + 1);
        return open_run[q];
    };

    for (const Gate& gate : gates) {
        if (mergeable(gate, policy)) {
            const std::size_t q = gate.qubits[0].index();
            auto& run = slot(q);
            if (run && out[*run].name == gate.name) {
                Gate& target = out[*run];
                target.angle = AngleArg(target.angle->value() + gate.angle->value());
                target.qubits[0] = QubitRef(q);
                ++run_length[*run];
                continue;
            }
            out.push_back(gate);
            run_length.push_back(1);
            run = out.size() - 1;
            continue;
        }
        for (const QubitRef& qref : gate.qubits) slot(qref.index()).reset();
        out.push_back(gate);
        run_length.push_back(1);
    }

    std::vector<Gate> kept;
    kept.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (run_length[i] >= 2) {
            const double r = std::remainder(out[i].angle->value(), 2.0 * std::numbers::pi);
            if (std::abs(r) < kElisionTolerance) continue;
        }
        kept.push_back(std::move(out[i]));
    }
    return kept;
}

}  // namespace

Program decompose(const Program& program, const PlatformConfig& platform, CompileStats* stats) {
    Program out = program;
    std::uint64_t visited = 0;
    for (Kernel& kernel : out.kernels()) {
        std::vector<Gate> expanded;
        expanded.reserve(kernel.gates().size());
        for (const Gate& gate : kernel.gates()) {
            ++visited;
            if (platform.is_primitive(gate.name)) {
                expanded.push_back(gate);
                continue;
            }
            const CompositeRule* rule = platform.composite(gate.name);
            if (rule == nullptr) throw Error(ErrorKind::NoRuleForGate, "no decomposition for '" + gate.name + "'");
            if (gate.qubits.size() != rule->operands) {
                throw Error(ErrorKind::ArityMismatch, "'" + gate.name + "' operand count does not match its rule");
            }
            for (const Stencil& stencil : rule->expansion) {
                Gate g;
                g.name = stencil.gate;
                for (std::size_t formal : stencil.qubits) g.qubits.push_back(gate.qubits[formal]);
                if (std::holds_alternative<Stencil::ForwardAngle>(stencil.angle)) {
                    g.angle = gate.angle;
                } else if (const double* lit = std::get_if<double>(&stencil.angle)) {
                    g.angle = AngleArg(*lit);
                }
                expanded.push_back(std::move(g));
            }
        }
        kernel.replace_gates(std::move(expanded));
    }
    if (stats) stats->count_pass(visited);
    return out;
}

Program optimize_rotations(const Program& program, MergePolicy policy, CompileStats* stats) {
    Program out = program;
    std::uint64_t visited = 0;
    for (Kernel& kernel : out.kernels()) {
        visited += kernel.gates().size();
        if (kernel_may_alias(kernel, policy)) continue;
        kernel.replace_gates(merge_runs(kernel.gates(), policy));
    }
    if (stats) stats->count_pass(visited);
    return out;
}

std::vector<Diagnostic> check_connectivity(const std::vector<Gate>& gates, const PlatformConfig& platform,
                                           const std::string& kernel_name) {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& gate = gates[i];
        if (gate.qubits.size() != 2) continue;
        if (gate.has_symbolic_qubit()) {
            out.push_back({Diagnostic::Severity::Deferred, kernel_name, i, "deferred: symbolic operand"});
            continue;
        }
        const std::size_t a = gate.qubits[0].index();
        const std::size_t b = gate.qubits[1].index();
        if (!platform.connected(a, b)) {
            out.push_back({Diagnostic::Severity::Error, kernel_name, i,
                           "not connected: q[" + std::to_string(a) + "], q[" + std::to_string(b) + "]"});
        }
    }
    return out;
}

std::vector<Diagnostic> check_connectivity(const Program& program, const PlatformConfig& platform,
                                           CompileStats* stats) {
    std::vector<Diagnostic> out;
    std::uint64_t visited = 0;
    for (const Kernel& kernel : program.kernels()) {
        visited += kernel.gates().size();
        auto part = check_connectivity(kernel.gates(), platform, kernel.name());
        out.insert(out.end(), part.begin(), part.end());
    }
    if (stats) stats->count_pass(visited);
    return out;
}

std::vector<std::uint32_t> asap_cycles(const std::vector<Gate>& gates, const PlatformConfig& platform) {
    std::vector<std::uint32_t> ready;
    std::vector<std::uint32_t> cycles;
    cycles.reserve(gates.size());
    for (const Gate& gate : gates) {
        std::uint32_t start = 0;
        for (const QubitRef& q : gate.qubits) {
            if (q.is_symbolic()) {
                throw Error(ErrorKind::SymbolicQubitPresent, "cannot schedule '" + gate.name + "' before its qubit is bound");
            }
            const std::size_t idx = q.index();
            if (idx >= ready.size()) ready.resize(idx + 1, 0);
            start = std::max(start, ready[idx]);
        }
        const std::uint32_t finish = start + platform.duration(gate.name);
        for (const QubitRef& q : gate.qubits) ready[q.index()] = finish;
        cycles.push_back(start);
    }
    return cycles;
}

Program schedule_asap(const Program& program, const PlatformConfig& platform, CompileStats* stats) {
    std::vector<Gate> flat;
    flat.reserve(program.gate_count());
    for (const Kernel& kernel : program.kernels()) flat.insert(flat.end(), kernel.gates().begin(), kernel.gates().end());
    const std::vector<std::uint32_t> cycles = asap_cycles(flat, platform);

    Program out = program;
    std::size_t next = 0;
    for (Kernel& kernel : out.kernels()) {
        std::vector<Gate> gates = kernel.gates();
        for (Gate& g : gates) g.cycle = cycles[next++];
        kernel.replace_gates(std::move(gates));
    }
    if (stats) stats->count_pass(flat.size());
    return out;
}

}  // namespace pqc
