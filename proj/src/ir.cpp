#include "pqc/ir.hpp"

#include <cmath>
#include <cstdio>

#include "hash.hpp"

namespace pqc {

QubitRef QubitRef::bound(ParamId param, std::size_t index) {
    QubitRef ref;
    ref.kind_ = OperandKind::Bound;
    ref.param_ = param;
    ref.index_ = index;
    return ref;
}

std::size_t QubitRef::index() const {
    if (kind_ == OperandKind::Symbolic) {
        throw Error(ErrorKind::SymbolicQubitPresent, "qubit operand is an unbound parameter");
    }
    return index_;
}

std::optional<ParamId> QubitRef::param() const noexcept {
    if (kind_ == OperandKind::Literal) return std::nullopt;
    return param_;
}

AngleArg AngleArg::bound(ParamId param, double radians) {
    AngleArg arg(radians);
    arg.kind_ = OperandKind::Bound;
    arg.param_ = param;
    return arg;
}

double AngleArg::value() const {
    if (kind_ == OperandKind::Symbolic) throw Error(ErrorKind::UnboundParam, "angle operand is an unbound parameter");
    return radians_;
}

std::optional<ParamId> AngleArg::param() const noexcept {
    if (kind_ == OperandKind::Literal) return std::nullopt;
    return param_;
}

bool Gate::has_symbolic_qubit() const {
    for (const QubitRef& q : qubits) {
        if (q.is_symbolic()) return true;
    }
    return false;
}

bool Gate::has_param_operand() const {
    for (const QubitRef& q : qubits) {
        if (q.param()) return true;
    }
    return angle && angle->param().has_value();
}

Kernel::Kernel(std::string name, std::shared_ptr<const PlatformConfig> platform,
               std::shared_ptr<const ParamRegistry> params)
    : name_(std::move(name)), platform_(std::move(platform)), params_(std::move(params)) {
    if (!platform_ || !params_) throw Error(ErrorKind::InvalidArgument, "kernel needs a platform and a registry");
}

Kernel& Kernel::gate(std::string_view name, std::vector<QubitRef> qubits, std::optional<AngleArg> angle) {
    const std::string gate_name(name);
    if (!platform_->knows(name)) throw Error(ErrorKind::UnknownGate, "unknown gate '" + gate_name + "'");
    const std::size_t arity = platform_->operand_count(name);
    if (qubits.size() != arity) {
        throw Error(ErrorKind::ArityMismatch, "'" + gate_name + "' takes " + std::to_string(arity) + " qubit(s), got " +
                                                  std::to_string(qubits.size()));
    }
    const bool wants_angle = platform_->takes_angle(name);
    if (wants_angle != angle.has_value()) {
        throw Error(ErrorKind::ArityMismatch,
                    "'" + gate_name + (wants_angle ? "' requires an angle" : "' does not take an angle"));
    }
    for (const QubitRef& q : qubits) {
        if (auto id = q.param()) {
            const Param& p = params_->at(*id);
            if (p.type != ParamType::Int) {
                throw Error(ErrorKind::ParamTypeMisuse,
                            std::string(to_string(p.type)) + " parameter '" + p.name + "' used as a qubit index");
            }
        }
    }
    if (angle) {
        if (auto id = angle->param()) {
            const Param& p = params_->at(*id);
            if (p.type == ParamType::Int) {
                throw Error(ErrorKind::ParamTypeMisuse, "INT parameter '" + p.name + "' used as a rotation angle");
            }
        } else if (!std::isfinite(angle->value())) {
            throw Error(ErrorKind::InvalidArgument, "rotation angle must be finite");
        }
    }
    gates_.push_back(Gate{gate_name, std::move(qubits), angle, std::nullopt});
    return *this;
}

Program::Program(std::string name, std::size_t qubit_count, std::shared_ptr<ParamRegistry> params)
    : name_(std::move(name)), qubit_count_(qubit_count), params_(std::move(params)) {
    if (qubit_count_ == 0) throw Error(ErrorKind::InvalidArgument, "program needs at least one qubit");
    if (!params_) throw Error(ErrorKind::InvalidArgument, "program needs a parameter registry");
}

Program& Program::add_kernel(Kernel kernel) {
    for (const Kernel& k : kernels_) {
        if (k.name() == kernel.name()) throw Error(ErrorKind::DuplicateName, "kernel '" + kernel.name() + "' already added");
    }
    kernels_.push_back(std::move(kernel));
    return *this;
}

std::size_t Program::gate_count() const {
    std::size_t n = 0;
    for (const Kernel& k : kernels_) n += k.gates().size();
    return n;
}

std::uint64_t Program::content_hash() const {
    detail::Fnv1a h;
    h.str(name_);
    h.u64(qubit_count_);
    h.u64(kernels_.size());
    for (const Kernel& k : kernels_) {
        h.str(k.name());
        h.u64(k.gates().size());
        for (const Gate& g : k.gates()) {
            h.str(g.name);
            h.u64(g.qubits.size());
            for (const QubitRef& q : g.qubits) {
                if (auto id = q.param()) {
                    h.u64(1);
                    h.u64(id->value);
                } else {
                    h.u64(0);
                    h.u64(q.index());
                }
            }
            if (!g.angle) {
                h.u64(2);
            } else if (auto id = g.angle->param()) {
                h.u64(1);
                h.u64(id->value);
            } else {
                h.u64(0);
                h.f64(g.angle->value());
            }
        }
    }
    return h.digest();
}

std::string to_string(const Diagnostic& diagnostic) {
    std::string out = diagnostic.severity == Diagnostic::Severity::Error ? "error" : "deferred";
    out += ": kernel '" + diagnostic.kernel + "' gate " + std::to_string(diagnostic.gate_index) + ": " + diagnostic.reason;
    return out;
}

namespace {

std::string format_angle_plain(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string describe(const Gate& gate, const ParamRegistry& params) {
    std::string out = gate.name;
    auto param_name = [&](ParamId id) {
        return params.contains(id) ? "%" + params.at(id).name : "%<" + std::to_string(id.value) + ">";
    };
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        out += i == 0 ? " " : ", ";
        const QubitRef& q = gate.qubits[i];
        out += q.is_symbolic() ? param_name(*q.param()) : "q[" + std::to_string(q.index()) + "]";
    }
    if (gate.angle) {
        out += ", ";
        out += gate.angle->is_symbolic() ? param_name(*gate.angle->param()) : format_angle_plain(gate.angle->value());
    }
    return out;
}

std::vector<Diagnostic> validate(const Program& program, const PlatformConfig& platform) {
    std::vector<Diagnostic> out;
    const ParamRegistry& params = program.params();
    if (program.qubit_count() > platform.qubit_count()) {
        out.push_back({Diagnostic::Severity::Error, "", 0,
                       "program uses " + std::to_string(program.qubit_count()) + " qubits, platform has " +
                           std::to_string(platform.qubit_count())});
    }
    for (const Kernel& kernel : program.kernels()) {
        for (std::size_t i = 0; i < kernel.gates().size(); ++i) {
            const Gate& gate = kernel.gates()[i];
            auto report = [&](std::string reason) {
                out.push_back({Diagnostic::Severity::Error, kernel.name(), i, std::move(reason)});
            };
            if (!platform.knows(gate.name)) {
                report("unknown gate '" + gate.name + "'");
                continue;
            }
            if (gate.qubits.size() != platform.operand_count(gate.name)) report("operand count mismatch");
            if (platform.takes_angle(gate.name) != gate.angle.has_value()) report("angle operand mismatch");
            for (const QubitRef& q : gate.qubits) {
                if (auto id = q.param()) {
                    if (!params.contains(*id)) {
                        report("unknown parameter id " + std::to_string(id->value));
                        continue;
                    }
                    if (params.at(*id).type != ParamType::Int) report("non-INT parameter used as qubit");
                }
                if (q.has_index() && q.index() >= program.qubit_count()) report("index out of range");
            }
            if (gate.qubits.size() == 2 && gate.qubits[0].has_index() && gate.qubits[1].has_index() &&
                gate.qubits[0].index() == gate.qubits[1].index()) {
                report("identical operands");
            }
            if (gate.angle) {
                if (auto id = gate.angle->param()) {
                    if (!params.contains(*id)) {
                        report("unknown parameter id " + std::to_string(id->value));
                    } else if (params.at(*id).type == ParamType::Int) {
                        report("INT parameter used as angle");
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace pqc
