#include "pqc/template.hpp"

#include <algorithm>

#include "hash.hpp"
#include "pqc/error.hpp"

namespace pqc {

BindSet make_binds(std::span<const ParamId> params, std::span<const double> values) {
    if (params.size() != values.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(params.size()) + " parameters but " +
                                                   std::to_string(values.size()) + " values");
    }
    BindSet binds;
    for (std::size_t i = 0; i < params.size(); ++i) binds[params[i]] = values[i];
    return binds;
}

namespace {

std::string join(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const Diagnostic& d : diagnostics) {
        if (d.severity != Diagnostic::Severity::Error) continue;
        if (!out.empty()) out += "; ";
        out += to_string(d);
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

void check_qubit_values(const std::vector<Gate>& gates, std::size_t qubit_count, const ParamRegistry& params) {
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        for (const QubitRef& q : g.qubits) {
            if (q.has_index() && q.index() >= qubit_count) {
                throw Error(ErrorKind::ValidationFailed,
                            "gate " + std::to_string(i) + " (" + describe(g, params) + "): index out of range");
            }
        }
        if (g.qubits.size() == 2 && g.qubits[0].has_index() && g.qubits[1].has_index() &&
            g.qubits[0].index() == g.qubits[1].index()) {
            throw Error(ErrorKind::ValidationFailed,
                        "gate " + std::to_string(i) + " (" + describe(g, params) + "): identical operands");
        }
    }
}

}  // namespace

CompiledTemplate::CompiledTemplate(Parts parts)
    : gates_(std::move(parts.gates)),
      state_(parts.state),
      platform_(std::move(parts.platform)),
      params_(std::move(parts.params)),
      compile_binds_(std::move(parts.compile_binds)),
      qubit_count_(parts.qubit_count),
      program_hash_(parts.program_hash),
      stats_(std::move(parts.stats)) {
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        for (std::size_t k = 0; k < g.qubits.size(); ++k) {
            if (auto id = g.qubits[k].param()) {
                slots_[*id].push_back(Slot{i, OperandRole::Qubit, static_cast<std::uint8_t>(k)});
            }
        }
        if (g.angle) {
            if (auto id = g.angle->param()) slots_[*id].push_back(Slot{i, OperandRole::Angle, 0});
        }
    }
    for (const auto& [id, uses] : slots_) {
        slot_params_.push_back(id);
        slot_is_qubit_.push_back(uses.front().role == OperandRole::Qubit);
    }
    if (state_ == ScheduleState::Scheduled) {
        auto schedule = std::make_shared<Schedule>();
        for (std::size_t i = 0; i < slot_params_.size(); ++i) {
            if (!slot_is_qubit_[i]) continue;
            const Slot& first = slots_.at(slot_params_[i]).front();
            schedule->qubit_key.push_back(static_cast<double>(gates_[first.gate_index].qubits[first.qubit_position].index()));
        }
        schedule->cycles.reserve(gates_.size());
        for (const Gate& g : gates_) schedule->cycles.push_back(g.cycle.value_or(0));
        schedule_ = std::move(schedule);
    }
}

std::optional<double> CompiledTemplate::default_value(ParamId id) const {
    if (auto it = compile_binds_.find(id); it != compile_binds_.end()) return it->second;
    return params_->at(id).value;
}

std::optional<std::size_t> CompiledTemplate::slot_position(ParamId id) const {
    auto it = std::lower_bound(slot_params_.begin(), slot_params_.end(), id);
    if (it == slot_params_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - slot_params_.begin());
}

std::vector<Gate> CompiledTemplate::substituted(const std::vector<double>& values) const {
    std::vector<Gate> gates = gates_;
    for (std::size_t i = 0; i < slot_params_.size(); ++i) {
        const ParamId id = slot_params_[i];
        for (const Slot& slot : slots_.at(id)) {
            Gate& g = gates[slot.gate_index];
            if (slot.role == OperandRole::Qubit) {
                g.qubits[slot.qubit_position] = QubitRef::bound(id, static_cast<std::size_t>(values[i]));
            } else {
                g.angle = AngleArg::bound(id, values[i]);
            }
        }
    }
    return gates;
}

BoundCircuit::BoundCircuit(std::shared_ptr<const CompiledTemplate> source, std::vector<double> values,
                           std::shared_ptr<const CompiledTemplate::Schedule> schedule)
    : source_(std::move(source)), values_(std::move(values)), schedule_(std::move(schedule)) {}

std::vector<Gate> BoundCircuit::gates() const {
    std::vector<Gate> gates = source_->substituted(values_);
    for (std::size_t i = 0; i < gates.size(); ++i) gates[i].cycle = schedule_->cycles[i];
    return gates;
}

double BoundCircuit::value(ParamId id) const {
    auto pos = source_->slot_position(id);
    if (!pos) throw Error(ErrorKind::UnknownParam, "parameter has no slot in this circuit");
    return values_[*pos];
}

std::shared_ptr<const CompiledTemplate> compile_full(const Program& program, const PlatformConfig& platform,
                                                     const BindSet& binds, CompileOptions options,
                                                     std::shared_ptr<CompileStats> stats) {
    if (!stats) stats = std::make_shared<CompileStats>();
    const ParamRegistry& params = program.params();

    auto diagnostics = validate(program, platform);
    if (!diagnostics.empty()) throw Error(ErrorKind::ValidationFailed, join(diagnostics));
    if (program.kernels().empty()) throw Error(ErrorKind::ValidationFailed, "program has no kernels");
    for (const auto& [id, value] : binds) check_value(params.at(id), value);

    stats->count_full_compile();

    auto resolve = [&](ParamId id) -> std::optional<double> {
        if (auto it = binds.find(id); it != binds.end()) return it->second;
        return params.at(id).value;
    };
    Program working = program;
    for (Kernel& kernel : working.kernels()) {
        std::vector<Gate> gates = kernel.gates();
        for (Gate& g : gates) {
            for (QubitRef& q : g.qubits) {
                if (auto id = q.param()) {
                    if (auto v = resolve(*id)) q = QubitRef::bound(*id, static_cast<std::size_t>(*v));
                }
            }
            if (g.angle) {
                if (auto id = g.angle->param()) {
                    if (auto v = resolve(*id)) g.angle = AngleArg::bound(*id, *v);
                }
            }
        }
        check_qubit_values(gates, program.qubit_count(), params);
        kernel.replace_gates(std::move(gates));
    }

    working = decompose(working, platform, stats.get());
    working = optimize_rotations(working, options.merge, stats.get());
    diagnostics = check_connectivity(working, platform, stats.get());
    if (has_errors(diagnostics)) throw Error(ErrorKind::ConnectivityViolation, join(diagnostics));

    bool pending = false;
    for (const Kernel& kernel : working.kernels()) {
        for (const Gate& g : kernel.gates()) pending = pending || g.has_symbolic_qubit();
    }
    if (!pending) working = schedule_asap(working, platform, stats.get());

    CompiledTemplate::Parts parts;
    parts.gates.reserve(working.gate_count());
    for (const Kernel& kernel : working.kernels()) {
        parts.gates.insert(parts.gates.end(), kernel.gates().begin(), kernel.gates().end());
    }
    parts.state = pending ? ScheduleState::PendingQubitBinding : ScheduleState::Scheduled;
    parts.platform = std::make_shared<const PlatformConfig>(platform);
    parts.params = program.params_ptr();
    parts.compile_binds = binds;
    parts.qubit_count = program.qubit_count();
    parts.program_hash = program.content_hash();
    parts.stats = std::move(stats);
    return std::make_shared<const CompiledTemplate>(std::move(parts));
}

BoundCircuit rebind(const std::shared_ptr<const CompiledTemplate>& tmpl, const BindSet& binds) {
    if (!tmpl) throw Error(ErrorKind::InvalidArgument, "rebind on a null template");
    const CompiledTemplate& t = *tmpl;
    const ParamRegistry& params = t.params();

    std::vector<double> values(t.slot_params_.size());
    std::vector<double> qubit_key;
    for (std::size_t i = 0; i < t.slot_params_.size(); ++i) {
        const ParamId id = t.slot_params_[i];
        const Param& p = params.at(id);
        std::optional<double> v;
        if (auto it = binds.find(id); it != binds.end()) {
            v = it->second;
        } else {
            v = t.default_value(id);
        }
        if (!v) throw Error(ErrorKind::UnboundParam, p.name);
        check_value(p, *v);
        values[i] = *v;
        if (t.slot_is_qubit_[i]) qubit_key.push_back(*v);
    }

    std::shared_ptr<const CompiledTemplate::Schedule> schedule;
    {
        std::lock_guard lock(t.schedule_mutex_);
        if (t.schedule_ && t.schedule_->qubit_key == qubit_key) {
            schedule = t.schedule_;
        } else {
            // Qubit values are new: the placement changed, so connectivity
            // and timing have to be redone for this binding.
            std::vector<Gate> gates = t.substituted(values);
            check_qubit_values(gates, t.qubit_count(), params);
            auto diagnostics = check_connectivity(gates, t.platform());
            t.stats().count_pass(gates.size());
            if (has_errors(diagnostics)) throw Error(ErrorKind::ConnectivityViolation, join(diagnostics));
            auto fresh = std::make_shared<CompiledTemplate::Schedule>();
            fresh->qubit_key = std::move(qubit_key);
            fresh->cycles = asap_cycles(gates, t.platform());
            t.stats().count_pass(gates.size());
            t.schedule_ = fresh;
            schedule = std::move(fresh);
        }
    }
    t.stats().count_rebind();
    return BoundCircuit(tmpl, std::move(values), std::move(schedule));
}

Compiler::Compiler(PlatformConfig platform, CompileOptions options)
    : platform_(std::move(platform)), platform_hash_(platform_.content_hash()), options_(options) {}

std::shared_ptr<const CompiledTemplate> Compiler::compile(const Program& program) {
    detail::Fnv1a key;
    key.u64(program.content_hash());
    key.u64(platform_hash_);
    key.u64(reinterpret_cast<std::uintptr_t>(program.params_ptr().get()));
    const std::uint64_t k = key.digest();
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    }
    auto tmpl = compile_full(program, platform_, {}, options_, stats_);
    std::lock_guard lock(cache_mutex_);
    return cache_.emplace(k, std::move(tmpl)).first->second;
}

BoundCircuit Compiler::compile(const Program& program, std::span<const ParamId> params, std::span<const double> values) {
    return compile(program, make_binds(params, values));
}

BoundCircuit Compiler::compile(const Program& program, const BindSet& binds) {
    return rebind(compile(program), binds);
}

void Compiler::clear_cache() {
    std::lock_guard lock(cache_mutex_);
    cache_.clear();
}

std::size_t Compiler::cache_size() const {
    std::lock_guard lock(cache_mutex_);
    return cache_.size();
}

}  // namespace pqc
