#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pqc/ir.hpp"
#include "pqc/param.hpp"
#include "pqc/passes.hpp"
#include "pqc/platform.hpp"
#include "pqc/stats.hpp"

namespace pqc {

using BindSet = std::map<ParamId, double>;

/// Builds a BindSet from parallel lists; throws LengthMismatch.
BindSet make_binds(std::span<const ParamId> params, std::span<const double> values);

enum class OperandRole : std::uint8_t { Qubit, Angle };

struct Slot {
    std::size_t gate_index = 0;
    OperandRole role = OperandRole::Angle;
    /// Position among the gate's qubit operands; unused for Angle.
    std::uint8_t qubit_position = 0;

    friend bool operator==(const Slot&, const Slot&) = default;
};

using SlotTable = std::map<ParamId, std::vector<Slot>>;

enum class ScheduleState { Scheduled, PendingQubitBinding };

struct CompileOptions {
    MergePolicy merge = MergePolicy::Conservative;
};

class BoundCircuit;
class CompiledTemplate;

BoundCircuit rebind(const std::shared_ptr<const CompiledTemplate>& tmpl, const BindSet& binds);

/// Output of the full pass pipeline. Every operand that came from a
/// parameter is recorded in the slot table, so later iterations only patch
/// those operands. Immutable apart from the schedule cache, which is
/// guarded and only ever replaced as a whole.
class CompiledTemplate : public std::enable_shared_from_this<CompiledTemplate> {
public:
    struct Parts;
    explicit CompiledTemplate(Parts parts);

    const std::vector<Gate>& gates() const noexcept { return gates_; }
    const SlotTable& slots() const noexcept { return slots_; }
    ScheduleState schedule_state() const noexcept { return state_; }
    const PlatformConfig& platform() const noexcept { return *platform_; }
    const ParamRegistry& params() const noexcept { return *params_; }
    const BindSet& compile_binds() const noexcept { return compile_binds_; }
    std::size_t qubit_count() const noexcept { return qubit_count_; }
    std::uint64_t program_hash() const noexcept { return program_hash_; }
    CompileStats& stats() const noexcept { return *stats_; }
    const std::shared_ptr<CompileStats>& stats_ptr() const noexcept { return stats_; }

    /// Value a parameter takes when nothing more specific is supplied:
    /// compile-time bind, else the registry value.
    std::optional<double> default_value(ParamId id) const;

    /// Position of `id` in slot-table order, or nullopt if it has no slot.
    std::optional<std::size_t> slot_position(ParamId id) const;

    struct Schedule {
        std::vector<double> qubit_key;
        std::vector<std::uint32_t> cycles;
    };

private:
    friend BoundCircuit rebind(const std::shared_ptr<const CompiledTemplate>&, const BindSet&);
    friend class BoundCircuit;

    std::vector<Gate> substituted(const std::vector<double>& values) const;

    std::vector<Gate> gates_;
    SlotTable slots_;
    std::vector<ParamId> slot_params_;
    std::vector<bool> slot_is_qubit_;
    ScheduleState state_ = ScheduleState::Scheduled;
    std::shared_ptr<const PlatformConfig> platform_;
    std::shared_ptr<const ParamRegistry> params_;
    BindSet compile_binds_;
    std::size_t qubit_count_ = 0;
    std::uint64_t program_hash_ = 0;
    std::shared_ptr<CompileStats> stats_;

    mutable std::mutex schedule_mutex_;
    mutable std::shared_ptr<const Schedule> schedule_;
};

struct CompiledTemplate::Parts {
    std::vector<Gate> gates;
    ScheduleState state = ScheduleState::Scheduled;
    std::shared_ptr<const PlatformConfig> platform;
    std::shared_ptr<const ParamRegistry> params;
    BindSet compile_binds;
    std::size_t qubit_count = 0;
    std::uint64_t program_hash = 0;
    std::shared_ptr<CompileStats> stats;
};

/// A template together with one value per parameter slot and the schedule
/// that goes with the qubit values. Gate operands are substituted when
/// gates() is called or the circuit is emitted, not at rebind time.
class BoundCircuit {
public:
    BoundCircuit(std::shared_ptr<const CompiledTemplate> source, std::vector<double> values,
                 std::shared_ptr<const CompiledTemplate::Schedule> schedule);

    /// Fully numeric gate list with cycles; parameter operands come back as
    /// OperandKind::Bound.
    std::vector<Gate> gates() const;
    std::size_t gate_count() const noexcept { return source_->gates().size(); }
    std::size_t qubit_count() const noexcept { return source_->qubit_count(); }
    double value(ParamId id) const;
    const std::vector<double>& values() const noexcept { return values_; }
    const CompiledTemplate& source() const noexcept { return *source_; }
    const std::vector<std::uint32_t>& cycles() const noexcept { return schedule_->cycles; }

private:
    std::shared_ptr<const CompiledTemplate> source_;
    std::vector<double> values_;
    std::shared_ptr<const CompiledTemplate::Schedule> schedule_;
};

/// Runs validate, decompose, optimize_rotations, check_connectivity and
/// (when no qubit operand is symbolic) schedule_asap, then records every
/// parameter operand in the slot table. Parameters with a value (from
/// `binds`, else the registry) are substituted as Bound operands; the rest
/// stay Symbolic.
std::shared_ptr<const CompiledTemplate> compile_full(const Program& program, const PlatformConfig& platform,
                                                     const BindSet& binds = {}, CompileOptions options = {},
                                                     std::shared_ptr<CompileStats> stats = nullptr);

/// Resolves every slotted parameter (binds, then compile-time binds, then
/// registry value) and returns the bound circuit. Only the first qubit
/// binding, or a change of qubit values, schedules; angle-only rebinds run
/// no structural pass.
inline BoundCircuit rebind(const std::shared_ptr<const CompiledTemplate>& tmpl) { return rebind(tmpl, BindSet{}); }

/// Caching front end in the style of `compiler.compile(program, params,
/// values)`. Templates are keyed by program and platform content hashes, so
/// a program edited after compilation simply gets a fresh template.
class Compiler {
public:
    explicit Compiler(PlatformConfig platform, CompileOptions options = {});

    std::shared_ptr<const CompiledTemplate> compile(const Program& program);
    BoundCircuit compile(const Program& program, std::span<const ParamId> params, std::span<const double> values);
    BoundCircuit compile(const Program& program, const BindSet& binds);

    void clear_cache();
    std::size_t cache_size() const;

    const PlatformConfig& platform() const noexcept { return platform_; }
    StatsSnapshot stats() const noexcept { return stats_->snapshot(); }
    const std::shared_ptr<CompileStats>& stats_ptr() const noexcept { return stats_; }

private:
    PlatformConfig platform_;
    std::uint64_t platform_hash_;
    CompileOptions options_;
    std::shared_ptr<CompileStats> stats_ = std::make_shared<CompileStats>();
    mutable std::mutex cache_mutex_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const CompiledTemplate>> cache_;
};

}  // namespace pqc
