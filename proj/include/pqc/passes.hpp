#pragma once

#include <vector>

#include "pqc/ir.hpp"
#include "pqc/platform.hpp"
#include "pqc/stats.hpp"

namespace pqc {

/// Which operands the rotation optimizer may fold.
///
/// Conservative treats Bound operands like Symbolic ones, so a compiled
/// template stays valid for any later value of its parameters. Aggressive
/// treats Bound operands as plain numbers and is what a one-shot,
/// non-parametric compile would do.
enum class MergePolicy { Conservative, Aggressive };

/// Replaces composite gates by their expansion. Parameter operands are
/// carried into the expanded gates unchanged.
Program decompose(const Program& program, const PlatformConfig& platform, CompileStats* stats = nullptr);

/// Merges runs of adjacent same-axis rotations on one qubit by adding their
/// angles and drops merged rotations that sum to a multiple of 2*pi (within
/// 1e-9). Strictly local: no commutation. A kernel containing any qubit
/// operand that could change (Symbolic, or Bound under Conservative) is left
/// untouched, since a later binding could alias a merged run.
Program optimize_rotations(const Program& program, MergePolicy policy = MergePolicy::Conservative,
                           CompileStats* stats = nullptr);

/// Topology check for two-qubit gates. Gates with a symbolic qubit are
/// reported with Severity::Deferred.
std::vector<Diagnostic> check_connectivity(const Program& program, const PlatformConfig& platform,
                                           CompileStats* stats = nullptr);

/// ASAP schedule over all kernels in order. Throws SymbolicQubitPresent if a
/// qubit operand is still symbolic.
Program schedule_asap(const Program& program, const PlatformConfig& platform, CompileStats* stats = nullptr);

/// Lower level forms of the last two passes over a flat gate list; used when
/// a template is scheduled after its qubit parameters are bound.
std::vector<Diagnostic> check_connectivity(const std::vector<Gate>& gates, const PlatformConfig& platform,
                                           const std::string& kernel_name = "");
std::vector<std::uint32_t> asap_cycles(const std::vector<Gate>& gates, const PlatformConfig& platform);

}  // namespace pqc
