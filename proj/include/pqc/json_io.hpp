#pragma once

#include <cstdint>
#include <memory>

#include <json.hpp>

#include "pqc/ir.hpp"
#include "pqc/platform.hpp"
#include "pqc/sim.hpp"
#include "pqc/stats.hpp"

namespace pqc::io {

/// `{"qubits": N, "primitives": {name: {"operands", "angle", "duration"}},
///   "composites": {name: [{"gate", "qubits", "angle"?}]}, "topology": [[a, b]]?}`
/// A stencil angle of `true` forwards the composite's angle; a number is a
/// fixed angle.
PlatformConfig platform_from_json(const nlohmann::json& doc);
nlohmann::json platform_to_json(const PlatformConfig& platform);

/// `{"name", "qubits", "params": [{"type", "name"?, "value"?}],
///   "kernels": [{"name", "gates": [{"gate", "qubits": [i | {"param"}], "angle"?}]}]}`
/// `{"param": ...}` takes a name or the position in "params" (the only way
/// to reach an auto-named parameter). Parameters are created in a fresh
/// registry seeded with `seed`.
Program program_from_json(const nlohmann::json& doc, std::shared_ptr<const PlatformConfig> platform,
                          std::uint64_t seed = 0);

nlohmann::json stats_to_json(const StatsSnapshot& stats);
nlohmann::json counts_to_json(const sim::Counts& counts);

}  // namespace pqc::io
