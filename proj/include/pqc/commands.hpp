#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pqc/stats.hpp"
#include "pqc/vqe.hpp"

namespace pqc::commands {

// compile ------------------------------------------------------------------

struct CompileRequest {
    nlohmann::json program;
    /// Absent: the standard platform sized to the program.
    std::optional<nlohmann::json> platform;
    std::vector<std::pair<std::string, double>> binds;
    bool symbolic = false;
    bool header = false;
    std::uint64_t seed = 0;
};

struct CompileOutcome {
    std::string cqasm;
    StatsSnapshot stats;
};

/// compile_full, plus rebind when any value is given or every parameter
/// already has one. Unbound output requires `symbolic`.
CompileOutcome compile_program(const CompileRequest& request);

/// Parses `name=value`.
std::pair<std::string, double> parse_bind(const std::string& text);

// bench-compile ------------------------------------------------------------

struct BenchCompileConfig {
    std::size_t nodes = 15;
    std::size_t steps = 3;
    std::vector<std::size_t> iterations{1, 2, 4, 6, 8, 10, 12, 14, 16};
    std::size_t repeat = 5;
    bool write_qasm = false;
    /// Directory for cQASM output when write_qasm is set.
    std::filesystem::path qasm_dir = ".";
    /// One file per iteration instead of overwriting a single file.
    bool file_per_iteration = false;
    std::uint64_t seed = 1;
};

struct BenchRow {
    std::string mode;  // "parametric" or "full"
    std::size_t iterations = 0;
    bool write_qasm = false;
    double median_seconds = 0;
    std::uint64_t structural_passes = 0;
    std::uint64_t rebinds = 0;
};

/// For each iteration count k: "parametric" is one compile plus k rebinds,
/// "full" rebuilds program and template k times. Angles are drawn before
/// the timed region; each row is the median of `repeat` runs.
std::vector<BenchRow> bench_compile(const BenchCompileConfig& config);
std::string bench_csv(const std::vector<BenchRow>& rows);

// bench-maxcut -------------------------------------------------------------

struct BenchMaxcutConfig {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 8;
    std::size_t steps = 3;
    std::uint64_t shots = 1024;
    std::size_t max_fev = 100;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    vqe::BoundsMode bounds = vqe::BoundsMode::AbortOutOfRange;
    bool write_qasm = false;
    std::filesystem::path qasm_dir = ".";
};

/// Runs the full hybrid loop per (trial, n), n order shuffled per trial.
/// All wall-clock values live under "timing" keys.
nlohmann::json bench_maxcut(const BenchMaxcutConfig& config);

// sweep-demo ---------------------------------------------------------------

struct SweepConfig {
    std::string gate = "rx";
    std::size_t theta_count = 128;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 1;
};

struct SweepRow {
    double theta = 0;
    double average = 0;
};

/// One-qubit `gate(theta) q[0]; measure q[0]` compiled once and rebound for
/// theta evenly spaced over [-2pi, 2pi]. `average` is the mean measured bit.
std::vector<SweepRow> sweep_demo(const SweepConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace pqc::commands
