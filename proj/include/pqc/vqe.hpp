#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/ir.hpp"
#include "pqc/param.hpp"
#include "pqc/sim.hpp"
#include "pqc/stats.hpp"

namespace pqc::vqe {

struct Edge {
    std::size_t a = 0;
    std::size_t b = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph with a < b on every edge, no self loops and
/// no duplicate pairs.
class Graph {
public:
    explicit Graph(std::size_t node_count, std::vector<Edge> edges = {});

    std::size_t node_count() const noexcept { return node_count_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t degree(std::size_t node) const;
    double total_weight() const;

private:
    std::size_t node_count_;
    std::vector<Edge> edges_;
};

enum class GraphKind { Regular4, Complete };

/// Regular4 is the circulant C_n({1,2}), 4-regular with 2n edges for n >= 5.
/// Complete is K_n.
Graph gen_graph(std::size_t node_count, GraphKind kind);

/// Lines of `a b [weight]`; `#` starts a comment; node count is one past the
/// largest index.
Graph parse_graph(std::string_view text);

struct MaxcutCircuit {
    Program program;
    /// gamma_1..gamma_p followed by beta_1..beta_p.
    std::vector<ParamId> params;
};

/// QAOA ansatz: h on every qubit, then per step a cnot-rz(gamma)-cnot
/// sandwich on every edge and rx(beta) on every qubit, then measure all.
MaxcutCircuit build_maxcut_circuit(const Graph& graph, std::size_t steps, std::shared_ptr<ParamRegistry> registry,
                                   std::shared_ptr<const PlatformConfig> platform);

/// Total weight of edges whose endpoints differ; `assignment[i]` is node i.
double cut_value(const Graph& graph, std::string_view assignment);

double expected_cut(const sim::Counts& counts, const Graph& graph);

/// Exhaustive maximum cut, for graphs up to ~25 nodes.
double brute_force_max_cut(const Graph& graph);

enum class BoundsMode { AbortOutOfRange, Clamp, Unbounded };

struct OptimizerConfig {
    std::size_t max_fev = 100;
    double xatol = 1e-4;
    double fatol = 1e-4;
    double initial_step = 0.1;
    BoundsMode bounds_mode = BoundsMode::AbortOutOfRange;
    /// Box used by AbortOutOfRange and Clamp.
    double lower = 0.0;
    double upper = 6.283185307179586;
};

enum class Termination { Converged, MaxEvaluations, AbortedOutOfBounds };

std::string_view to_string(Termination termination);
std::string_view to_string(BoundsMode mode);

struct OptimizeResult {
    std::vector<double> x;
    double fx = 0.0;
    std::size_t evaluations = 0;
    Termination termination = Termination::MaxEvaluations;
};

/// Derivative-free simplex minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Calls `f` at most cfg.max_fev times.
OptimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                           const OptimizerConfig& cfg);

struct PhaseTimes {
    double compile = 0;
    double rebind = 0;
    double emit = 0;
    double simulate = 0;
    double optimize = 0;
    double total = 0;
};

struct RunResult {
    std::vector<double> gamma;
    std::vector<double> beta;
    double best_expected_cut = 0.0;
    std::size_t evaluations = 0;
    bool aborted = false;
    Termination termination = Termination::MaxEvaluations;
    PhaseTimes timing;
    StatsSnapshot stats;
};

struct MaxcutConfig {
    std::size_t steps = 3;
    std::uint64_t shots = 1024;
    OptimizerConfig optimizer;
    std::uint64_t seed = 0;
    /// When set, every evaluation writes its cQASM here and the simulator
    /// reads it back from disk.
    std::optional<std::filesystem::path> qasm_path;
};

/// One hybrid loop: compile the ansatz once, then for every optimizer
/// evaluation rebind the angles, emit cQASM, parse and sample it, and score
/// the negated expected cut. Evaluation i samples with seed + i.
RunResult run_maxcut(const Graph& graph, const MaxcutConfig& config);

}  // namespace pqc::vqe
