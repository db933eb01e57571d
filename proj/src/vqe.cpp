#include "pqc/vqe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "pqc/emit.hpp"
#include "pqc/error.hpp"
#include "pqc/template.hpp"

namespace pqc::vqe {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) : node_count_(node_count) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (Edge e : edges) {
        if (e.a == e.b) throw Error(ErrorKind::InvalidGraph, "self loop on node " + std::to_string(e.a));
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.b >= node_count_) throw Error(ErrorKind::InvalidGraph, "edge endpoint " + std::to_string(e.b) + " out of range");
        if (!std::isfinite(e.weight)) throw Error(ErrorKind::InvalidGraph, "edge weight must be finite");
        if (!seen.emplace(e.a, e.b).second) {
            throw Error(ErrorKind::InvalidGraph,
                        "duplicate edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")");
        }
        edges_.push_back(e);
    }
}

std::size_t Graph::degree(std::size_t node) const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.a == node || e.b == node; }));
}

double Graph::total_weight() const {
    double total = 0;
    for (const Edge& e : edges_) total += e.weight;
    return total;
}

Graph gen_graph(std::size_t node_count, GraphKind kind) {
    if (node_count < 3) throw Error(ErrorKind::InvalidArgument, "graphs need at least 3 nodes");
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    if (kind == GraphKind::Regular4) {
        if (node_count < 5) {
            throw Error(ErrorKind::TooFewNodesForRegular4, "a simple 4-regular graph needs at least 5 nodes");
        }
        for (std::size_t i = 0; i < node_count; ++i) {
            for (std::size_t d : {1, 2}) {
                const std::size_t j = (i + d) % node_count;
                pairs.emplace(std::min(i, j), std::max(i, j));
            }
        }
    } else {
        for (std::size_t a = 0; a < node_count; ++a) {
            for (std::size_t b = a + 1; b < node_count; ++b) pairs.emplace(a, b);
        }
    }
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a, b, 1.0});
    return Graph(node_count, std::move(edges));
}

Graph parse_graph(std::string_view text) {
    std::vector<Edge> edges;
    std::size_t nodes = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw Error(ErrorKind::SyntaxError, "expected 'a b [weight]'", line_no);
        }
        Edge e;
        try {
            std::size_t used = 0;
            const long long a = std::stoll(tokens[0], &used);
            if (used != tokens[0].size() || a < 0) throw std::invalid_argument("a");
            const long long b = std::stoll(tokens[1], &used);
            if (used != tokens[1].size() || b < 0) throw std::invalid_argument("b");
            e.a = static_cast<std::size_t>(a);
            e.b = static_cast<std::size_t>(b);
            if (tokens.size() == 3) {
                e.weight = std::stod(tokens[2], &used);
                if (used != tokens[2].size()) throw std::invalid_argument("w");
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::SyntaxError, "malformed edge line", line_no);
        }
        nodes = std::max({nodes, e.a + 1, e.b + 1});
        edges.push_back(e);
    }
    return Graph(nodes, std::move(edges));
}

MaxcutCircuit build_maxcut_circuit(const Graph& graph, std::size_t steps, std::shared_ptr<ParamRegistry> registry,
                                   std::shared_ptr<const PlatformConfig> platform) {
    if (steps < 1) throw Error(ErrorKind::InvalidArgument, "QAOA needs at least one step");
    const std::size_t n = graph.node_count();
    auto fresh = [&](const std::string& name) {
        return registry->find(name) ? registry->create(ParamType::Angle) : registry->create(ParamType::Angle, name);
    };
    std::vector<ParamId> gammas;
    std::vector<ParamId> betas;
    for (std::size_t k = 1; k <= steps; ++k) gammas.push_back(fresh("gamma" + std::to_string(k)));
    for (std::size_t k = 1; k <= steps; ++k) betas.push_back(fresh("beta" + std::to_string(k)));

    Kernel kernel("qaoa", platform, registry);
    for (std::size_t q = 0; q < n; ++q) kernel.gate("h", {q});
    for (std::size_t k = 0; k < steps; ++k) {
        for (const Edge& e : graph.edges()) {
            kernel.gate("cnot", {e.a, e.b});
            kernel.gate("rz", {e.b}, gammas[k]);
            kernel.gate("cnot", {e.a, e.b});
        }
        for (std::size_t q = 0; q < n; ++q) kernel.gate("rx", {q}, betas[k]);
    }
    for (std::size_t q = 0; q < n; ++q) kernel.gate("measure", {q});

    Program program("maxcut", n, registry);
    program.add_kernel(std::move(kernel));
    std::vector<ParamId> params = gammas;
    params.insert(params.end(), betas.begin(), betas.end());
    return {std::move(program), std::move(params)};
}

double cut_value(const Graph& graph, std::string_view assignment) {
    if (assignment.size() != graph.node_count()) {
        throw Error(ErrorKind::LengthMismatch, "assignment has " + std::to_string(assignment.size()) +
                                                   " entries for " + std::to_string(graph.node_count()) + " nodes");
    }
    double total = 0;
    for (const Edge& e : graph.edges()) {
        if (assignment[e.a] != assignment[e.b]) total += e.weight;
    }
    return total;
}

double expected_cut(const sim::Counts& counts, const Graph& graph) {
    if (counts.shots == 0) throw Error(ErrorKind::InvalidArgument, "no shots");
    double total = 0;
    for (const auto& [bits, hits] : counts.histogram) total += static_cast<double>(hits) * cut_value(graph, bits);
    return total / static_cast<double>(counts.shots);
}

double brute_force_max_cut(const Graph& graph) {
    const std::size_t n = graph.node_count();
    if (n > 25) throw Error(ErrorKind::InvalidArgument, "graph too large for exhaustive search");
    double best = 0;
    std::string assignment(n, '0');
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) assignment[i] = ((mask >> i) & 1U) ? '1' : '0';
        best = std::max(best, cut_value(graph, assignment));
    }
    return best;
}

std::string_view to_string(Termination termination) {
    switch (termination) {
        case Termination::Converged: return "converged";
        case Termination::MaxEvaluations: return "max_evaluations";
        case Termination::AbortedOutOfBounds: return "aborted_out_of_bounds";
    }
    return "?";
}

std::string_view to_string(BoundsMode mode) {
    switch (mode) {
        case BoundsMode::AbortOutOfRange: return "abort";
        case BoundsMode::Clamp: return "clamp";
        case BoundsMode::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

/// Thrown inside nelder_mead to unwind out of an iteration.
struct Stop {
    Termination reason;
};

}  // namespace

OptimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                           const OptimizerConfig& cfg) {
    const std::size_t d = x0.size();
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "nelder_mead needs at least one dimension");
    if (cfg.max_fev == 0) throw Error(ErrorKind::InvalidArgument, "max_fev must be positive");
    if (!(cfg.xatol > 0) || !(cfg.fatol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");

    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;
    const bool boxed = cfg.bounds_mode != BoundsMode::Unbounded;

    OptimizeResult best;
    best.fx = std::numeric_limits<double>::infinity();

    auto admit = [&](std::vector<double> x) {
        for (double& v : x) {
            if (cfg.bounds_mode == BoundsMode::Clamp) {
                v = std::clamp(v, cfg.lower, cfg.upper);
            } else if (cfg.bounds_mode == BoundsMode::AbortOutOfRange && (v < cfg.lower || v > cfg.upper)) {
                throw Stop{Termination::AbortedOutOfBounds};
            }
        }
        return x;
    };
    auto evaluate = [&](const std::vector<double>& x) {
        if (best.evaluations >= cfg.max_fev) throw Stop{Termination::MaxEvaluations};
        const double fx = f(x);
        ++best.evaluations;
        if (fx < best.fx || best.x.empty()) {
            best.fx = fx;
            best.x = x;
        }
        return fx;
    };

    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    try {
        simplex.push_back(admit(std::move(x0)));
        values.push_back(evaluate(simplex[0]));
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<double> v = simplex[0];
            double step = cfg.initial_step;
            if (boxed && v[i] + step > cfg.upper) step = -step;
            v[i] += step;
            simplex.push_back(admit(std::move(v)));
            values.push_back(evaluate(simplex.back()));
        }

        std::vector<std::size_t> order(d + 1);
        for (;;) {
            for (std::size_t i = 0; i <= d; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            {
                std::vector<std::vector<double>> s2;
                std::vector<double> v2;
                for (std::size_t i : order) {
                    s2.push_back(std::move(simplex[i]));
                    v2.push_back(values[i]);
                }
                simplex = std::move(s2);
                values = std::move(v2);
            }

            double fspread = 0;
            double xspread = 0;
            for (std::size_t i = 1; i <= d; ++i) {
                fspread = std::max(fspread, std::abs(values[i] - values[0]));
                for (std::size_t j = 0; j < d; ++j) xspread = std::max(xspread, std::abs(simplex[i][j] - simplex[0][j]));
            }
            if ((fspread <= cfg.fatol && xspread <= cfg.xatol) || fspread == 0.0) throw Stop{Termination::Converged};
            if (best.evaluations >= cfg.max_fev) throw Stop{Termination::MaxEvaluations};

            std::vector<double> centroid(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j] / static_cast<double>(d);
            }
            auto along = [&](const std::vector<double>& from, double t) {
                std::vector<double> x(d);
                for (std::size_t j = 0; j < d; ++j) x[j] = centroid[j] + t * (from[j] - centroid[j]);
                return x;
            };
            const std::vector<double>& worst = simplex[d];

            auto xr = admit(along(worst, -kReflect));
            const double fr = evaluate(xr);
            if (fr < values[0]) {
                auto xe = admit(along(worst, -kReflect * kExpand));
                const double fe = evaluate(xe);
                if (fe < fr) {
                    simplex[d] = std::move(xe);
                    values[d] = fe;
                } else {
                    simplex[d] = std::move(xr);
                    values[d] = fr;
                }
                continue;
            }
            if (fr < values[d - 1]) {
                simplex[d] = std::move(xr);
                values[d] = fr;
                continue;
            }
            if (fr < values[d]) {
                auto xc = admit(along(worst, -kReflect * kContract));
                const double fc = evaluate(xc);
                if (fc <= fr) {
                    simplex[d] = std::move(xc);
                    values[d] = fc;
                    continue;
                }
            } else {
                auto xcc = admit(along(worst, kContract));
                const double fcc = evaluate(xcc);
                if (fcc < values[d]) {
                    simplex[d] = std::move(xcc);
                    values[d] = fcc;
                    continue;
                }
            }
            for (std::size_t i = 1; i <= d; ++i) {
                std::vector<double> x(d);
                for (std::size_t j = 0; j < d; ++j) x[j] = simplex[0][j] + kShrink * (simplex[i][j] - simplex[0][j]);
                simplex[i] = admit(std::move(x));
                values[i] = evaluate(simplex[i]);
            }
        }
    } catch (const Stop& stop) {
        best.termination = stop.reason;
    }
    return best;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

RunResult run_maxcut(const Graph& graph, const MaxcutConfig& config) {
    const auto run_start = Clock::now();
    RunResult result;

    auto registry = std::make_shared<ParamRegistry>(config.seed);
    auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(graph.node_count()));
    auto stats = std::make_shared<CompileStats>();

    auto t0 = Clock::now();
    MaxcutCircuit circuit = build_maxcut_circuit(graph, config.steps, registry, platform);
    auto tmpl = compile_full(circuit.program, *platform, {}, {}, stats);
    result.timing.compile = seconds_since(t0);

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> start_angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x0(circuit.params.size());
    for (double& v : x0) v = start_angle(rng);

    const EmitOptions emit_options{false, true};
    std::uint64_t evaluation = 0;
    auto objective = [&](const std::vector<double>& x) {
        auto t = Clock::now();
        BoundCircuit bound = rebind(tmpl, make_binds(circuit.params, x));
        result.timing.rebind += seconds_since(t);

        t = Clock::now();
        std::string text;
        if (config.qasm_path) {
            write_cqasm_file(bound, *config.qasm_path, emit_options);
        } else {
            text = emit_cqasm(bound, emit_options);
        }
        result.timing.emit += seconds_since(t);

        t = Clock::now();
        if (config.qasm_path) {
            std::ifstream file(*config.qasm_path, std::ios::binary);
            if (!file) throw Error(ErrorKind::IoError, "cannot read back '" + config.qasm_path->string() + "'");
            text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
        }
        const sim::Circuit parsed = sim::parse_cqasm(text);
        const sim::Counts counts = sim::run(parsed, config.shots, config.seed + evaluation);
        ++evaluation;
        const double value = expected_cut(counts, graph);
        result.timing.simulate += seconds_since(t);
        return -value;
    };

    const OptimizeResult opt = nelder_mead(objective, x0, config.optimizer);

    const std::vector<double>& best = opt.x.empty() ? x0 : opt.x;
    const auto p = static_cast<std::ptrdiff_t>(config.steps);
    result.gamma.assign(best.begin(), best.begin() + p);
    result.beta.assign(best.begin() + p, best.end());
    result.best_expected_cut = opt.evaluations > 0 ? -opt.fx : 0.0;
    result.evaluations = opt.evaluations;
    result.termination = opt.termination;
    result.aborted = opt.termination == Termination::AbortedOutOfBounds;
    result.timing.total = seconds_since(run_start);
    result.timing.optimize = std::max(0.0, result.timing.total - result.timing.compile - result.timing.rebind -
                                               result.timing.emit - result.timing.simulate);
    result.stats = stats->snapshot();
    return result;
}

}  // namespace pqc::vqe
