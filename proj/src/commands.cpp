#include "pqc/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>

#include "pqc/emit.hpp"
#include "pqc/error.hpp"
#include "pqc/json_io.hpp"
#include "pqc/template.hpp"

namespace pqc::commands {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::pair<std::string, double> parse_bind(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
        throw Error(ErrorKind::InvalidArgument, "expected name=value, got '" + text + "'");
    }
    const std::string value = text.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(value, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != value.size()) throw Error(ErrorKind::InvalidArgument, "bad value in '" + text + "'");
    return {text.substr(0, eq), v};
}

CompileOutcome compile_program(const CompileRequest& request) {
    std::shared_ptr<const PlatformConfig> platform;
    if (request.platform) {
        platform = std::make_shared<const PlatformConfig>(io::platform_from_json(*request.platform));
    } else {
        if (!request.program.is_object() || !request.program.contains("qubits") ||
            !request.program.at("qubits").is_number_unsigned()) {
            throw Error(ErrorKind::SyntaxError, "program JSON: missing field 'qubits'");
        }
        platform = std::make_shared<const PlatformConfig>(
            PlatformConfig::standard(request.program.at("qubits").get<std::size_t>()));
    }
    Program program = io::program_from_json(request.program, platform, request.seed);

    BindSet binds;
    for (const auto& [name, value] : request.binds) {
        auto id = program.params().find(name);
        if (!id) throw Error(ErrorKind::UnknownParam, "unknown parameter '" + name + "'");
        binds[*id] = value;
    }

    auto stats = std::make_shared<CompileStats>();
    auto tmpl = compile_full(program, *platform, binds, {}, stats);
    const EmitOptions options{request.symbolic, request.header};

    CompileOutcome outcome;
    bool complete = true;
    for (const auto& [id, uses] : tmpl->slots()) complete = complete && tmpl->default_value(id).has_value();
    if (complete || !request.symbolic) {
        outcome.cqasm = emit_cqasm(rebind(tmpl), options);
    } else {
        outcome.cqasm = emit_cqasm(*tmpl, options);
    }
    outcome.stats = stats->snapshot();
    return outcome;
}

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::filesystem::path qasm_file(const BenchCompileConfig& config, const std::string& mode, std::size_t i) {
    if (!config.file_per_iteration) return config.qasm_dir / (mode + ".qasm");
    return config.qasm_dir / (mode + "_" + std::to_string(i) + ".qasm");
}

}  // namespace

std::vector<BenchRow> bench_compile(const BenchCompileConfig& config) {
    if (config.repeat == 0) throw Error(ErrorKind::InvalidArgument, "repeat must be positive");
    if (config.iterations.empty()) throw Error(ErrorKind::InvalidArgument, "no iteration counts given");
    const vqe::Graph graph = vqe::gen_graph(config.nodes, vqe::GraphKind::Regular4);
    const std::size_t max_k = *std::max_element(config.iterations.begin(), config.iterations.end());
    if (config.write_qasm) std::filesystem::create_directories(config.qasm_dir);

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<std::vector<double>> angles(max_k, std::vector<double>(2 * config.steps));
    for (auto& row : angles) {
        for (double& a : row) a = angle(rng);
    }
    const EmitOptions emit_options{false, true};

    auto parametric = [&](std::size_t k, CompileStats& stats_sink) {
        auto stats = std::shared_ptr<CompileStats>(&stats_sink, [](CompileStats*) {});
        auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(config.nodes));
        auto registry = std::make_shared<ParamRegistry>(config.seed);
        vqe::MaxcutCircuit circuit = vqe::build_maxcut_circuit(graph, config.steps, registry, platform);
        auto tmpl = compile_full(circuit.program, *platform, {}, {}, stats);
        for (std::size_t i = 0; i < k; ++i) {
            BoundCircuit bound = rebind(tmpl, make_binds(circuit.params, angles[i]));
            if (config.write_qasm) write_cqasm_file(bound, qasm_file(config, "parametric", i), emit_options);
        }
    };
    auto full = [&](std::size_t k, CompileStats& stats_sink) {
        auto stats = std::shared_ptr<CompileStats>(&stats_sink, [](CompileStats*) {});
        for (std::size_t i = 0; i < k; ++i) {
            auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(config.nodes));
            auto registry = std::make_shared<ParamRegistry>(config.seed);
            vqe::MaxcutCircuit circuit = vqe::build_maxcut_circuit(graph, config.steps, registry, platform);
            auto tmpl = compile_full(circuit.program, *platform, make_binds(circuit.params, angles[i]),
                                     {MergePolicy::Aggressive}, stats);
            BoundCircuit bound = rebind(tmpl);
            if (config.write_qasm) write_cqasm_file(bound, qasm_file(config, "full", i), emit_options);
        }
    };

    std::vector<BenchRow> rows;
    for (std::size_t k : config.iterations) {
        for (const char* mode : {"parametric", "full"}) {
            const bool is_parametric = std::string_view(mode) == "parametric";
            {
                CompileStats warmup;
                is_parametric ? parametric(k, warmup) : full(k, warmup);
            }
            std::vector<double> times;
            StatsSnapshot last;
            for (std::size_t r = 0; r < config.repeat; ++r) {
                CompileStats stats;
                const auto start = Clock::now();
                is_parametric ? parametric(k, stats) : full(k, stats);
                times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
                last = stats.snapshot();
            }
            rows.push_back({mode, k, config.write_qasm, median(times), last.structural_passes_run,
                            last.rebinds_performed});
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "mode,k,write_qasm,median_seconds,structural_passes,rebinds\n";
    char buf[64];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.9f", r.median_seconds);
        out += r.mode + "," + std::to_string(r.iterations) + "," + (r.write_qasm ? "true" : "false") + "," + buf + "," +
               std::to_string(r.structural_passes) + "," + std::to_string(r.rebinds) + "\n";
    }
    return out;
}

json bench_maxcut(const BenchMaxcutConfig& config) {
    if (config.min_nodes < 3 || config.max_nodes < config.min_nodes) {
        throw Error(ErrorKind::InvalidArgument, "node range must satisfy 3 <= min <= max");
    }
    if (config.max_fev == 0 || config.shots == 0 || config.steps == 0) {
        throw Error(ErrorKind::InvalidArgument, "steps, shots and max_fev must be positive");
    }
    if (config.write_qasm) std::filesystem::create_directories(config.qasm_dir);

    json runs = json::array();
    std::map<std::size_t, std::pair<double, double>> totals;  // n -> (compile, total)
    std::map<std::size_t, std::size_t> run_count;
    std::mt19937_64 order_rng(config.seed);

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        std::vector<std::size_t> order;
        for (std::size_t n = config.min_nodes; n <= config.max_nodes; ++n) order.push_back(n);
        std::shuffle(order.begin(), order.end(), order_rng);
        for (std::size_t n : order) {
            const bool regular = n >= 5;
            const vqe::Graph graph = vqe::gen_graph(n, regular ? vqe::GraphKind::Regular4 : vqe::GraphKind::Complete);

            vqe::MaxcutConfig mc;
            mc.steps = config.steps;
            mc.shots = config.shots;
            mc.optimizer.max_fev = config.max_fev;
            mc.optimizer.bounds_mode = config.bounds;
            mc.seed = config.seed * 1000003ULL + trial * 1009ULL + n;
            if (config.write_qasm) mc.qasm_path = config.qasm_dir / ("maxcut_n" + std::to_string(n) + ".qasm");
            const vqe::RunResult r = vqe::run_maxcut(graph, mc);

            json run = {
                {"trial", trial},
                {"nodes", n},
                {"graph_kind", regular ? "regular4" : "complete"},
                {"edges", graph.edges().size()},
                {"brute_force_max_cut", vqe::brute_force_max_cut(graph)},
                {"seed", mc.seed},
                {"best_expected_cut", r.best_expected_cut},
                {"gamma", r.gamma},
                {"beta", r.beta},
                {"evaluations", r.evaluations},
                {"termination", vqe::to_string(r.termination)},
                {"aborted", r.aborted},
                {"stats", io::stats_to_json(r.stats)},
                {"timing",
                 {{"compile_seconds", r.timing.compile + r.timing.rebind + r.timing.emit},
                  {"rebind_seconds", r.timing.rebind},
                  {"emit_seconds", r.timing.emit},
                  {"simulate_seconds", r.timing.simulate},
                  {"optimize_seconds", r.timing.optimize},
                  {"total_seconds", r.timing.total}}},
            };
            if (!regular) run["note"] = "no simple 4-regular graph on fewer than 5 nodes; K_n used instead";
            runs.push_back(std::move(run));
            totals[n].first += r.timing.compile + r.timing.rebind + r.timing.emit;
            totals[n].second += r.timing.total;
            ++run_count[n];
        }
    }

    json series = json::array();
    for (const auto& [n, t] : totals) {
        series.push_back({{"nodes", n},
                          {"runs", run_count[n]},
                          {"timing", {{"compile_seconds_total", t.first}, {"total_seconds_total", t.second}}}});
    }
    return {
        {"schema_version", 1},
        {"config",
         {{"min_nodes", config.min_nodes},
          {"max_nodes", config.max_nodes},
          {"steps", config.steps},
          {"shots", config.shots},
          {"max_fev", config.max_fev},
          {"trials", config.trials},
          {"seed", config.seed},
          {"bounds", vqe::to_string(config.bounds)},
          {"write_qasm", config.write_qasm}}},
        {"runs", runs},
        {"series", series},
    };
}

std::vector<SweepRow> sweep_demo(const SweepConfig& config) {
    if (config.gate != "rx" && config.gate != "ry" && config.gate != "rz") {
        throw Error(ErrorKind::InvalidArgument, "sweep gate must be rx, ry or rz");
    }
    if (config.theta_count == 0) throw Error(ErrorKind::InvalidArgument, "theta count must be positive");
    auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(1));
    auto registry = std::make_shared<ParamRegistry>(config.seed);
    const ParamId theta = registry->create(ParamType::Angle, "theta");
    Kernel kernel("sweep", platform, registry);
    kernel.gate(config.gate, {0}, theta);
    kernel.gate("measure", {0});
    Program program("sweep", 1, registry);
    program.add_kernel(std::move(kernel));

    Compiler compiler(*platform);
    const double lo = -2.0 * std::numbers::pi;
    const double hi = 2.0 * std::numbers::pi;
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < config.theta_count; ++i) {
        const double t = config.theta_count == 1
                             ? lo
                             : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(config.theta_count - 1);
        const BoundCircuit bound = compiler.compile(program, BindSet{{theta, t}});
        const sim::Counts counts = sim::run(sim::parse_cqasm(emit_cqasm(bound, {false, true})), config.shots,
                                            config.seed + i);
        const auto ones = counts.histogram.contains("1") ? counts.histogram.at("1") : 0;
        rows.push_back({t, static_cast<double>(ones) / static_cast<double>(counts.shots)});
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "theta,average\n";
    char buf[96];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.9f,%.6f\n", r.theta, r.average);
        out += buf;
    }
    return out;
}

}  // namespace pqc::commands
