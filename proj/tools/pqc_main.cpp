#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqc/commands.hpp"
#include "pqc/error.hpp"
#include "pqc/json_io.hpp"
#include "pqc/sim.hpp"

namespace {

constexpr int kCompileError = 1;
constexpr int kIoError = 2;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoFailure("failed writing '" + path + "'");
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw pqc::Error(pqc::ErrorKind::SyntaxError, path + ": " + e.what());
    }
}

void emit_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) out.push_back(std::stoul(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric quantum circuit compiler and QAOA benchmark harness"};
    app.require_subcommand(1);

    // compile
    std::string program_path;
    std::string platform_path;
    std::vector<std::string> binds;
    std::string compile_out;
    bool symbolic = false;
    bool header = false;
    std::uint64_t compile_seed = 0;
    auto* compile = app.add_subcommand("compile", "Compile a program JSON to cQASM and print compile statistics");
    compile->add_option("program", program_path, "Program JSON")->required();
    compile->add_option("--platform", platform_path, "Platform JSON (default: $PQC_PLATFORM or the built-in platform)");
    compile->add_option("--bind", binds, "Parameter value, name=value (repeatable)");
    compile->add_option("-o,--output", compile_out, "cQASM output file (default: <program>.qasm)");
    compile->add_flag("--symbolic", symbolic, "Print unbound parameters as %name");
    compile->add_flag("--header", header, "Emit the version/qubits header");
    compile->add_option("--seed", compile_seed, "Seed for generated parameter names");

    // bench-compile
    pqc::commands::BenchCompileConfig bc;
    std::string bc_iterations = "1,2,4,6,8,10,12,14,16";
    std::string bc_out;
    auto* bench_compile = app.add_subcommand("bench-compile", "Time parametric rebinding against full recompilation");
    bench_compile->add_option("--nodes", bc.nodes, "Graph nodes (4-regular circulant, >= 5)");
    bench_compile->add_option("--steps", bc.steps, "QAOA steps p");
    bench_compile->add_option("--iterations", bc_iterations, "Comma separated iteration counts");
    bench_compile->add_option("--repeat", bc.repeat, "Repetitions per row (median reported)");
    bench_compile->add_flag("--write-qasm", bc.write_qasm, "Write cQASM every iteration");
    bench_compile->add_option("--qasm-dir", bc.qasm_dir, "Directory for cQASM files");
    bench_compile->add_flag("--file-per-iteration", bc.file_per_iteration, "One cQASM file per iteration instead of overwriting");
    bench_compile->add_option("--seed", bc.seed, "Seed for the pre-generated angles");
    bench_compile->add_option("-o,--out", bc_out, "CSV output (default: stdout)");

    // bench-maxcut
    pqc::commands::BenchMaxcutConfig bm;
    std::string bm_nodes = "3-8";
    std::string bm_bounds = "abort";
    std::string bm_out;
    auto* bench_maxcut = app.add_subcommand("bench-maxcut", "Run the full MAXCUT hybrid loop over a node range");
    bench_maxcut->add_option("--nodes", bm_nodes, "Node range lo-hi");
    bench_maxcut->add_option("--steps", bm.steps, "QAOA steps p");
    bench_maxcut->add_option("--shots", bm.shots, "Shots per evaluation");
    bench_maxcut->add_option("--max-fev", bm.max_fev, "Optimizer evaluation budget");
    bench_maxcut->add_option("--trials", bm.trials, "Trials per node count");
    bench_maxcut->add_option("--seed", bm.seed, "Base seed");
    bench_maxcut->add_option("--bounds", bm_bounds, "abort | clamp | unbounded")
        ->check(CLI::IsMember({"abort", "clamp", "unbounded"}));
    bench_maxcut->add_flag("--write-qasm", bm.write_qasm, "Round-trip every evaluation through a cQASM file");
    bench_maxcut->add_option("--qasm-dir", bm.qasm_dir, "Directory for cQASM files");
    bench_maxcut->add_option("-o,--out", bm_out, "JSON output (default: stdout)");

    // sweep-demo
    pqc::commands::SweepConfig sw;
    std::string sw_out;
    auto* sweep = app.add_subcommand("sweep-demo", "Sweep one rotation angle over [-2pi, 2pi]");
    sweep->add_option("--gate", sw.gate, "rx | ry | rz")->check(CLI::IsMember({"rx", "ry", "rz"}));
    sweep->add_option("--theta-count", sw.theta_count, "Number of angles");
    sweep->add_option("--shots", sw.shots, "Shots per angle");
    sweep->add_option("--seed", sw.seed, "Seed");
    sweep->add_option("-o,--out", sw_out, "CSV output (default: stdout)");

    // simulate
    std::string sim_path;
    std::uint64_t sim_shots = 1024;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Run a cQASM file and print counts as JSON");
    simulate->add_option("file", sim_path, "cQASM file")->required();
    simulate->add_option("--shots", sim_shots, "Number of shots");
    simulate->add_option("--seed", sim_seed, "Sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compile) {
            pqc::commands::CompileRequest req;
            req.program = read_json(program_path);
            if (platform_path.empty()) {
                if (const char* env = std::getenv("PQC_PLATFORM"); env != nullptr && *env != '\0') platform_path = env;
            }
            if (!platform_path.empty()) req.platform = read_json(platform_path);
            for (const std::string& b : binds) req.binds.push_back(pqc::commands::parse_bind(b));
            req.symbolic = symbolic;
            req.header = header;
            req.seed = compile_seed;
            const auto outcome = pqc::commands::compile_program(req);
            if (compile_out.empty()) {
                std::string stem = program_path;
                if (auto dot = stem.rfind(".json"); dot != std::string::npos && dot + 5 == stem.size()) stem.erase(dot);
                compile_out = stem + ".qasm";
            }
            emit_output(compile_out, outcome.cqasm);
            std::cout << pqc::io::stats_to_json(outcome.stats).dump(2) << "\n";
        } else if (*bench_compile) {
            bc.iterations = parse_list(bc_iterations);
            emit_output(bc_out, pqc::commands::bench_csv(pqc::commands::bench_compile(bc)));
        } else if (*bench_maxcut) {
            const auto dash = bm_nodes.find('-');
            if (dash == std::string::npos) {
                bm.min_nodes = bm.max_nodes = std::stoul(bm_nodes);
            } else {
                bm.min_nodes = std::stoul(bm_nodes.substr(0, dash));
                bm.max_nodes = std::stoul(bm_nodes.substr(dash + 1));
            }
            bm.bounds = bm_bounds == "clamp"       ? pqc::vqe::BoundsMode::Clamp
                        : bm_bounds == "unbounded" ? pqc::vqe::BoundsMode::Unbounded
                                                   : pqc::vqe::BoundsMode::AbortOutOfRange;
            emit_output(bm_out, pqc::commands::bench_maxcut(bm).dump(2) + "\n");
        } else if (*sweep) {
            emit_output(sw_out, pqc::commands::sweep_csv(pqc::commands::sweep_demo(sw)));
        } else if (*simulate) {
            const auto circuit = pqc::sim::parse_cqasm(read_file(sim_path));
            std::cout << pqc::io::counts_to_json(pqc::sim::run(circuit, sim_shots, sim_seed)).dump(2) << "\n";
        }
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const pqc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == pqc::ErrorKind::IoError ? kIoError : kCompileError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCompileError;
    }
    return 0;
}
