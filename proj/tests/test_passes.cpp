#include <doctest.h>

#include <numbers>

#include "pqc/error.hpp"
#include "pqc/passes.hpp"
#include "programs.hpp"

using namespace pqc;
using std::numbers::pi;

namespace {

auto std_platform(std::size_t n = 5) { return std::make_shared<const PlatformConfig>(PlatformConfig::standard(n)); }

Program one_kernel(std::shared_ptr<const PlatformConfig> platform, std::shared_ptr<ParamRegistry> reg,
                   std::size_t qubits, auto&& fill) {
    Kernel k("k", platform, reg);
    fill(k);
    Program p("p", qubits, reg);
    p.add_kernel(std::move(k));
    return p;
}

std::vector<Gate> gates_of(const Program& p) { return p.kernels()[0].gates(); }

}  // namespace

TEST_CASE("decompose expands swap into three cnots") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 3, [](Kernel& k) { k.gate("swap", {0, 2}).gate("h", {1}); });
    const auto d = decompose(p, *platform);
    const auto& g = gates_of(d);
    REQUIRE(g.size() == 4);
    CHECK(g[0].name == "cnot");
    CHECK(g[0].qubits == std::vector<QubitRef>{0, 2});
    CHECK(g[1].qubits == std::vector<QubitRef>{2, 0});
    CHECK(g[2].qubits == std::vector<QubitRef>{0, 2});
    CHECK(g[3].name == "h");
}

TEST_CASE("decompose carries parameter operands into the expansion") {
    PlatformConfig cfg = PlatformConfig::standard(4);
    cfg.add_composite("crz_like", {{"cnot", {0, 1}, {}},
                                   {"rz", {1}, Stencil::ForwardAngle{}},
                                   {"cnot", {0, 1}, {}},
                                   {"rx", {0}, 0.25}});
    auto platform = std::make_shared<const PlatformConfig>(cfg);
    auto reg = std::make_shared<ParamRegistry>();
    const ParamId q = reg->create(ParamType::Int);
    const ParamId th = reg->create(ParamType::Angle);
    auto p = one_kernel(platform, reg, 4, [&](Kernel& k) { k.gate("crz_like", {q, 3}, th); });
    const auto& g = gates_of(decompose(p, cfg));
    REQUIRE(g.size() == 4);
    CHECK(g[0].qubits[0] == QubitRef(q));
    CHECK(g[1].qubits[0] == QubitRef(3));
    CHECK(g[1].angle == AngleArg(th));
    CHECK(g[3].angle == AngleArg(0.25));
    CHECK(g[3].qubits[0] == QubitRef(q));
}

TEST_CASE("decompose rejects gates with no rule") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    PlatformConfig bigger = PlatformConfig::standard(5);
    bigger.add_primitive("sx", {1, false, 1});
    auto p = one_kernel(std::make_shared<const PlatformConfig>(bigger), reg, 2, [](Kernel& k) { k.gate("sx", {0}); });
    try {
        decompose(p, *platform);
        FAIL("expected NoRuleForGate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRuleForGate);
    }
}

TEST_CASE("decompose is idempotent") {
    auto platform = std_platform(6);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto c = testing::random_case(seed, platform);
        const auto once = decompose(c.symbolic, *platform);
        const auto twice = decompose(once, *platform);
        CHECK(gates_of(once) == gates_of(twice));
        for (const Gate& g : gates_of(once)) CHECK(platform->is_primitive(g.name));
    }
}

TEST_CASE("hadamard becomes a composite when requested") {
    PlatformConfig cfg = PlatformConfig::standard(3, true);
    CHECK(cfg.is_composite("hadamard"));
    auto platform = std::make_shared<const PlatformConfig>(cfg);
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 2, [](Kernel& k) { k.gate("hadamard", {1}); });
    const auto& g = gates_of(decompose(p, cfg));
    REQUIRE(g.size() == 1);
    CHECK(g[0].name == "h");
}

TEST_CASE("adjacent same-axis rotations merge") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 2, [](Kernel& k) {
        k.gate("rz", {0}, 0.5).gate("rz", {0}, 0.25).gate("rx", {0}, 1.0).gate("rz", {1}, 0.1).gate("rz", {1}, 0.2);
    });
    const auto& g = gates_of(optimize_rotations(p));
    REQUIRE(g.size() == 3);
    CHECK(g[0].name == "rz");
    CHECK(g[0].angle->value() == doctest::Approx(0.75));
    CHECK(g[1].name == "rx");
    CHECK(g[2].angle->value() == doctest::Approx(0.3));
}

TEST_CASE("merged rotations that cancel are removed") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 1, [](Kernel& k) {
        k.gate("ry", {0}, pi).gate("ry", {0}, pi).gate("h", {0}).gate("rx", {0}, 1.0).gate("rx", {0}, -1.0);
    });
    const auto& g = gates_of(optimize_rotations(p));
    REQUIRE(g.size() == 1);
    CHECK(g[0].name == "h");
}

TEST_CASE("a lone zero rotation is kept") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 1, [](Kernel& k) { k.gate("rz", {0}, 0.0); });
    CHECK(gates_of(optimize_rotations(p)).size() == 1);
}

TEST_CASE("rotations separated by another gate on the qubit do not merge") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 2, [](Kernel& k) {
        k.gate("rz", {0}, 0.5).gate("cnot", {0, 1}).gate("rz", {0}, 0.5);
    });
    CHECK(gates_of(optimize_rotations(p)).size() == 3);
}

TEST_CASE("rotations on other qubits in between do not block a merge") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 2, [](Kernel& k) {
        k.gate("rz", {0}, 0.5).gate("h", {1}).gate("rz", {0}, 0.5);
    });
    const auto& g = gates_of(optimize_rotations(p));
    REQUIRE(g.size() == 2);
    CHECK(g[0].angle->value() == doctest::Approx(1.0));
}

TEST_CASE("symbolic angles never merge") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    const ParamId th = reg->create(ParamType::Angle);
    auto p = one_kernel(platform, reg, 1, [&](Kernel& k) {
        k.gate("rz", {0}, th).gate("rz", {0}, 0.5).gate("rz", {0}, th);
    });
    CHECK(gates_of(optimize_rotations(p, MergePolicy::Aggressive)).size() == 3);
}

TEST_CASE("bound angles merge only under the aggressive policy") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    const ParamId th = reg->create(ParamType::Angle);
    Program p("p", 1, reg);
    Kernel k("k", platform, reg);
    k.replace_gates({Gate{"rz", {0}, AngleArg::bound(th, 0.5), {}}, Gate{"rz", {0}, AngleArg(0.25), {}}});
    p.add_kernel(k);
    CHECK(gates_of(optimize_rotations(p, MergePolicy::Conservative)).size() == 2);
    const auto& g = gates_of(optimize_rotations(p, MergePolicy::Aggressive));
    REQUIRE(g.size() == 1);
    CHECK(g[0].angle->value() == doctest::Approx(0.75));
    CHECK(g[0].angle->kind() == OperandKind::Literal);
}

TEST_CASE("a kernel with a symbolic qubit is left alone") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    const ParamId q = reg->create(ParamType::Int);
    auto p = one_kernel(platform, reg, 2, [&](Kernel& k) {
        k.gate("rz", {0}, 0.5).gate("h", {q}).gate("rz", {0}, 0.5);
    });
    CHECK(gates_of(optimize_rotations(p, MergePolicy::Aggressive)).size() == 3);
}

TEST_CASE("optimize_rotations preserves the state of literal circuits") {
    auto platform = std_platform();
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Program p = testing::random_literal_program(seed, platform);
        const Program o = optimize_rotations(p, MergePolicy::Aggressive);
        CHECK(o.gate_count() <= p.gate_count());
        const auto a = sim::evolve(testing::to_circuit(p));
        const auto b = sim::evolve(testing::to_circuit(o));
        CHECK(sim::equal_up_to_global_phase(a.amplitudes(), b.amplitudes(), 1e-9));
    }
}

TEST_CASE("connectivity without a topology accepts everything") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 5, [](Kernel& k) { k.gate("cnot", {0, 4}); });
    CHECK(check_connectivity(p, *platform).empty());
}

TEST_CASE("connectivity reports uncoupled pairs and defers symbolic ones") {
    PlatformConfig cfg = PlatformConfig::standard(3);
    cfg.set_topology({{0, 1}, {1, 2}});
    auto platform = std::make_shared<const PlatformConfig>(cfg);
    auto reg = std::make_shared<ParamRegistry>();
    const ParamId q = reg->create(ParamType::Int);
    auto p = one_kernel(platform, reg, 3, [&](Kernel& k) {
        k.gate("cnot", {1, 0}).gate("cnot", {0, 2}).gate("cz", {q, 2});
    });
    const auto d = check_connectivity(p, cfg);
    REQUIRE(d.size() == 2);
    CHECK(d[0].severity == Diagnostic::Severity::Error);
    CHECK(d[0].gate_index == 1);
    CHECK(d[1].severity == Diagnostic::Severity::Deferred);
    CHECK(d[1].gate_index == 2);
}

TEST_CASE("ASAP schedule respects durations and qubit order") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 3, [](Kernel& k) {
        k.gate("h", {0}).gate("h", {2}).gate("cnot", {0, 1}).gate("x", {1}).gate("x", {2});
    });
    const auto& g = gates_of(schedule_asap(p, *platform));
    CHECK(*g[0].cycle == 0);
    CHECK(*g[1].cycle == 0);
    CHECK(*g[2].cycle == 1);
    CHECK(*g[3].cycle == 3);  // cnot lasts two cycles
    CHECK(*g[4].cycle == 1);
}

TEST_CASE("schedule refuses symbolic qubits") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    const ParamId q = reg->create(ParamType::Int);
    auto p = one_kernel(platform, reg, 2, [&](Kernel& k) { k.gate("h", {q}); });
    try {
        schedule_asap(p, *platform);
        FAIL("expected SymbolicQubitPresent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SymbolicQubitPresent);
    }
}

TEST_CASE("ASAP schedules are valid and minimal") {
    auto platform = std_platform();
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Program p = testing::random_literal_program(seed, platform);
        const auto& g = gates_of(schedule_asap(p, *platform));
        // Independent recomputation: a gate starts when every qubit it uses
        // is free, and at least one of them is busy until exactly then.
        std::vector<std::uint32_t> free_at(p.qubit_count(), 0);
        for (const Gate& gate : g) {
            std::uint32_t start = 0;
            for (const QubitRef& q : gate.qubits) start = std::max(start, free_at[q.index()]);
            CHECK(*gate.cycle == start);
            for (const QubitRef& q : gate.qubits) free_at[q.index()] = start + platform->duration(gate.name);
        }
    }
}

TEST_CASE("passes count their work") {
    auto platform = std_platform();
    auto reg = std::make_shared<ParamRegistry>();
    auto p = one_kernel(platform, reg, 2, [](Kernel& k) { k.gate("h", {0}).gate("swap", {0, 1}); });
    CompileStats stats;
    const auto d = decompose(p, *platform, &stats);
    optimize_rotations(d, MergePolicy::Conservative, &stats);
    check_connectivity(d, *platform, &stats);
    schedule_asap(d, *platform, &stats);
    const auto s = stats.snapshot();
    CHECK(s.structural_passes_run == 4);
    CHECK(s.gates_visited == 2 + 4 + 4 + 4);
}
