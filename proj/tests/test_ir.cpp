#include <doctest.h>

#include "pqc/error.hpp"
#include "pqc/ir.hpp"
#include "programs.hpp"

using namespace pqc;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no pqc::Error thrown");
    return ErrorKind::InvalidArgument;
}

struct Fixture {
    std::shared_ptr<const PlatformConfig> platform =
        std::make_shared<const PlatformConfig>(PlatformConfig::standard(5));
    std::shared_ptr<ParamRegistry> reg = std::make_shared<ParamRegistry>(1);
};

}  // namespace

TEST_CASE("operand kinds") {
    ParamRegistry reg;
    const ParamId q = reg.create(ParamType::Int);
    QubitRef lit(3);
    QubitRef sym(q);
    QubitRef bound = QubitRef::bound(q, 2);
    CHECK(lit.kind() == OperandKind::Literal);
    CHECK(lit.index() == 3);
    CHECK_FALSE(lit.param().has_value());
    CHECK(sym.is_symbolic());
    CHECK(sym.param() == q);
    CHECK(kind_of([&] { (void)sym.index(); }) == ErrorKind::SymbolicQubitPresent);
    CHECK(bound.kind() == OperandKind::Bound);
    CHECK(bound.index() == 2);
    CHECK(bound.param() == q);
    CHECK(kind_of([] { QubitRef r(-1); }) == ErrorKind::IndexOutOfRange);

    AngleArg a(0.5);
    AngleArg s(q);
    CHECK(a.value() == 0.5);
    CHECK(kind_of([&] { (void)s.value(); }) == ErrorKind::UnboundParam);
    CHECK(AngleArg::bound(q, 1.25).value() == 1.25);
    CHECK(AngleArg::bound(q, 1.25).param() == q);
}

TEST_CASE("kernel gate checks arity, angle presence and parameter types") {
    Fixture f;
    const ParamId qi = f.reg->create(ParamType::Int);
    const ParamId th = f.reg->create(ParamType::Angle);
    Kernel k("k", f.platform, f.reg);
    CHECK(kind_of([&] { k.gate("toffoli", {0, 1, 2}); }) == ErrorKind::UnknownGate);
    CHECK(kind_of([&] { k.gate("cnot", {0}); }) == ErrorKind::ArityMismatch);
    CHECK(kind_of([&] { k.gate("rz", {0}); }) == ErrorKind::ArityMismatch);
    CHECK(kind_of([&] { k.gate("h", {0}, 1.0); }) == ErrorKind::ArityMismatch);
    CHECK(kind_of([&] { k.gate("h", {th}); }) == ErrorKind::ParamTypeMisuse);
    CHECK(kind_of([&] { k.gate("rz", {0}, qi); }) == ErrorKind::ParamTypeMisuse);
    k.gate("rz", {qi}, th).gate("cnot", {qi, 1});
    CHECK(k.gates().size() == 2);
    CHECK(k.gates()[0].has_symbolic_qubit());
    CHECK(k.gates()[0].has_param_operand());
}

TEST_CASE("program rejects duplicate kernels and counts gates") {
    Fixture f;
    Program p("p", 3, f.reg);
    Kernel a("a", f.platform, f.reg);
    a.gate("h", {0}).gate("x", {1});
    Kernel b("b", f.platform, f.reg);
    b.gate("h", {2});
    p.add_kernel(a).add_kernel(b);
    CHECK(p.gate_count() == 3);
    CHECK(kind_of([&] { p.add_kernel(Kernel("a", f.platform, f.reg)); }) == ErrorKind::DuplicateName);
}

TEST_CASE("validate accepts the listing program") {
    auto l = testing::make_listing();
    CHECK(validate(l.program, *l.platform).empty());
}

TEST_CASE("validate reports out of range and identical operands") {
    Fixture f;
    Kernel k("k", f.platform, f.reg);
    k.gate("h", {7}).gate("cnot", {2, 2}).gate("x", {0});
    Program p("p", 5, f.reg);
    p.add_kernel(k);
    const auto d = validate(p, *f.platform);
    REQUIRE(d.size() == 2);
    CHECK(d[0].gate_index == 0);
    CHECK(d[0].reason == "index out of range");
    CHECK(d[1].gate_index == 1);
    CHECK(d[1].reason == "identical operands");
    CHECK(d[1].kernel == "k");
    CHECK(to_string(d[1]).find("identical operands") != std::string::npos);
}

TEST_CASE("validate flags gates unknown to the platform") {
    Fixture f;
    PlatformConfig wide = PlatformConfig::standard(5);
    wide.add_primitive("sx", {1, false, 1});
    auto wide_ptr = std::make_shared<const PlatformConfig>(wide);
    Kernel k("k", wide_ptr, f.reg);
    k.gate("sx", {0});
    Program p("p", 2, f.reg);
    p.add_kernel(k);
    CHECK(validate(p, wide).empty());
    const auto d = validate(p, *f.platform);
    REQUIRE(d.size() == 1);
    CHECK(d[0].reason.find("unknown gate") != std::string::npos);
}

TEST_CASE("validate flags a program wider than the platform") {
    Fixture f;
    Program p("p", 9, f.reg);
    p.add_kernel(Kernel("k", f.platform, f.reg));
    CHECK(validate(p, *f.platform).size() == 1);
}

TEST_CASE("validate is pure and deterministic") {
    auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(6));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto c = testing::random_case(seed, platform);
        const auto hash = c.symbolic.content_hash();
        const auto before = c.symbolic.params().all();
        const auto d1 = validate(c.symbolic, *platform);
        const auto d2 = validate(c.symbolic, *platform);
        CHECK(d1 == d2);
        CHECK(d1.empty());
        CHECK(c.symbolic.content_hash() == hash);
        CHECK(c.symbolic.params().all().size() == before.size());
    }
}

TEST_CASE("content hash ignores parameter values but not structure") {
    auto a = testing::make_listing();
    const auto h = a.program.content_hash();
    a.registry->set_value(a.p_real, 0.3);
    CHECK(a.program.content_hash() == h);
    a.program.kernels()[0].gate("x", {0});
    CHECK(a.program.content_hash() != h);
}

TEST_CASE("describe renders parameters by name") {
    auto l = testing::make_listing();
    const auto& g = l.program.kernels()[0].gates();
    CHECK(describe(g[1], *l.registry) == "rz q[0], %pname");
    CHECK(describe(g[3], *l.registry) == "cnot %" + l.registry->at(l.p_int).name + ", %pname2");
}
