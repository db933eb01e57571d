#include <doctest.h>

#include "pqc/emit.hpp"
#include "pqc/error.hpp"
#include "pqc/json_io.hpp"

using namespace pqc;
using nlohmann::json;

namespace {

const json kListing = json::parse(R"({
  "name": "listing", "qubits": 5,
  "params": [
    {"type": "INT"},
    {"type": "REAL", "name": "pname"},
    {"type": "ANGLE", "value": 1.724},
    {"type": "INT", "name": "pname2", "value": 4}
  ],
  "kernels": [{"name": "k", "gates": [
    {"gate": "hadamard", "qubits": [{"param": 0}]},
    {"gate": "rz", "qubits": [0], "angle": {"param": "pname"}},
    {"gate": "ry", "qubits": [{"param": "pname2"}], "angle": {"param": 2}},
    {"gate": "cnot", "qubits": [{"param": 0}, {"param": "pname2"}]}
  ]}]
})");

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no pqc::Error thrown");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("program JSON builds the listing") {
    auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(5));
    const Program p = io::program_from_json(kListing, platform, 0);
    CHECK(p.qubit_count() == 5);
    CHECK(p.gate_count() == 4);
    const auto& reg = p.params();
    REQUIRE(reg.size() == 4);
    CHECK(reg.all()[3].value == 4.0);
    auto t = compile_full(p, *platform);
    auto b = rebind(t, {{ParamId{0}, 1}, {ParamId{1}, 2.1}, {ParamId{2}, -1.7}});
    CHECK(emit_cqasm(b) == "    hadamard q[1]\n    rz q[0], 2.1\n    ry q[4], -1.7\n    cnot q[1], q[4]\n");
}

TEST_CASE("program JSON errors") {
    auto platform = std::make_shared<const PlatformConfig>(PlatformConfig::standard(5));
    json missing = kListing;
    missing.erase("kernels");
    CHECK(kind_of([&] { io::program_from_json(missing, platform); }) == ErrorKind::SyntaxError);
    json unknown = kListing;
    unknown["kernels"][0]["gates"][1]["angle"] = {{"param", "nope"}};
    CHECK(kind_of([&] { io::program_from_json(unknown, platform); }) == ErrorKind::UnknownParam);
    json bad_gate = kListing;
    bad_gate["kernels"][0]["gates"][0]["gate"] = "toffoli";
    CHECK(kind_of([&] { io::program_from_json(bad_gate, platform); }) == ErrorKind::UnknownGate);
    json bad_type = kListing;
    bad_type["params"][0]["type"] = "COMPLEX";
    CHECK(kind_of([&] { io::program_from_json(bad_type, platform); }) == ErrorKind::SyntaxError);
}

TEST_CASE("platform JSON round trips") {
    PlatformConfig cfg = PlatformConfig::standard(4, true);
    cfg.add_composite("spin", {{"rz", {0}, Stencil::ForwardAngle{}}, {"rx", {0}, 0.5}});
    cfg.set_topology({{0, 1}, {1, 2}, {2, 3}});
    const json doc = io::platform_to_json(cfg);
    const PlatformConfig back = io::platform_from_json(doc);
    CHECK(back.content_hash() == cfg.content_hash());
    CHECK(back.is_composite("hadamard"));
    CHECK(back.composite("spin")->angle);
    CHECK(back.connected(1, 2));
    CHECK_FALSE(back.connected(0, 3));
}

TEST_CASE("platform JSON from text") {
    const json doc = json::parse(R"({
      "qubits": 2,
      "primitives": {"h": {"operands": 1}, "rz": {"operands": 1, "angle": true},
                     "cnot": {"operands": 2, "duration": 2}},
      "composites": {"flip": [{"gate": "h", "qubits": [0]}, {"gate": "rz", "qubits": [0], "angle": 3.14159}]}
    })");
    const PlatformConfig p = io::platform_from_json(doc);
    CHECK(p.qubit_count() == 2);
    CHECK(p.duration("cnot") == 2);
    CHECK(p.takes_angle("rz"));
    CHECK_FALSE(p.composite("flip")->angle);
    json bad = doc;
    bad["composites"]["flip"][0]["gate"] = "nope";
    CHECK_THROWS_AS(io::platform_from_json(bad), Error);
}

TEST_CASE("stats and counts serialize") {
    const json s = io::stats_to_json({1, 2, 3, 4, 5});
    CHECK(s["full_compiles"] == 1);
    CHECK(s["structural_passes_run"] == 2);
    CHECK(s["gates_visited"] == 3);
    CHECK(s["rebinds_performed"] == 4);
    CHECK(s["emit_count"] == 5);
    const json c = io::counts_to_json({{{"01", 3}, {"10", 7}}, 10});
    CHECK(c["shots"] == 10);
    CHECK(c["counts"]["10"] == 7);
}
