#include "pqc/json_io.hpp"

#include "pqc/error.hpp"

namespace pqc::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::SyntaxError, what); }

const json& member(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::size_t as_index(const json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
    return v.get<std::size_t>();
}

}  // namespace

PlatformConfig platform_from_json(const json& doc) {
    try {
        PlatformConfig platform;
        platform.set_qubit_count(as_index(member(doc, "qubits"), "qubits"));
        const json& prims = member(doc, "primitives");
        if (!prims.is_object()) bad("primitives must be an object");
        for (const auto& [name, spec] : prims.items()) {
            PrimitiveSpec p;
            p.operands = as_index(member(spec, "operands"), "operands");
            p.angle = spec.value("angle", false);
            p.duration = static_cast<std::uint32_t>(as_index(spec.contains("duration") ? spec.at("duration") : json(1),
                                                             "duration"));
            platform.add_primitive(name, p);
        }
        if (doc.contains("composites")) {
            for (const auto& [name, stencils] : doc.at("composites").items()) {
                if (!stencils.is_array()) bad("composite '" + name + "' must be a list of stencils");
                std::vector<Stencil> expansion;
                for (const json& s : stencils) {
                    Stencil stencil;
                    stencil.gate = member(s, "gate").get<std::string>();
                    for (const json& q : member(s, "qubits")) stencil.qubits.push_back(as_index(q, "stencil qubit"));
                    if (s.contains("angle")) {
                        const json& a = s.at("angle");
                        if (a.is_boolean() && a.get<bool>()) {
                            stencil.angle = Stencil::ForwardAngle{};
                        } else if (a.is_number()) {
                            stencil.angle = a.get<double>();
                        } else if (!(a.is_boolean() || a.is_null())) {
                            bad("stencil angle must be true or a number");
                        }
                    }
                    expansion.push_back(std::move(stencil));
                }
                platform.add_composite(name, std::move(expansion));
            }
        }
        if (doc.contains("topology") && !doc.at("topology").is_null()) {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const json& e : doc.at("topology")) {
                if (!e.is_array() || e.size() != 2) bad("topology entries must be [a, b]");
                edges.emplace_back(as_index(e[0], "topology qubit"), as_index(e[1], "topology qubit"));
            }
            platform.set_topology(std::move(edges));
        }
        return platform;
    } catch (const json::exception& e) {
        bad(std::string("platform JSON: ") + e.what());
    }
}

json platform_to_json(const PlatformConfig& platform) {
    json doc;
    doc["qubits"] = platform.qubit_count();
    json prims = json::object();
    for (const auto& [name, spec] : platform.primitives()) {
        prims[name] = {{"operands", spec.operands}, {"angle", spec.angle}, {"duration", spec.duration}};
    }
    doc["primitives"] = prims;
    json comps = json::object();
    for (const auto& [name, rule] : platform.composites()) {
        json list = json::array();
        for (const Stencil& s : rule.expansion) {
            json st = {{"gate", s.gate}, {"qubits", s.qubits}};
            if (std::holds_alternative<Stencil::ForwardAngle>(s.angle)) st["angle"] = true;
            if (const double* lit = std::get_if<double>(&s.angle)) st["angle"] = *lit;
            list.push_back(st);
        }
        comps[name] = list;
    }
    doc["composites"] = comps;
    if (platform.topology()) {
        json edges = json::array();
        for (auto [a, b] : *platform.topology()) edges.push_back({a, b});
        doc["topology"] = edges;
    }
    return doc;
}

Program program_from_json(const json& doc, std::shared_ptr<const PlatformConfig> platform, std::uint64_t seed) {
    try {
        auto registry = std::make_shared<ParamRegistry>(seed);
        if (doc.contains("params")) {
            for (const json& p : doc.at("params")) {
                const auto type = param_type_from_string(member(p, "type").get<std::string>());
                if (!type) bad("parameter type must be INT, REAL or ANGLE");
                std::optional<std::string> name;
                std::optional<double> value;
                if (p.contains("name") && !p.at("name").is_null()) name = p.at("name").get<std::string>();
                if (p.contains("value") && !p.at("value").is_null()) {
                    if (!p.at("value").is_number()) bad("parameter value must be a number");
                    value = p.at("value").get<double>();
                }
                registry->create(*type, name, value);
            }
        }
        auto param_ref = [&](const json& v) {
            const json& ref = member(v, "param");
            if (ref.is_number_integer()) {
                const std::size_t index = as_index(ref, "param index");
                if (index >= registry->size()) bad("param index " + std::to_string(index) + " out of range");
                return ParamId{static_cast<std::uint32_t>(index)};
            }
            const std::string name = ref.get<std::string>();
            auto id = registry->find(name);
            if (!id) throw Error(ErrorKind::UnknownParam, "unknown parameter '" + name + "'");
            return *id;
        };

        Program program(doc.value("name", std::string("program")), as_index(member(doc, "qubits"), "qubits"), registry);
        for (const json& k : member(doc, "kernels")) {
            Kernel kernel(member(k, "name").get<std::string>(), platform, registry);
            for (const json& g : member(k, "gates")) {
                std::vector<QubitRef> qubits;
                for (const json& q : member(g, "qubits")) {
                    if (q.is_object()) {
                        qubits.emplace_back(param_ref(q));
                    } else {
                        qubits.emplace_back(as_index(q, "qubit"));
                    }
                }
                std::optional<AngleArg> angle;
                if (g.contains("angle") && !g.at("angle").is_null()) {
                    const json& a = g.at("angle");
                    if (a.is_object()) {
                        angle = AngleArg(param_ref(a));
                    } else if (a.is_number()) {
                        angle = AngleArg(a.get<double>());
                    } else {
                        bad("angle must be a number or {\"param\": name}");
                    }
                }
                kernel.gate(member(g, "gate").get<std::string>(), std::move(qubits), angle);
            }
            program.add_kernel(std::move(kernel));
        }
        return program;
    } catch (const json::exception& e) {
        bad(std::string("program JSON: ") + e.what());
    }
}

json stats_to_json(const StatsSnapshot& stats) {
    return {{"full_compiles", stats.full_compiles},
            {"structural_passes_run", stats.structural_passes_run},
            {"gates_visited", stats.gates_visited},
            {"rebinds_performed", stats.rebinds_performed},
            {"emit_count", stats.emit_count}};
}

json counts_to_json(const sim::Counts& counts) {
    json hist = json::object();
    for (const auto& [bits, n] : counts.histogram) hist[bits] = n;
    return {{"shots", counts.shots}, {"counts", hist}};
}

}  // namespace pqc::io
