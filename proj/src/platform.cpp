#include "pqc/platform.hpp"

#include <algorithm>

#include "hash.hpp"
#include "pqc/error.hpp"

namespace pqc {

PlatformConfig PlatformConfig::standard(std::size_t qubit_count, bool decompose_hadamard) {
    PlatformConfig platform;
    platform.set_qubit_count(qubit_count);
    for (const char* name : {"x", "y", "z", "h"}) platform.add_primitive(name, {1, false, 1});
    for (const char* name : {"rx", "ry", "rz"}) platform.add_primitive(name, {1, true, 1});
    platform.add_primitive("cnot", {2, false, 2});
    platform.add_primitive("cz", {2, false, 2});
    platform.add_primitive("measure", {1, false, 1});
    platform.add_primitive("prep_z", {1, false, 1});
    if (decompose_hadamard) {
        platform.add_composite("hadamard", {Stencil{"h", {0}, {}}});
    } else {
        platform.add_primitive("hadamard", {1, false, 1});
    }
    platform.add_composite("swap", {Stencil{"cnot", {0, 1}, {}}, Stencil{"cnot", {1, 0}, {}}, Stencil{"cnot", {0, 1}, {}}});
    return platform;
}

void PlatformConfig::set_qubit_count(std::size_t count) {
    if (count == 0) throw Error(ErrorKind::InvalidArgument, "platform needs at least one qubit");
    qubit_count_ = count;
}

void PlatformConfig::add_primitive(std::string name, PrimitiveSpec spec) {
    if (spec.duration < 1) throw Error(ErrorKind::InvalidArgument, "primitive '" + name + "' needs duration >= 1");
    if (spec.operands < 1 || spec.operands > 2) {
        throw Error(ErrorKind::InvalidArgument, "primitive '" + name + "' must take one or two qubits");
    }
    if (composites_.contains(name)) throw Error(ErrorKind::DuplicateName, "gate '" + name + "' is already a composite");
    primitives_[std::move(name)] = spec;
}

void PlatformConfig::add_composite(std::string name, std::vector<Stencil> expansion) {
    if (primitives_.contains(name)) throw Error(ErrorKind::DuplicateName, "gate '" + name + "' is already a primitive");
    if (expansion.empty()) throw Error(ErrorKind::InvalidArgument, "composite '" + name + "' has an empty expansion");
    CompositeRule rule;
    rule.operands = 0;
    for (const Stencil& stencil : expansion) {
        const PrimitiveSpec* spec = primitive(stencil.gate);
        if (spec == nullptr) {
            throw Error(ErrorKind::NoRuleForGate,
                        "composite '" + name + "' expands into non-primitive '" + stencil.gate + "'");
        }
        if (stencil.qubits.size() != spec->operands) {
            throw Error(ErrorKind::ArityMismatch, "composite '" + name + "': stencil '" + stencil.gate + "' takes " +
                                                      std::to_string(spec->operands) + " qubits");
        }
        const bool has_angle = !std::holds_alternative<std::monostate>(stencil.angle);
        if (has_angle != spec->angle) {
            throw Error(ErrorKind::ArityMismatch, "composite '" + name + "': angle mismatch for '" + stencil.gate + "'");
        }
        if (std::holds_alternative<Stencil::ForwardAngle>(stencil.angle)) rule.angle = true;
        for (std::size_t q : stencil.qubits) rule.operands = std::max(rule.operands, q + 1);
    }
    if (rule.operands > 2) throw Error(ErrorKind::InvalidArgument, "composite '" + name + "' uses more than two qubits");
    rule.expansion = std::move(expansion);
    composites_[std::move(name)] = std::move(rule);
}

void PlatformConfig::set_topology(std::vector<std::pair<std::size_t, std::size_t>> edges) {
    std::set<std::pair<std::size_t, std::size_t>> normalized;
    for (auto [a, b] : edges) {
        if (a == b) throw Error(ErrorKind::InvalidArgument, "topology edge with identical endpoints");
        normalized.emplace(std::min(a, b), std::max(a, b));
    }
    topology_ = std::move(normalized);
}

bool PlatformConfig::is_primitive(std::string_view name) const { return primitives_.find(name) != primitives_.end(); }

bool PlatformConfig::is_composite(std::string_view name) const { return composites_.find(name) != composites_.end(); }

const PrimitiveSpec* PlatformConfig::primitive(std::string_view name) const {
    auto it = primitives_.find(name);
    return it == primitives_.end() ? nullptr : &it->second;
}

const CompositeRule* PlatformConfig::composite(std::string_view name) const {
    auto it = composites_.find(name);
    return it == composites_.end() ? nullptr : &it->second;
}

std::size_t PlatformConfig::operand_count(std::string_view name) const {
    if (const auto* p = primitive(name)) return p->operands;
    if (const auto* c = composite(name)) return c->operands;
    throw Error(ErrorKind::UnknownGate, "unknown gate '" + std::string(name) + "'");
}

bool PlatformConfig::takes_angle(std::string_view name) const {
    if (const auto* p = primitive(name)) return p->angle;
    if (const auto* c = composite(name)) return c->angle;
    throw Error(ErrorKind::UnknownGate, "unknown gate '" + std::string(name) + "'");
}

std::uint32_t PlatformConfig::duration(std::string_view name) const {
    if (const auto* p = primitive(name)) return p->duration;
    throw Error(ErrorKind::NoRuleForGate, "'" + std::string(name) + "' is not a primitive");
}

bool PlatformConfig::connected(std::size_t a, std::size_t b) const {
    if (!topology_) return true;
    return topology_->contains({std::min(a, b), std::max(a, b)});
}

std::uint64_t PlatformConfig::content_hash() const {
    detail::Fnv1a h;
    h.u64(qubit_count_);
    h.u64(primitives_.size());
    for (const auto& [name, spec] : primitives_) {
        h.str(name);
        h.u64(spec.operands);
        h.u64(spec.angle ? 1 : 0);
        h.u64(spec.duration);
    }
    h.u64(composites_.size());
    for (const auto& [name, rule] : composites_) {
        h.str(name);
        h.u64(rule.expansion.size());
        for (const Stencil& s : rule.expansion) {
            h.str(s.gate);
            h.u64(s.qubits.size());
            for (std::size_t q : s.qubits) h.u64(q);
            h.u64(s.angle.index());
            if (const double* lit = std::get_if<double>(&s.angle)) h.f64(*lit);
        }
    }
    if (topology_) {
        h.u64(topology_->size());
        for (auto [a, b] : *topology_) {
            h.u64(a);
            h.u64(b);
        }
    } else {
        h.u64(~0ULL);
    }
    return h.digest();
}

}  // namespace pqc
