#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pqc {

/// Operand signature and duration of a gate the target executes natively.
struct PrimitiveSpec {
    std::size_t operands = 1;
    bool angle = false;
    std::uint32_t duration = 1;
};

/// One gate of a composite's expansion. Qubit entries index the composite's
/// formal qubit operands; the angle either forwards the composite's angle or
/// is a fixed literal.
struct Stencil {
    struct ForwardAngle {
        friend bool operator==(const ForwardAngle&, const ForwardAngle&) = default;
    };

    std::string gate;
    std::vector<std::size_t> qubits;
    std::variant<std::monostate, ForwardAngle, double> angle;

    friend bool operator==(const Stencil&, const Stencil&) = default;
};

struct CompositeRule {
    std::size_t operands = 1;
    bool angle = false;
    std::vector<Stencil> expansion;
};

class PlatformConfig {
public:
    PlatformConfig() = default;

    /// Built-in target: primitives x y z h hadamard rx ry rz cnot cz measure
    /// prep_z, the composite swap, all-to-all connectivity. With
    /// `decompose_hadamard`, hadamard becomes a composite that expands to h.
    static PlatformConfig standard(std::size_t qubit_count, bool decompose_hadamard = false);

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    void set_qubit_count(std::size_t count);

    void add_primitive(std::string name, PrimitiveSpec spec);
    /// Operand count and angle flag are derived from the stencils. Throws if
    /// a stencil names something other than a known primitive.
    void add_composite(std::string name, std::vector<Stencil> expansion);
    void set_topology(std::vector<std::pair<std::size_t, std::size_t>> edges);
    void clear_topology() { topology_.reset(); }

    bool is_primitive(std::string_view name) const;
    bool is_composite(std::string_view name) const;
    bool knows(std::string_view name) const { return is_primitive(name) || is_composite(name); }

    const PrimitiveSpec* primitive(std::string_view name) const;
    const CompositeRule* composite(std::string_view name) const;
    std::size_t operand_count(std::string_view name) const;
    bool takes_angle(std::string_view name) const;
    std::uint32_t duration(std::string_view name) const;

    bool has_topology() const noexcept { return topology_.has_value(); }
    bool connected(std::size_t a, std::size_t b) const;
    const std::optional<std::set<std::pair<std::size_t, std::size_t>>>& topology() const noexcept { return topology_; }

    const std::map<std::string, PrimitiveSpec, std::less<>>& primitives() const noexcept { return primitives_; }
    const std::map<std::string, CompositeRule, std::less<>>& composites() const noexcept { return composites_; }

    /// Stable digest of the full configuration, used as a template cache key.
    std::uint64_t content_hash() const;

private:
    std::size_t qubit_count_ = 0;
    std::map<std::string, PrimitiveSpec, std::less<>> primitives_;
    std::map<std::string, CompositeRule, std::less<>> composites_;
    std::optional<std::set<std::pair<std::size_t, std::size_t>>> topology_;
};

}  // namespace pqc
