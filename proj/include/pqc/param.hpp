#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pqc {

/// INT params stand in for qubit indices; REAL and ANGLE both stand in for
/// rotation angles and differ only in how they are reported.
enum class ParamType { Int, Real, Angle };

std::string_view to_string(ParamType type);
std::optional<ParamType> param_type_from_string(std::string_view text);

/// Handle to a parameter inside one ParamRegistry.
struct ParamId {
    std::uint32_t value = 0;

    friend auto operator<=>(const ParamId&, const ParamId&) = default;
};

struct Param {
    ParamId id;
    ParamType type = ParamType::Angle;
    std::string name;
    std::optional<double> value;
};

/// Checks that `value` is admissible for `type`: a non-negative integer for
/// INT, any finite number for REAL/ANGLE.
bool value_matches(ParamType type, double value);

/// Throws TypeValueMismatch if `value` is not admissible for `param`.
void check_value(const Param& param, double value);

bool is_valid_param_name(std::string_view name);

/// Owns the parameters of one or more programs. Unnamed parameters receive
/// an 8-character alphanumeric name drawn from a generator seeded at
/// construction, so identical construction sequences give identical names.
///
/// Not synchronized: create and set_value from one thread at a time.
class ParamRegistry {
public:
    explicit ParamRegistry(std::uint64_t seed = 0);

    ParamId create(ParamType type, std::optional<std::string> name = std::nullopt,
                   std::optional<double> value = std::nullopt);

    void set_value(ParamId id, double value);
    void clear_value(ParamId id);

    const Param& at(ParamId id) const;
    const Param& operator[](ParamId id) const { return at(id); }
    bool contains(ParamId id) const noexcept { return id.value < params_.size(); }
    std::optional<ParamId> find(std::string_view name) const;

    std::size_t size() const noexcept { return params_.size(); }
    const std::vector<Param>& all() const noexcept { return params_; }

private:
    std::string generate_name();

    std::vector<Param> params_;
    std::unordered_map<std::string, ParamId> by_name_;
    std::mt19937_64 rng_;
};

}  // namespace pqc

template <>
struct std::hash<pqc::ParamId> {
    std::size_t operator()(const pqc::ParamId& id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
