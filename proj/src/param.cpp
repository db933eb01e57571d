#include "pqc/param.hpp"

#include <cmath>

#include "pqc/error.hpp"

namespace pqc {

std::string_view to_string(ParamType type) {
    switch (type) {
        case ParamType::Int: return "INT";
        case ParamType::Real: return "REAL";
        case ParamType::Angle: return "ANGLE";
    }
    return "?";
}

std::optional<ParamType> param_type_from_string(std::string_view text) {
    if (text == "INT") return ParamType::Int;
    if (text == "REAL") return ParamType::Real;
    if (text == "ANGLE") return ParamType::Angle;
    return std::nullopt;
}

bool value_matches(ParamType type, double value) {
    if (!std::isfinite(value)) return false;
    if (type == ParamType::Int) return value >= 0.0 && std::floor(value) == value && value < 4294967296.0;
    return true;
}

void check_value(const Param& param, double value) {
    if (!value_matches(param.type, value)) {
        throw Error(ErrorKind::TypeValueMismatch, "value " + std::to_string(value) + " is not a valid " +
                                                      std::string(to_string(param.type)) + " for parameter '" +
                                                      param.name + "'");
    }
}

bool is_valid_param_name(std::string_view name) {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) return false;
    for (char c : name) {
        if (!alpha(c) && !digit(c) && c != '_') return false;
    }
    return true;
}

ParamRegistry::ParamRegistry(std::uint64_t seed) : rng_(seed) {}

std::string ParamRegistry::generate_name() {
    static constexpr std::string_view alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_letter(0, 51);
    for (;;) {
        std::string name(8, ' ');
        // Auto-names must also be valid symbolic names, so the first
        // character is a letter.
        name[0] = alphabet[pick_letter(rng_)];
        for (std::size_t i = 1; i < name.size(); ++i) name[i] = alphabet[pick(rng_)];
        if (!by_name_.contains(name)) return name;
    }
}

ParamId ParamRegistry::create(ParamType type, std::optional<std::string> name, std::optional<double> value) {
    if (name) {
        if (!is_valid_param_name(*name)) throw Error(ErrorKind::MalformedName, "invalid parameter name '" + *name + "'");
        if (by_name_.contains(*name)) throw Error(ErrorKind::DuplicateName, "parameter '" + *name + "' already exists");
    }
    Param param;
    param.id = ParamId{static_cast<std::uint32_t>(params_.size())};
    param.type = type;
    param.name = name ? std::move(*name) : generate_name();
    if (value) {
        check_value(param, *value);
        param.value = value;
    }
    by_name_.emplace(param.name, param.id);
    params_.push_back(std::move(param));
    return params_.back().id;
}

void ParamRegistry::set_value(ParamId id, double value) {
    Param& param = params_.at(at(id).id.value);
    check_value(param, value);
    param.value = value;
}

void ParamRegistry::clear_value(ParamId id) { params_.at(at(id).id.value).value.reset(); }

const Param& ParamRegistry::at(ParamId id) const {
    if (!contains(id)) throw Error(ErrorKind::UnknownParam, "no parameter with id " + std::to_string(id.value));
    return params_[id.value];
}

std::optional<ParamId> ParamRegistry::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

}  // namespace pqc
