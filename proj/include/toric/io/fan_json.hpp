// JSON documents for fans and divisors.
//
//   fan:     {"dim": n, "rays": [[...], ...], "max_cones": [[...], ...], "name"?: "..."}
//   divisor: {"coeffs": [...]}
//
// Parsing is strict: unknown keys, floats and wrong arities are rejected with
// the offending field named. Serialization is canonical (sorted keys, no
// whitespace), so parse(serialize(doc)) == doc.

#ifndef TORIC_IO_FAN_JSON_HPP
#define TORIC_IO_FAN_JSON_HPP

#include <toric/error.hpp>
#include <toric/fan.hpp>
#include <toric/lattice.hpp>
#include <toric/polytope.hpp>

#include "json.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace toric::io {

using nlohmann::json;

struct FanDocument {
    std::int64_t dim = 0;
    std::vector<std::vector<std::int64_t>> rays;
    std::vector<std::vector<std::int64_t>> max_cones;
    std::optional<std::string> name;

    friend bool operator==(const FanDocument&, const FanDocument&) = default;
};

struct DivisorDocument {
    std::vector<std::int64_t> coeffs;

    friend bool operator==(const DivisorDocument&, const DivisorDocument&) = default;
};

namespace detail {

inline json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline void require_keys(const json& object, std::string_view what, const std::set<std::string>& required,
                         const std::set<std::string>& optional)
{
    if (!object.is_object()) {
        throw InputError(std::string(what) + ": expected a JSON object");
    }
    for (const auto& [key, value] : object.items()) {
        if (!required.contains(key) && !optional.contains(key)) {
            throw InputError(std::string(what) + ": unknown key \"" + key + "\"");
        }
    }
    for (const auto& key : required) {
        if (!object.contains(key)) {
            throw InputError(std::string(what) + ": missing key \"" + key + "\"");
        }
    }
}

inline std::int64_t integer_field(const json& value, const std::string& path)
{
    if (value.is_number_unsigned()) {
        const auto u = value.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw InputError(path + ": integer out of 64-bit range");
        }
        return static_cast<std::int64_t>(u);
    }
    if (value.is_number_integer()) {
        return value.get<std::int64_t>();
    }
    if (value.is_number_float()) {
        throw InputError(path + ": expected an integer, got a non-integer number");
    }
    throw InputError(path + ": expected an integer");
}

inline std::vector<std::int64_t> integer_array(const json& value, const std::string& path)
{
    if (!value.is_array()) {
        throw InputError(path + ": expected an array of integers");
    }
    std::vector<std::int64_t> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(integer_field(value[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

inline std::vector<std::vector<std::int64_t>> integer_matrix(const json& value, const std::string& path)
{
    if (!value.is_array()) {
        throw InputError(path + ": expected an array of arrays");
    }
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(integer_array(value[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

} // namespace detail

inline FanDocument parse_fan(std::string_view text)
{
    const json root = detail::parse_json(text);
    detail::require_keys(root, "fan", {"dim", "rays", "max_cones"}, {"name"});
    FanDocument doc;
    doc.dim = detail::integer_field(root["dim"], "dim");
    if (doc.dim < 1) {
        throw InputError("dim: must be at least 1");
    }
    doc.rays = detail::integer_matrix(root["rays"], "rays");
    for (std::size_t i = 0; i < doc.rays.size(); ++i) {
        if (doc.rays[i].size() != static_cast<std::size_t>(doc.dim)) {
            throw InputError("rays[" + std::to_string(i) + "]: expected " + std::to_string(doc.dim) +
                             " coordinates, got " + std::to_string(doc.rays[i].size()));
        }
    }
    doc.max_cones = detail::integer_matrix(root["max_cones"], "max_cones");
    for (std::size_t c = 0; c < doc.max_cones.size(); ++c) {
        for (std::size_t k = 0; k < doc.max_cones[c].size(); ++k) {
            const auto index = doc.max_cones[c][k];
            if (index < 0 || static_cast<std::size_t>(index) >= doc.rays.size()) {
                throw InputError("max_cones[" + std::to_string(c) + "][" + std::to_string(k) + "]: ray index " +
                                 std::to_string(index) + " out of range");
            }
        }
    }
    if (root.contains("name")) {
        if (!root["name"].is_string()) {
            throw InputError("name: expected a string");
        }
        doc.name = root["name"].get<std::string>();
    }
    return doc;
}

inline std::string serialize_fan(const FanDocument& doc)
{
    json root;
    root["dim"] = doc.dim;
    root["rays"] = doc.rays;
    root["max_cones"] = doc.max_cones;
    if (doc.name) {
        root["name"] = *doc.name;
    }
    return root.dump();
}

inline DivisorDocument parse_divisor(std::string_view text)
{
    const json root = detail::parse_json(text);
    detail::require_keys(root, "divisor", {"coeffs"}, {});
    return {detail::integer_array(root["coeffs"], "coeffs")};
}

inline std::string serialize_divisor(const DivisorDocument& doc)
{
    json root;
    root["coeffs"] = doc.coeffs;
    return root.dump();
}

inline FanData to_fan_data(const FanDocument& doc)
{
    FanData data;
    data.dim = static_cast<std::size_t>(doc.dim);
    for (const auto& r : doc.rays) {
        std::vector<Integer> coords(r.begin(), r.end());
        data.rays.emplace_back(std::move(coords));
    }
    for (const auto& c : doc.max_cones) {
        data.max_cones.emplace_back(c.begin(), c.end());
    }
    return data;
}

inline FanDocument to_document(const Fan& fan, std::optional<std::string> name = std::nullopt)
{
    FanDocument doc;
    doc.dim = static_cast<std::int64_t>(fan.dim());
    for (const auto& r : fan.rays()) {
        std::vector<std::int64_t> coords;
        for (const auto& c : r) {
            coords.push_back(to_int64(c));
        }
        doc.rays.push_back(std::move(coords));
    }
    for (const auto& cone : fan.max_cones()) {
        doc.max_cones.emplace_back(cone.begin(), cone.end());
    }
    doc.name = std::move(name);
    return doc;
}

inline DivisorCoefficients to_divisor(const DivisorDocument& doc)
{
    return {std::vector<Integer>(doc.coeffs.begin(), doc.coeffs.end())};
}

} // namespace toric::io

#endif
