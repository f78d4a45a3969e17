#pragma once

#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <string_view>

#include "slitwave/errors.hpp"

namespace slitwave::units {

// All quantities are held in strict SI internally. Config files and CLI flags
// carry explicit unit suffixes ("113 cm", "70 nm", "900 K", "840 amu") and are
// converted on parse.

namespace detail {

inline std::pair<double, std::string> split_value(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view t = text.substr(b, e - b);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr == t.data())
        throw ConfigError("cannot parse numeric value from '" + std::string(text) + "'");
    std::string_view rest(ptr, static_cast<std::size_t>(t.data() + t.size() - ptr));
    std::size_t rb = 0;
    while (rb < rest.size() && std::isspace(static_cast<unsigned char>(rest[rb]))) ++rb;
    return {value, std::string(rest.substr(rb))};
}

inline double convert(std::string_view text, const std::map<std::string, double, std::less<>>& table,
                      const char* what) {
    auto [value, suffix] = split_value(text);
    auto it = table.find(suffix);
    if (it == table.end())
        throw ConfigError(std::string("unknown ") + what + " unit '" + suffix + "' in '" +
                          std::string(text) + "'");
    return value * it->second;
}

}  // namespace detail

inline double parse_length(std::string_view text) {
    static const std::map<std::string, double, std::less<>> table = {
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6},
        {"nm", 1e-9}, {"pm", 1e-12},
    };
    return detail::convert(text, table, "length");
}

inline double parse_speed(std::string_view text) {
    static const std::map<std::string, double, std::less<>> table = {
        {"m/s", 1.0}, {"km/s", 1e3},
    };
    return detail::convert(text, table, "speed");
}

inline double parse_temperature(std::string_view text) {
    static const std::map<std::string, double, std::less<>> table = {{"K", 1.0}};
    return detail::convert(text, table, "temperature");
}

inline double parse_mass(std::string_view text) {
    static const std::map<std::string, double, std::less<>> table = {
        {"amu", 1.0},  // particle masses are carried in amu
    };
    return detail::convert(text, table, "mass");
}

inline double parse_angle(std::string_view text) {
    static const std::map<std::string, double, std::less<>> table = {
        {"rad", 1.0}, {"mrad", 1e-3},
    };
    return detail::convert(text, table, "angle");
}

inline double parse_number(std::string_view text) {
    auto [value, suffix] = detail::split_value(text);
    if (!suffix.empty())
        throw ConfigError("unexpected unit '" + suffix + "' on dimensionless value");
    return value;
}

}  // namespace slitwave::units
