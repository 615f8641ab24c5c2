#pragma once

// Locale-independent number rendering and parsing for the CLI.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace incidence {

// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return {buf, end};
}

// Fixed number of significant digits, no exponent unless needed.
inline std::string format_number(double v, int significant) {
    if (!std::isfinite(v)) return format_number(v);
    char buf[64];
    auto [end, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
    if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return {buf, end};
}

inline double parse_real(std::string_view s) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

// Accepts a decimal ("0.015") or a fraction literal ("26/1734"). The
// fraction is divided once at double precision.
inline double parse_rate(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_real(s);
    const double num = parse_real(s.substr(0, slash));
    const double den = parse_real(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return num / den;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace incidence
