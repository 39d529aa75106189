// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace ecobench {

// Shortest decimal form that parses back to the exact same double.
inline std::string format_double(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// Scientific notation with 16 significant digits (round-trips to 1 ulp).
inline std::string format_double_sci(double v) {
    char buf[48];
    const int n = std::snprintf(buf, sizeof buf, "%.15e", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

// Strict full-token parses; nullopt on any trailing garbage.
inline std::optional<double> parse_double(std::string_view s) {
    double v{};
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v{};
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace ecobench
