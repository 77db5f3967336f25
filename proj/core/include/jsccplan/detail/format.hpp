#pragma once

#include <charconv>
#include <string>

namespace jsccplan::detail {

/// Shortest decimal form that round-trips to the same double; keeps every
/// emitted CSV and SVG byte-stable across runs and platforms.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace jsccplan::detail
