#pragma once

#include <cstdio>
#include <string>

namespace hosm {

/// Shortest-faithful decimal form with the given significant digits
/// (17 round-trips a double exactly).
inline std::string format_double(double value, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

} // namespace hosm
