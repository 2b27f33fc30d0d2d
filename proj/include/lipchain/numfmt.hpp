#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace lipchain {

// Shortest decimal that round-trips the exact double.
inline std::string format_shortest(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

// 13 significant digits, trailing zeros trimmed (printf %g).13 digits keep
// the worst-case relative parse-back error at 5e-13, inside the 1e-12
// fidelity contract of the CSV/JSON writers; 12 would allow up to 5e-12.
inline std::string format_sig13(double value) {
    char buf[40];
    int len = std::snprintf(buf, sizeof(buf), "%.13g", value);
    return std::string(buf, buf + len);
}

}  // namespace lipchain
