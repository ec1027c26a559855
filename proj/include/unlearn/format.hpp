#pragma once

#include <cstdio>
#include <string>

namespace unlearn {

// Shortest round-trip decimal form, used everywhere numbers reach a report
// so reruns produce byte-identical files.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline std::string fmt_bool(bool v) { return v ? "true" : "false"; }

} // namespace unlearn
