#include "cgc/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cgc {

Real round_sig(Real x, int digits) {
    if (x == 0.0) return 0.0;  // normalizes -0.0
    if (!std::isfinite(x)) return x;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

std::string format_sig(Real x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, round_sig(x, digits));
    return buf;
}

}  // namespace cgc
