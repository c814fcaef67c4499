#pragma once

#include <cmath>
#include <cstdint>

namespace ofdmim {

/// Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
    double half_width = 0.5;
};

/// z defaults to the two-sided 95% normal quantile.
inline WilsonInterval wilson(std::uint64_t successes, std::uint64_t total,
                             double z = 1.959963984540054) {
    if (total == 0) return {};
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval out;
    out.lo = center - half;
    out.hi = center + half;
    if (out.lo < 0.0) out.lo = 0.0;
    if (out.hi > 1.0) out.hi = 1.0;
    out.half_width = half;
    return out;
}

}  // namespace ofdmim
