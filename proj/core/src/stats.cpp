#include "slabuq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slabuq {

Histogram Histogram::build(std::span<const double> values, int bins) {
    if (values.empty()) throw std::invalid_argument("Histogram: no samples");
    if (bins < 1) throw std::invalid_argument("Histogram: bins must be >= 1");

    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    Histogram h;
    h.lo = *mn;
    h.hi = *mx;
    if (h.lo == h.hi) {
        h.counts.assign(1, values.size());
        return h;
    }
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    const double scale = bins / (h.hi - h.lo);
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - h.lo) * scale);
        if (idx >= h.counts.size()) idx = h.counts.size() - 1; // top edge inclusive
        ++h.counts[idx];
    }
    return h;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile: no samples");
    if (q <= 0.0) return sorted.front();
    if (q >= 1.0) return sorted.back();
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace slabuq
