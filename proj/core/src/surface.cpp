#include "slabuq/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slabuq {

void TrackConfig::validate(int frame_width) const {
    if (stations.empty()) throw std::invalid_argument("TrackConfig: no stations");
    if (!(mm_per_pixel > 0.0)) throw std::invalid_argument("TrackConfig: bad mm_per_pixel");
    if (!(dt_s > 0.0)) throw std::invalid_argument("TrackConfig: dt must be positive");
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (stations[i] < 0 || stations[i] >= frame_width) {
            throw std::invalid_argument("TrackConfig: station outside the frame");
        }
        if (i > 0 && stations[i] <= stations[i - 1]) {
            throw std::invalid_argument("TrackConfig: stations must be strictly increasing");
        }
    }
}

std::vector<int> default_stations(const BinaryMask& first_mask, int count) {
    if (count < 1) throw std::invalid_argument("default_stations: count must be >= 1");
    int first = -1, last = -1;
    for (int x = 0; x < first_mask.width(); ++x) {
        for (int y = 0; y < first_mask.height(); ++y) {
            if (first_mask.at(x, y)) {
                if (first < 0) first = x;
                last = x;
                break;
            }
        }
    }
    if (first < 0) {
        first = 0;
        last = first_mask.width() - 1;
    }
    const double span = last - first;
    const double lo = first + 0.1 * span;
    const double hi = last - 0.1 * span;

    std::vector<int> stations;
    stations.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.5;
        const int col = static_cast<int>(std::lround(lo + t * (hi - lo)));
        if (stations.empty() || col > stations.back()) stations.push_back(col);
    }
    return stations;
}

std::vector<double> extract_heights(const BinaryMask& mask, const TrackConfig& cfg) {
    cfg.validate(mask.width());
    std::vector<double> heights;
    heights.reserve(cfg.stations.size());
    for (int col : cfg.stations) {
        int top = -1, bottom = -1;
        for (int y = 0; y < mask.height(); ++y) {
            if (mask.at(col, y)) {
                if (top < 0) top = y;
                bottom = y;
            }
        }
        heights.push_back(top < 0 ? 0.0 : (bottom - top + 1) * cfg.mm_per_pixel);
    }
    return heights;
}

HeightSeries enforce_monotonic(HeightSeries heights) {
    for (std::size_t k = 1; k < heights.size(); ++k) {
        for (std::size_t l = 0; l < heights[k].size(); ++l) {
            heights[k][l] = std::min(heights[k - 1][l], heights[k][l]);
        }
    }
    return heights;
}

RateMatrix localized_rates(const HeightSeries& heights, double dt_s) {
    if (heights.size() < 2) throw std::invalid_argument("localized_rates: need >= 2 frames");
    if (!(dt_s > 0.0)) throw std::invalid_argument("localized_rates: dt must be positive");
    RateMatrix rates(heights.size() - 1);
    for (std::size_t k = 0; k + 1 < heights.size(); ++k) {
        rates[k].resize(heights[k].size());
        for (std::size_t l = 0; l < heights[k].size(); ++l) {
            rates[k][l] = (heights[k][l] - heights[k + 1][l]) / dt_s;
        }
    }
    return rates;
}

double total_rate(const RateMatrix& rates) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : rates) {
        for (double r : row) {
            sum += r;
            ++n;
        }
    }
    if (n == 0) throw std::invalid_argument("total_rate: empty rate matrix");
    return sum / static_cast<double>(n);
}

BinaryMask grow_mask(const ProbMap& mean, const UncMap& unc) {
    if (!mean.same_size(unc)) throw std::invalid_argument("grow_mask: dimension mismatch");
    BinaryMask mask(mean.width(), mean.height());
    const auto& p = mean.values();
    const auto& u = unc.values();
    auto& m = mask.values();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = p[i] + u[i] >= 0.5 ? 1 : 0;
    return mask;
}

BinaryMask shrink_mask(const ProbMap& mean, const UncMap& unc) {
    if (!mean.same_size(unc)) throw std::invalid_argument("shrink_mask: dimension mismatch");
    BinaryMask mask(mean.width(), mean.height());
    const auto& p = mean.values();
    const auto& u = unc.values();
    auto& m = mask.values();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = p[i] - u[i] >= 0.5 ? 1 : 0;
    return mask;
}

double mean_rate_excluding_burnout(const HeightSeries& monotonic_heights, double dt_s) {
    if (!(dt_s > 0.0)) throw std::invalid_argument("mean_rate: dt must be positive");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k + 1 < monotonic_heights.size(); ++k) {
        for (std::size_t l = 0; l < monotonic_heights[k].size(); ++l) {
            if (monotonic_heights[k][l] <= 0.0) continue;
            sum += (monotonic_heights[k][l] - monotonic_heights[k + 1][l]) / dt_s;
            ++n;
        }
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

RateEstimate rate_with_bounds(const std::vector<ProbMap>& means,
                              const std::vector<UncMap>& umasks, const TrackConfig& cfg) {
    if (means.size() != umasks.size()) {
        throw std::invalid_argument("rate_with_bounds: means/umasks length mismatch");
    }
    if (means.size() < 2) throw std::invalid_argument("rate_with_bounds: need >= 2 frames");

    const std::size_t n = means.size();
    HeightSeries base(n), grown(n), shrunk(n);
    for (std::size_t k = 0; k < n; ++k) {
        base[k] = extract_heights(threshold_mask(means[k]), cfg);
        grown[k] = extract_heights(grow_mask(means[k], umasks[k]), cfg);
        shrunk[k] = extract_heights(shrink_mask(means[k], umasks[k]), cfg);
    }
    base = enforce_monotonic(std::move(base));
    grown = enforce_monotonic(std::move(grown));
    shrunk = enforce_monotonic(std::move(shrunk));

    RateEstimate est;
    est.rate = mean_rate_excluding_burnout(base, cfg.dt_s);
    est.rate_upper = mean_rate_excluding_burnout(grown, cfg.dt_s);
    est.rate_lower = mean_rate_excluding_burnout(shrunk, cfg.dt_s);
    est.per_station = localized_rates(base, cfg.dt_s);
    return est;
}

} // namespace slabuq
