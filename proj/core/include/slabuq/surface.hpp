#pragma once

#include <vector>

#include "slabuq/raster.hpp"

namespace slabuq {

/// Column stations where the top surface is tracked, plus the scales that
/// turn pixel drops into mm/s.
struct TrackConfig {
    std::vector<int> stations; ///< strictly increasing column indices
    double mm_per_pixel = 0.1;
    double dt_s = 0.32;

    void validate(int frame_width) const;
};

/// `count` equally spaced columns across the central 80% of the fuel span
/// of `first_mask` (full width when the mask is empty). Duplicates from
/// rounding are collapsed.
std::vector<int> default_stations(const BinaryMask& first_mask, int count = 10);

/// Vertical fuel extent at each station, in mm: (bottommost fuel row -
/// topmost fuel row + 1) * mm_per_pixel, or 0 when the column has no fuel.
std::vector<double> extract_heights(const BinaryMask& mask, const TrackConfig& cfg);

/// heights[frame][station]
using HeightSeries = std::vector<std::vector<double>>;
/// rates[interval][station], interval k spans frames k -> k+1
using RateMatrix = std::vector<std::vector<double>>;

/// Clamps each station's height series to be non-increasing in time
/// (a burning surface cannot regrow): h'(k+1) = min(h'(k), h(k+1)).
/// Idempotent; the first frame is never changed.
HeightSeries enforce_monotonic(HeightSeries heights);

/// Recession-positive localized rates: (h(k) - h(k+1)) / dt, so a receding
/// surface yields positive mm/s. Throws std::invalid_argument for fewer
/// than two frames or dt <= 0.
RateMatrix localized_rates(const HeightSeries& heights, double dt_s);

/// Arithmetic mean over every matrix entry. Throws on an empty matrix.
double total_rate(const RateMatrix& rates);

/// Average localized rate over a clamped height series, skipping intervals
/// whose station already reads zero height at the interval start (burned
/// out or never covered). 0 when nothing qualifies.
double mean_rate_excluding_burnout(const HeightSeries& monotonic_heights, double dt_s);

/// Re-thresholded masks after adding/subtracting the uncertainty map:
/// grow flips background->fuel where mean + unc >= 0.5, shrink flips
/// fuel->background where mean - unc < 0.5. For any nonnegative unc,
/// shrink <= threshold <= grow pointwise.
BinaryMask grow_mask(const ProbMap& mean, const UncMap& unc);
BinaryMask shrink_mask(const ProbMap& mean, const UncMap& unc);

/// Total-rate estimate with its grown/shrunk-mask companions.
struct RateEstimate {
    double rate = 0.0;       ///< from thresholded mean masks
    double rate_upper = 0.0; ///< from grown masks
    double rate_lower = 0.0; ///< from shrunk masks
    RateMatrix per_station;  ///< localized rates of the threshold route,
                             ///< after the no-regrowth clamp
};

/// Full per-sequence estimate: threshold/grow/shrink masks per frame,
/// heights, the no-regrowth clamp, then the averaged rate for each of the
/// three routes. Intervals at stations that have already burned out
/// (clamped height 0 at the interval start) are left out of the average.
/// Throws std::invalid_argument on length mismatch or sequences shorter
/// than 2.
RateEstimate rate_with_bounds(const std::vector<ProbMap>& means,
                              const std::vector<UncMap>& umasks, const TrackConfig& cfg);

} // namespace slabuq
