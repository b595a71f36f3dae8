#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slabuq/perturb.hpp"
#include "slabuq/raster.hpp"
#include "slabuq/segmenter.hpp"
#include "slabuq/stats.hpp"
#include "slabuq/surface.hpp"

namespace slabuq {

/// What the pooled distribution collects per trial: every estimate with its
/// bounds, or the mean-mask estimate alone.
enum class PoolingMode { mean_only, with_bounds };

enum class StopReason { converged, trial_cap };

struct PropagateConfig {
    SourceToggles sources;
    int mcd_samples = 20;
    double variance_tol = 1e-6; ///< |var_new - var_old| convergence threshold
    int min_trials = 50;        ///< trials before convergence checks begin
    int max_trials = 10000;
    std::uint64_t master_seed = 0;
    PoolingMode mode = PoolingMode::with_bounds;
    int station_count = 10;
    int threads = 1;

    void validate() const;
};

/// One trial's regression-rate estimate with its grown/shrunk-mask values.
struct TrialSample {
    double rate = 0.0;
    double rate_upper = 0.0;
    double rate_lower = 0.0;
};

/// Hook into a trial's per-frame intermediates (mean prediction and
/// composed uncertainty map), for diagnostics and tests.
struct FrameInspection {
    int trial_index = 0;
    int frame_index = 0;
    const ProbMap& mean;
    const UncMap& umask;
};
using FrameInspector = std::function<void(const FrameInspection&)>;

/// Executes one Monte-Carlo trial, fully determined by
/// (cfg.master_seed, trial_index):
///   1. draw the placement-angle and distortion percentages,
///   2. perturb every frame (angle shift first, then distortion),
///   3. run the dropout ensemble per frame,
///   4. draw the segmentation variance and compose the uncertainty maps,
///   5. track the surface and estimate the rate with its bounds.
/// The pixel density for the angle shift comes from the ensemble prediction
/// of the unperturbed first frame, re-estimated each trial; tracking
/// stations come from the trial's own first-frame mask.
TrialSample run_trial(const FrameSequence& seq, const SegmenterBackend& backend,
                      const PropagateConfig& cfg, int trial_index,
                      const FrameInspector& inspect = {});

/// Accumulated regression-rate distribution with streaming moments over the
/// pooled samples (three per trial in with_bounds mode, one in mean_only).
class RateDistribution {
public:
    explicit RateDistribution(PoolingMode mode = PoolingMode::with_bounds) : mode_(mode) {}

    void append(const TrialSample& trial);

    PoolingMode mode() const noexcept { return mode_; }
    std::size_t trial_count() const noexcept { return trials_.size(); }
    std::size_t sample_count() const noexcept { return pooled_.count(); }
    double mean() const noexcept { return pooled_.mean(); }
    /// Population variance of the pooled samples.
    double variance() const noexcept { return pooled_.variance_population(); }

    const std::vector<TrialSample>& trials() const noexcept { return trials_; }
    /// Materializes the pooled sample list in append order.
    std::vector<double> pooled_samples() const;

    StopReason stop_reason() const noexcept { return stop_reason_; }
    void set_stop_reason(StopReason r) noexcept { stop_reason_ = r; }

private:
    PoolingMode mode_;
    std::vector<TrialSample> trials_;
    RunningStats pooled_;
    StopReason stop_reason_ = StopReason::trial_cap;
};

/// Runs trials until the pooled variance settles (|var_new - var_old| <=
/// tol once at least min_trials are in) or max_trials is reached. Trials
/// are independent and may execute on cfg.threads workers; results merge in
/// trial order, so the outcome is identical for any thread count.
RateDistribution run(const FrameSequence& seq, const SegmenterBackend& backend,
                     const PropagateConfig& cfg);

struct DistributionSummary {
    std::size_t trial_count = 0;
    std::size_t sample_count = 0;
    double mean = 0.0;
    double variance = 0.0; ///< population convention
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    Histogram histogram;
    StopReason stop_reason = StopReason::trial_cap;
};

/// Histogram plus moments and 5/50/95 quantiles of the pooled samples.
/// Throws std::invalid_argument on an empty distribution.
DistributionSummary summarize(const RateDistribution& dist, int bins = 40);

/// The per-trial sample table exactly as the CLI writes it: a
/// "trial,rate,rate_upper,rate_lower" header and one row per trial with
/// doubles at full round-trip precision. Equal distributions serialize to
/// equal bytes.
std::string samples_csv(const RateDistribution& dist);

} // namespace slabuq
