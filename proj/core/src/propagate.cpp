#include "slabuq/propagate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace slabuq {

void PropagateConfig::validate() const {
    if (mcd_samples < 1) throw std::invalid_argument("propagate: mcd_samples must be >= 1");
    if (!(variance_tol > 0.0)) throw std::invalid_argument("propagate: tol must be positive");
    if (min_trials < 2) throw std::invalid_argument("propagate: min_trials must be >= 2");
    if (max_trials < min_trials) {
        throw std::invalid_argument("propagate: max_trials must be >= min_trials");
    }
    if (station_count < 1) throw std::invalid_argument("propagate: station_count must be >= 1");
    if (threads < 1) throw std::invalid_argument("propagate: threads must be >= 1");
}

namespace {

// trial-local substream indices
enum : std::uint64_t { kDraws = 0, kDensity = 1, kPerturb = 2, kMcd = 3 };

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

TrialSample run_trial(const FrameSequence& seq, const SegmenterBackend& backend,
                      const PropagateConfig& cfg, int trial_index,
                      const FrameInspector& inspect) {
    seq.validate();
    cfg.validate();

    const RngStream trial_rng(cfg.master_seed, static_cast<std::uint64_t>(trial_index));
    RngStream draws = trial_rng.substream(kDraws);

    const double angle_pct = cfg.sources.placement_angle
                                 ? draws.uniform(bounds::angle_lo, bounds::angle_hi)
                                 : 0.0;
    const double distortion_pct = cfg.sources.distortion
                                      ? draws.uniform(bounds::distortion_lo, bounds::distortion_hi)
                                      : 0.0;

    double density = 0.0;
    if (angle_pct != 0.0) {
        McdResult ref = mcd_predict(backend, seq.frames.front(), 0, cfg.mcd_samples,
                                    trial_rng.substream(kDensity));
        density = pixel_density(threshold_mask(ref.mean), seq.fuel_length_cm);
    }

    const int n = static_cast<int>(seq.frames.size());
    const RngStream perturb_root = trial_rng.substream(kPerturb);
    const RngStream mcd_root = trial_rng.substream(kMcd);

    std::vector<ProbMap> means;
    std::vector<UncMap> model_uncs;
    means.reserve(n);
    model_uncs.reserve(n);
    for (int k = 0; k < n; ++k) {
        ImageFrame frame = seq.frames[k];
        if (angle_pct != 0.0) {
            frame = apply_angle_shift(frame, angle_pct, density, seq.fuel_length_cm);
        }
        if (distortion_pct > 0.0) {
            RngStream frame_rng = perturb_root.substream(static_cast<std::uint64_t>(k));
            frame = apply_distortion(frame, distortion_pct, frame_rng);
        }
        McdResult mcd = mcd_predict(backend, frame, k, cfg.mcd_samples,
                                    mcd_root.substream(static_cast<std::uint64_t>(k)));
        means.push_back(std::move(mcd.mean));
        model_uncs.push_back(std::move(mcd.model_unc));
    }

    const double segvar_pct = cfg.sources.segmentation_var
                                  ? draws.uniform(bounds::segvar_lo, bounds::segvar_hi)
                                  : 0.0;

    std::vector<UncMap> umasks;
    umasks.reserve(n);
    for (int k = 0; k < n; ++k) {
        umasks.push_back(compose_umask(model_uncs[k], means[k], segvar_pct));
        if (inspect) inspect(FrameInspection{trial_index, k, means[k], umasks[k]});
    }

    TrackConfig track;
    track.stations = default_stations(threshold_mask(means.front()), cfg.station_count);
    track.mm_per_pixel = seq.mm_per_pixel;
    track.dt_s = seq.dt_s;

    const RateEstimate est = rate_with_bounds(means, umasks, track);
    return TrialSample{est.rate, est.rate_upper, est.rate_lower};
}

void RateDistribution::append(const TrialSample& trial) {
    trials_.push_back(trial);
    pooled_.add(trial.rate);
    if (mode_ == PoolingMode::with_bounds) {
        pooled_.add(trial.rate_upper);
        pooled_.add(trial.rate_lower);
    }
}

std::vector<double> RateDistribution::pooled_samples() const {
    std::vector<double> out;
    out.reserve(sample_count());
    for (const auto& t : trials_) {
        out.push_back(t.rate);
        if (mode_ == PoolingMode::with_bounds) {
            out.push_back(t.rate_upper);
            out.push_back(t.rate_lower);
        }
    }
    return out;
}

RateDistribution run(const FrameSequence& seq, const SegmenterBackend& backend,
                     const PropagateConfig& cfg) {
    seq.validate();
    cfg.validate();

    RateDistribution dist(cfg.mode);
    double prev_var = 0.0;
    bool converged = false;
    int issued = 0;
    std::vector<TrialSample> wave;

    // Trials run in waves; merging stays in trial order so the stopping
    // trial does not depend on the thread count.
    while (!converged && issued < cfg.max_trials) {
        const int count = std::min(cfg.threads, cfg.max_trials - issued);
        wave.assign(static_cast<std::size_t>(count), TrialSample{});
        parallel_for(count, cfg.threads,
                     [&](int i) { wave[i] = run_trial(seq, backend, cfg, issued + i); });
        for (int i = 0; i < count && !converged; ++i) {
            dist.append(wave[i]);
            const double var = dist.variance();
            if (static_cast<int>(dist.trial_count()) >= cfg.min_trials &&
                std::abs(var - prev_var) <= cfg.variance_tol) {
                converged = true;
            }
            prev_var = var;
        }
        issued += count;
    }
    dist.set_stop_reason(converged ? StopReason::converged : StopReason::trial_cap);
    return dist;
}

std::string samples_csv(const RateDistribution& dist) {
    std::string out = "trial,rate,rate_upper,rate_lower\n";
    char row[160];
    for (std::size_t i = 0; i < dist.trials().size(); ++i) {
        const auto& t = dist.trials()[i];
        std::snprintf(row, sizeof(row), "%zu,%.17g,%.17g,%.17g\n", i, t.rate, t.rate_upper,
                      t.rate_lower);
        out += row;
    }
    return out;
}

DistributionSummary summarize(const RateDistribution& dist, int bins) {
    if (dist.sample_count() == 0) throw std::invalid_argument("summarize: empty distribution");

    std::vector<double> samples = dist.pooled_samples();
    std::sort(samples.begin(), samples.end());

    DistributionSummary s;
    s.trial_count = dist.trial_count();
    s.sample_count = dist.sample_count();
    s.mean = dist.mean();
    s.variance = dist.variance();
    s.q05 = quantile_sorted(samples, 0.05);
    s.q50 = quantile_sorted(samples, 0.50);
    s.q95 = quantile_sorted(samples, 0.95);
    s.histogram = Histogram::build(samples, bins);
    s.stop_reason = dist.stop_reason();
    return s;
}

} // namespace slabuq
