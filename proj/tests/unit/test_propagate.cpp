#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "slabuq/io.hpp"
#include "slabuq/propagate.hpp"
#include "slabuq/synth.hpp"

using namespace slabuq;

namespace {

SynthConfig small_synth() {
    SynthConfig cfg;
    cfg.n_frames = 6;
    cfg.width = 256;
    cfg.height = 48;
    cfg.initial_height_mm = 4.0;
    cfg.noise_seed = 21;
    return cfg;
}

PropagateConfig fast_config() {
    PropagateConfig cfg;
    cfg.mcd_samples = 4;
    cfg.min_trials = 4;
    cfg.max_trials = 12;
    cfg.master_seed = 77;
    return cfg;
}

double brute_force_population_variance(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size());
}

} // namespace

TEST_CASE("distribution pooling bookkeeping") {
    TrialSample t{1.0, 1.5, 0.5};

    RateDistribution bounds(PoolingMode::with_bounds);
    bounds.append(t);
    bounds.append(t);
    CHECK(bounds.trial_count() == 2);
    CHECK(bounds.sample_count() == 6);

    RateDistribution mean_only(PoolingMode::mean_only);
    mean_only.append(t);
    mean_only.append(t);
    CHECK(mean_only.sample_count() == 2);
    CHECK(mean_only.mean() == doctest::Approx(1.0));
}

TEST_CASE("streaming moments agree with brute force over pooled samples") {
    RngStream rng(55, 0);
    RateDistribution dist(PoolingMode::with_bounds);
    for (int i = 0; i < 257; ++i) {
        double r = rng.uniform(0.5, 1.0);
        dist.append(TrialSample{r, r + rng.next_double() * 0.1, r - rng.next_double() * 0.1});
    }
    auto pooled = dist.pooled_samples();
    CHECK(pooled.size() == 3 * 257);
    CHECK(std::abs(dist.variance() - brute_force_population_variance(pooled)) < 1e-12);
}

TEST_CASE("run_trial is deterministic in (seed, trial index)") {
    auto synth = generate_sequence(small_synth());
    ReferenceSegmenter backend;
    auto cfg = fast_config();

    auto a = run_trial(synth.sequence, backend, cfg, 5);
    auto b = run_trial(synth.sequence, backend, cfg, 5);
    CHECK(a.rate == b.rate);
    CHECK(a.rate_upper == b.rate_upper);
    CHECK(a.rate_lower == b.rate_lower);

    auto c = run_trial(synth.sequence, backend, cfg, 6);
    CHECK((c.rate != a.rate || c.rate_upper != a.rate_upper || c.rate_lower != a.rate_lower));
}

TEST_CASE("deterministic backend with all sources off converges immediately") {
    auto synth = generate_sequence(small_synth());
    ReferenceSegmenter::Params params;
    params.dropout_p = 0.0;
    ReferenceSegmenter backend(params);
    auto cfg = fast_config();
    cfg.mode = PoolingMode::mean_only;

    auto dist = run(synth.sequence, backend, cfg);
    CHECK(dist.stop_reason() == StopReason::converged);
    CHECK(static_cast<int>(dist.trial_count()) == cfg.min_trials);
    CHECK(dist.variance() == 0.0); // every trial is identical: a point mass
    for (const auto& t : dist.trials()) {
        CHECK(t.rate == dist.trials().front().rate);
        CHECK(t.rate_upper == dist.trials().front().rate_upper);
        CHECK(t.rate_lower == dist.trials().front().rate_lower);
    }
}

TEST_CASE("thread count does not change the result") {
    auto synth = generate_sequence(small_synth());
    ReferenceSegmenter backend;
    auto cfg = fast_config();
    cfg.sources = SourceToggles{true, true, true};

    cfg.threads = 1;
    auto serial = run(synth.sequence, backend, cfg);
    cfg.threads = 4;
    auto parallel = run(synth.sequence, backend, cfg);

    REQUIRE(serial.trial_count() == parallel.trial_count());
    for (std::size_t i = 0; i < serial.trial_count(); ++i) {
        CHECK(serial.trials()[i].rate == parallel.trials()[i].rate);
        CHECK(serial.trials()[i].rate_upper == parallel.trials()[i].rate_upper);
        CHECK(serial.trials()[i].rate_lower == parallel.trials()[i].rate_lower);
    }
    CHECK(samples_csv(serial) == samples_csv(parallel));
}

TEST_CASE("segmentation variance alone keeps mask inclusion frame by frame") {
    auto synth = generate_sequence(small_synth());
    ReferenceSegmenter backend;
    auto cfg = fast_config();
    cfg.sources.segmentation_var = true;

    int checked = 0;
    run_trial(synth.sequence, backend, cfg, 0, [&](const FrameInspection& fi) {
        auto grown = grow_mask(fi.mean, fi.umask);
        auto shrunk = shrink_mask(fi.mean, fi.umask);
        auto base = threshold_mask(fi.mean);
        for (std::size_t i = 0; i < base.values().size(); ++i) {
            if (shrunk.values()[i]) REQUIRE(base.values()[i]);
            if (base.values()[i]) REQUIRE(grown.values()[i]);
        }
        ++checked;
    });
    CHECK(checked == 6);
}

TEST_CASE("perfect playback with sources off recovers the true rate") {
    namespace fs = std::filesystem;
    auto scfg = small_synth();
    auto synth = generate_sequence(scfg);

    auto dir = fs::temp_directory_path() / "slabuq_playback_run";
    fs::remove_all(dir);
    const int T = 3;
    for (int k = 0; k < scfg.n_frames; ++k) {
        fs::create_directories(dir / std::to_string(k));
        ProbMap p(scfg.width, scfg.height);
        for (std::size_t i = 0; i < p.values().size(); ++i) {
            p.values()[i] = synth.ground_truth[k].values()[i] ? 1.0 : 0.0;
        }
        for (int t = 0; t < T; ++t) {
            save_probmap(p, dir / std::to_string(k) / (std::to_string(t) + ".pmap"));
        }
    }

    PlaybackBackend backend(dir);
    auto cfg = fast_config();
    cfg.mcd_samples = T;

    auto dist = run(synth.sequence, backend, cfg);
    CHECK(dist.stop_reason() == StopReason::converged);
    CHECK(dist.variance() == 0.0);
    CHECK(std::abs(dist.mean() - scfg.rate_mm_s) / scfg.rate_mm_s < 0.05);
    // exact ground-truth masks make the bounds collapse onto the rate
    CHECK(dist.trials().front().rate_upper == dist.trials().front().rate);
    CHECK(dist.trials().front().rate_lower == dist.trials().front().rate);
}

TEST_CASE("summarize") {
    RateDistribution dist(PoolingMode::mean_only);
    for (int i = 0; i < 10; ++i) dist.append(TrialSample{1.0, 1.0, 1.0});
    auto s = summarize(dist, 8);
    CHECK(s.mean == doctest::Approx(1.0));
    CHECK(s.variance == 0.0);
    CHECK(s.q05 == 1.0);
    CHECK(s.q50 == 1.0);
    CHECK(s.q95 == 1.0);
    std::size_t total = 0;
    for (auto c : s.histogram.counts) total += c;
    CHECK(total == s.sample_count);

    SUBCASE("empty distribution rejected") {
        RateDistribution empty;
        CHECK_THROWS_AS(summarize(empty, 8), std::invalid_argument);
    }
}

TEST_CASE("config validation") {
    PropagateConfig cfg;
    cfg.variance_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = PropagateConfig{};
    cfg.min_trials = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = PropagateConfig{};
    cfg.max_trials = 10;
    cfg.min_trials = 20;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
