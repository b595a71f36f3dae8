#include <doctest.h>

#include <cmath>

#include "slabuq/rng.hpp"
#include "slabuq/surface.hpp"
#include "slabuq/synth.hpp"

using namespace slabuq;

TEST_CASE("extract_heights") {
    TrackConfig cfg;
    cfg.stations = {2, 5};
    cfg.mm_per_pixel = 0.1;

    SUBCASE("full column") {
        BinaryMask mask(8, 64, 1);
        auto h = extract_heights(mask, cfg);
        CHECK(h[0] == doctest::Approx(6.4));
        CHECK(h[1] == doctest::Approx(6.4));
    }
    SUBCASE("empty station reads zero") {
        BinaryMask mask(8, 64, 0);
        for (int y = 10; y < 20; ++y) mask.at(2, y) = 1;
        auto h = extract_heights(mask, cfg);
        CHECK(h[0] == doctest::Approx(1.0));
        CHECK(h[1] == 0.0);
    }
    SUBCASE("matches the synthetic ground truth") {
        SynthConfig scfg;
        auto synth = generate_sequence(scfg);
        TrackConfig tc;
        tc.stations = default_stations(synth.ground_truth.front());
        tc.mm_per_pixel = scfg.mm_per_pixel;
        for (int k = 0; k < scfg.n_frames; ++k) {
            auto h = extract_heights(synth.ground_truth[k], tc);
            const int top = surface_height_px(scfg, k);
            for (std::size_t l = 0; l < h.size(); ++l) {
                // every station's initial column height recedes with the top
                const int drop = surface_height_px(scfg, 0) - top;
                auto h0 = extract_heights(synth.ground_truth[0], tc);
                const double expected =
                    std::max(0.0, h0[l] - drop * scfg.mm_per_pixel);
                CHECK(h[l] == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
    SUBCASE("station outside the frame is rejected") {
        BinaryMask mask(8, 8, 1);
        TrackConfig bad;
        bad.stations = {9};
        CHECK_THROWS_AS(extract_heights(mask, bad), std::invalid_argument);
    }
}

TEST_CASE("default_stations") {
    BinaryMask mask(512, 64, 0);
    for (int x = 26; x <= 485; ++x) mask.at(x, 60) = 1;
    auto stations = default_stations(mask, 10);
    CHECK(stations.size() == 10);
    CHECK(stations.front() >= 26 + 40); // inside the central 80%
    CHECK(stations.back() <= 485 - 40);
    for (std::size_t i = 1; i < stations.size(); ++i) CHECK(stations[i] > stations[i - 1]);

    SUBCASE("empty mask falls back to the full width") {
        BinaryMask empty(100, 10, 0);
        auto s = default_stations(empty, 5);
        CHECK(s.size() == 5);
        CHECK(s.front() >= 0);
        CHECK(s.back() < 100);
    }
}

TEST_CASE("enforce_monotonic") {
    SUBCASE("worked example") {
        HeightSeries h{{10.0}, {11.0}, {9.0}};
        auto m = enforce_monotonic(h);
        CHECK(m[0][0] == 10.0);
        CHECK(m[1][0] == 10.0);
        CHECK(m[2][0] == 9.0);
    }
    SUBCASE("non-increasing input unchanged") {
        HeightSeries h{{5.0, 4.0}, {4.0, 4.0}, {3.0, 2.0}};
        CHECK(enforce_monotonic(h) == h);
    }
    SUBCASE("constant input unchanged") {
        HeightSeries h{{2.0}, {2.0}, {2.0}};
        CHECK(enforce_monotonic(h) == h);
    }
    SUBCASE("idempotent and pointwise <= input") {
        RngStream rng(4, 4);
        HeightSeries h(12, std::vector<double>(3));
        for (auto& row : h)
            for (auto& v : row) v = rng.uniform(0.0, 10.0);
        auto once = enforce_monotonic(h);
        CHECK(enforce_monotonic(once) == once);
        for (std::size_t k = 0; k < h.size(); ++k)
            for (std::size_t l = 0; l < h[k].size(); ++l) CHECK(once[k][l] <= h[k][l]);
        // non-increasing per station
        for (std::size_t k = 1; k < once.size(); ++k)
            for (std::size_t l = 0; l < once[k].size(); ++l) CHECK(once[k][l] <= once[k - 1][l]);
    }
}

TEST_CASE("localized_rates") {
    SUBCASE("constant recession arithmetic") {
        HeightSeries h{{11.2}, {10.88}};
        auto r = localized_rates(h, 0.32);
        CHECK(r.size() == 1);
        CHECK(r[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant heights give zero") {
        HeightSeries h{{3.0, 3.0}, {3.0, 3.0}};
        for (const auto& row : localized_rates(h, 0.32))
            for (double v : row) CHECK(v == 0.0);
    }
    SUBCASE("needs two frames and positive dt") {
        CHECK_THROWS_AS(localized_rates({{1.0}}, 0.32), std::invalid_argument);
        CHECK_THROWS_AS(localized_rates({{1.0}, {0.5}}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("total_rate") {
    SUBCASE("all ones") { CHECK(total_rate({{1.0, 1.0}, {1.0, 1.0}}) == 1.0); }
    SUBCASE("symmetric pair") { CHECK(total_rate({{0.5, 1.5}}) == doctest::Approx(1.0)); }
    SUBCASE("random matrix equals brute force") {
        RngStream rng(6, 0);
        RateMatrix m(7, std::vector<double>(5));
        double sum = 0.0;
        for (auto& row : m)
            for (auto& v : row) {
                v = rng.uniform(-1.0, 2.0);
                sum += v;
            }
        CHECK(total_rate(m) == doctest::Approx(sum / 35.0).epsilon(1e-12));
    }
    SUBCASE("empty rejected") { CHECK_THROWS_AS(total_rate({}), std::invalid_argument); }
}

TEST_CASE("grow and shrink masks") {
    ProbMap mean(2, 1);
    UncMap unc(2, 1, 0.06);
    mean.at(0, 0) = 0.45;
    mean.at(1, 0) = 0.55;

    auto grown = grow_mask(mean, unc);
    auto shrunk = shrink_mask(mean, unc);
    CHECK(grown.at(0, 0) == 1);  // 0.45 + 0.06 >= 0.5 flips to fuel
    CHECK(grown.at(1, 0) == 1);
    CHECK(shrunk.at(0, 0) == 0);
    CHECK(shrunk.at(1, 0) == 0); // 0.55 - 0.06 < 0.5 flips to background

    SUBCASE("zero uncertainty collapses to plain thresholding") {
        UncMap zero(2, 1, 0.0);
        auto base = threshold_mask(mean);
        CHECK(grow_mask(mean, zero).values() == base.values());
        CHECK(shrink_mask(mean, zero).values() == base.values());
    }
    SUBCASE("inclusion holds on random maps") {
        RngStream rng(15, 0);
        ProbMap p(64, 16);
        UncMap u(64, 16);
        for (auto& v : p.values()) v = rng.next_double();
        for (auto& v : u.values()) v = 0.7 * rng.next_double();
        auto g = grow_mask(p, u);
        auto s = shrink_mask(p, u);
        auto t = threshold_mask(p);
        for (std::size_t i = 0; i < g.values().size(); ++i) {
            if (s.values()[i]) CHECK(t.values()[i]);
            if (t.values()[i]) CHECK(g.values()[i]);
        }
    }
    SUBCASE("dimension mismatch rejected") {
        UncMap wrong(3, 1, 0.0);
        CHECK_THROWS_AS(grow_mask(mean, wrong), std::invalid_argument);
        CHECK_THROWS_AS(shrink_mask(mean, wrong), std::invalid_argument);
    }
}

TEST_CASE("rate_with_bounds") {
    SynthConfig scfg;
    auto synth = generate_sequence(scfg);

    // build exact probability maps from the ground truth
    std::vector<ProbMap> means;
    std::vector<UncMap> zeros;
    for (const auto& mask : synth.ground_truth) {
        ProbMap p(mask.width(), mask.height());
        for (std::size_t i = 0; i < p.values().size(); ++i) {
            p.values()[i] = mask.values()[i] ? 1.0 : 0.0;
        }
        means.push_back(std::move(p));
        zeros.emplace_back(mask.width(), mask.height(), 0.0);
    }

    TrackConfig cfg;
    cfg.stations = default_stations(synth.ground_truth.front());
    cfg.mm_per_pixel = scfg.mm_per_pixel;
    cfg.dt_s = scfg.dt_s;

    auto est = rate_with_bounds(means, zeros, cfg);

    SUBCASE("zero uncertainty collapses the bounds") {
        CHECK(est.rate_upper == est.rate);
        CHECK(est.rate_lower == est.rate);
    }
    SUBCASE("perfect playback recovers the true rate to quantization") {
        // telescoped: (56 px - 10 px) * 0.1 mm / (19 * 0.32 s)
        CHECK(est.rate == doctest::Approx(4.6 / 6.08).epsilon(1e-12));
        CHECK(std::abs(est.rate - scfg.rate_mm_s) / scfg.rate_mm_s < 0.05);
    }
    SUBCASE("per-station rates are all nonnegative after the clamp") {
        for (const auto& row : est.per_station)
            for (double v : row) CHECK(v >= 0.0);
    }
    SUBCASE("length mismatch rejected") {
        zeros.pop_back();
        CHECK_THROWS_AS(rate_with_bounds(means, zeros, cfg), std::invalid_argument);
    }
}

TEST_CASE("mean_rate_excluding_burnout skips exhausted stations") {
    // station 1 burns out at frame 2; its zero-height intervals are skipped
    HeightSeries h{{2.0, 1.0}, {1.0, 0.5}, {0.5, 0.0}, {0.25, 0.0}};
    auto m = enforce_monotonic(h);
    const double dt = 0.5;
    // included intervals: s0 all three, s1 first two
    const double expected = ((1.0 + 0.5 + 0.25) / dt + (0.5 + 0.5) / dt) / 5.0;
    CHECK(mean_rate_excluding_burnout(m, dt) == doctest::Approx(expected).epsilon(1e-12));
}
