#include "slabuq/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slabuq/rng.hpp"

namespace slabuq {

namespace {

constexpr std::uint8_t kFuelIntensity = 210;

double clutter_density(Saturation s) {
    switch (s) {
        case Saturation::low: return 0.02;
        case Saturation::mid: return 0.06;
        case Saturation::high: return 0.15;
    }
    throw std::invalid_argument("unknown saturation level");
}

} // namespace

Saturation saturation_from_string(const std::string& s) {
    if (s == "low") return Saturation::low;
    if (s == "mid") return Saturation::mid;
    if (s == "high") return Saturation::high;
    throw std::invalid_argument("saturation must be one of: low, mid, high");
}

std::string to_string(Saturation s) {
    switch (s) {
        case Saturation::low: return "low";
        case Saturation::mid: return "mid";
        case Saturation::high: return "high";
    }
    throw std::invalid_argument("unknown saturation level");
}

void SynthConfig::validate() const {
    if (width <= 0 || height <= 0) throw std::invalid_argument("synth: bad dimensions");
    if (n_frames < 2) throw std::invalid_argument("synth: need at least 2 frames");
    if (!(dt_s > 0.0)) throw std::invalid_argument("synth: dt must be positive");
    if (!(mm_per_pixel > 0.0)) throw std::invalid_argument("synth: mm_per_pixel must be positive");
    if (!(rate_mm_s >= 0.0)) throw std::invalid_argument("synth: rate must be nonnegative");
    if (!(slant_deg > 0.0 && slant_deg <= 90.0)) {
        throw std::invalid_argument("synth: slant must lie in (0, 90] degrees");
    }
    if (!(initial_height_mm > 0.0)) throw std::invalid_argument("synth: bad initial height");
    if (!(initial_height_mm - rate_mm_s * dt_s * (n_frames - 1) > 0.0)) {
        throw std::invalid_argument("synth: fuel would vanish before the last frame");
    }
    if (initial_height_mm / mm_per_pixel > height) {
        throw std::invalid_argument("synth: slab taller than the frame");
    }
}

int surface_height_px(const SynthConfig& cfg, int frame) {
    const double h_mm = cfg.initial_height_mm - cfg.rate_mm_s * cfg.dt_s * frame;
    return static_cast<int>(std::llround(h_mm / cfg.mm_per_pixel));
}

SynthResult generate_sequence(const SynthConfig& cfg) {
    cfg.validate();

    const int w = cfg.width;
    const int h = cfg.height;
    const int margin = static_cast<int>(std::lround(0.05 * w));
    const int col_left = margin;
    const int col_right = w - 1 - margin;
    const int h0_px = surface_height_px(cfg, 0);
    const double slope = std::tan(cfg.slant_deg * std::numbers::pi / 180.0);

    // initial per-column fuel height: slanted leading edge, then flat top
    std::vector<int> profile0(w, 0);
    for (int x = col_left; x <= col_right; ++x) {
        const int ramp = static_cast<int>(std::lround((x - col_left + 1) * slope));
        profile0[x] = std::min(h0_px, std::max(0, ramp));
    }

    const double density = clutter_density(cfg.saturation);

    SynthResult result;
    result.sequence.dt_s = cfg.dt_s;
    result.sequence.mm_per_pixel = cfg.mm_per_pixel;
    result.sequence.fuel_length_cm = (col_right - col_left + 1) * cfg.mm_per_pixel / 10.0;
    result.sequence.frames.reserve(cfg.n_frames);
    result.ground_truth.reserve(cfg.n_frames);

    std::vector<int> profile(w, 0);
    for (int k = 0; k < cfg.n_frames; ++k) {
        const int drop = h0_px - surface_height_px(cfg, k);
        for (int x = 0; x < w; ++x) profile[x] = std::max(0, profile0[x] - drop);

        ImageFrame frame(w, h, 0);
        BinaryMask mask(w, h, 0);
        for (int x = 0; x < w; ++x) {
            for (int y = h - profile[x]; y < h; ++y) {
                mask.at(x, y) = 1;
                frame.set_pixel(x, y, kFuelIntensity, kFuelIntensity, kFuelIntensity);
            }
        }

        // clutter above the surface, >= 2 px clear of any fuel pixel
        RngStream frame_rng(cfg.noise_seed, static_cast<std::uint64_t>(k));
        for (int x = 0; x < w; ++x) {
            int ceiling = h; // rows strictly above all nearby fuel tops
            for (int dx = -2; dx <= 2; ++dx) {
                const int xx = std::clamp(x + dx, 0, w - 1);
                ceiling = std::min(ceiling, h - profile[xx]);
            }
            const int max_row = ceiling - 3; // leaves a 2-row gap
            for (int y = 0; y <= max_row; ++y) {
                RngStream px_rng =
                    frame_rng.substream(static_cast<std::uint64_t>(y) * w + x);
                if (px_rng.next_double() < density) {
                    const auto v = static_cast<std::uint8_t>(160.0 + px_rng.next_double() * 95.0);
                    frame.set_pixel(x, y, v, v, v);
                }
            }
        }

        result.sequence.frames.push_back(std::move(frame));
        result.ground_truth.push_back(std::move(mask));
    }
    return result;
}

} // namespace slabuq
