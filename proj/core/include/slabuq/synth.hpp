#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slabuq/raster.hpp"

namespace slabuq {

/// Visual clutter density of the rendered burn.
enum class Saturation { low, mid, high };

Saturation saturation_from_string(const std::string& s);
std::string to_string(Saturation s);

/// Synthetic slab-burn sequence with a known, constant recession rate.
struct SynthConfig {
    double rate_mm_s = 0.75;        ///< true regression rate
    int n_frames = 20;
    double dt_s = 0.32;
    double initial_height_mm = 5.6; ///< slab height at frame 0
    double mm_per_pixel = 0.1;      ///< isotropic pixel scale
    double slant_deg = 45.0;        ///< leading-edge slant
    Saturation saturation = Saturation::mid;
    std::uint64_t noise_seed = 0;
    int width = 512;
    int height = 64;

    /// Throws std::invalid_argument when the config is unusable, including
    /// a slab that would vanish before the last frame.
    void validate() const;
};

struct SynthResult {
    FrameSequence sequence;
    std::vector<BinaryMask> ground_truth; ///< exact rendered fuel regions
};

/// Flat-top slab height in pixels at frame k: round((h0 - r k dt) / scale).
int surface_height_px(const SynthConfig& cfg, int frame);

/// Renders the sequence: a bright slab (intensity 210) on black background
/// whose whole profile recedes by the frame-k pixel drop, a slanted leading
/// edge, and bright clutter speckles above the surface. Clutter keeps a
/// 2-pixel clearance from the slab so the ground truth stays unambiguous,
/// and its placement is keyed per (frame, pixel) so raising the saturation
/// level with the same seed only ever adds speckles.
SynthResult generate_sequence(const SynthConfig& cfg);

} // namespace slabuq
