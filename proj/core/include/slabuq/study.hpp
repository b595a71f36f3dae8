#pragma once

#include <cstdint>
#include <vector>

#include "slabuq/perturb.hpp"
#include "slabuq/raster.hpp"
#include "slabuq/segmenter.hpp"

namespace slabuq {

/// Source combinations of the standard study matrix. Case 0 is the
/// baseline with every source off; cases 1-7 cover all on/off patterns:
///   1 distortion, 2 angle, 3 distortion+angle, 4 segvar,
///   5 distortion+segvar, 6 angle+segvar, 7 all three.
/// Throws std::invalid_argument outside 0..7.
SourceToggles case_toggles(int case_id);

/// Pixels within Chebyshev distance band_px of the fuel/background edge
/// (fuel pixels with a background 4-neighbour). Image borders do not count
/// as edges.
BinaryMask boundary_band(const BinaryMask& mask, int band_px);

struct CaseStudyConfig {
    int case_id = 0;
    int samples = 100;  ///< perturbation draws per image
    int mcd_samples = 20;
    int band_px = 5;
    double fuel_length_cm = 8.069;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Boundary-band uncertainty values pooled over all samples of one image.
struct BandStudy {
    std::vector<double> values;
    double mean = 0.0;
};

/// Samples the case's enabled sources `samples` times, perturbs the image,
/// runs the dropout ensemble, and collects the uncertainty map (model
/// entropy, plus the segmentation-variance term when enabled) over the
/// boundary band of each sample's own mask. The ensemble's random streams
/// depend only on (seed, image_index, sample), never on the case, so runs
/// of different cases are paired draw-for-draw and comparable.
BandStudy case_study_image(const ImageFrame& image, const SegmenterBackend& backend,
                           const CaseStudyConfig& cfg, int image_index = 0);

} // namespace slabuq
