#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <utility>

#include "slabuq/raster.hpp"
#include "slabuq/rng.hpp"

namespace slabuq {

/// Identifies one stochastic forward pass: which frame of the sequence,
/// which ensemble sample, and the random stream that drives it.
struct SampleContext {
    int frame_id = 0;
    int sample_index = 0;
    RngStream rng;
};

/// A stochastic pixel classifier. One call is one forward pass; the result
/// must be fully determined by (frame, ctx) and calls must be safe from
/// multiple threads at once.
class SegmenterBackend {
public:
    virtual ~SegmenterBackend() = default;
    virtual ProbMap predict_sample(const ImageFrame& frame, const SampleContext& ctx) const = 0;
};

/// Logistic classifier over three per-pixel features (centered intensity,
/// centered row position, centered 3x3 local mean) with feature-level
/// dropout. Each forward pass draws one keep/drop gate per feature, so the
/// sample maps vary the way a dropout ensemble does; with dropout_p = 0 the
/// backend is deterministic. It exists to exercise the ensemble and
/// uncertainty machinery, not to segment well.
class ReferenceSegmenter final : public SegmenterBackend {
public:
    struct Params {
        std::array<double, 3> weights{3.0, 1.5, 3.0};
        double bias = 0.0;
        double dropout_p = 0.5; ///< probability a feature gate closes
    };

    ReferenceSegmenter() = default;
    explicit ReferenceSegmenter(Params params);

    ProbMap predict_sample(const ImageFrame& frame, const SampleContext& ctx) const override;

private:
    Params params_;
};

/// Serves precomputed probability maps from disk, keyed by
/// (frame_id, sample_index) with the layout
///   <dir>/<frame_id>/<sample_index>.pmap
/// in the standard float32+sidecar format. Everything is loaded up front;
/// missing keys throw std::out_of_range at predict time. This is the bridge
/// for ingesting a real network's sampled outputs.
class PlaybackBackend final : public SegmenterBackend {
public:
    explicit PlaybackBackend(const std::filesystem::path& dir);

    ProbMap predict_sample(const ImageFrame& frame, const SampleContext& ctx) const override;

    std::size_t map_count() const noexcept { return maps_.size(); }

private:
    std::map<std::pair<int, int>, ProbMap> maps_;
    std::filesystem::path dir_;
};

/// Dropout-ensemble aggregate for one frame.
struct McdResult {
    ProbMap mean;           ///< per-pixel average of the sample maps
    UncMap model_unc;       ///< predictive entropy of the mean, in nats
    int samples_used = 0;
};

/// Runs `samples` stochastic passes and averages them in sample order
/// (float64 accumulation), then attaches the entropy map of the mean.
/// Sample t draws from rng.substream(t). Throws std::invalid_argument for
/// samples < 1.
McdResult mcd_predict(const SegmenterBackend& backend, const ImageFrame& frame, int frame_id,
                      int samples, const RngStream& rng);

/// Binary predictive entropy per pixel, natural log:
///   -[p ln p + (1-p) ln(1-p)], with 0 ln 0 = 0.
/// Maximum ln 2 at p = 0.5, zero at p in {0, 1}.
UncMap entropy_map(const ProbMap& p);

/// Complete uncertainty map: model entropy plus the manual-segmentation
/// variance scaled by the fuel probability,
///   u + p_fuel * (segvar_pct / 100).
/// Throws std::invalid_argument on dimension mismatch or negative pct.
UncMap compose_umask(const UncMap& model_unc, const ProbMap& fuel_prob, double segvar_pct);

} // namespace slabuq
