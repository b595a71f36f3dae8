#include "slabuq/study.hpp"

#include <stdexcept>

namespace slabuq {

SourceToggles case_toggles(int case_id) {
    SourceToggles t;
    switch (case_id) {
        case 0: break;
        case 1: t.distortion = true; break;
        case 2: t.placement_angle = true; break;
        case 3: t.distortion = t.placement_angle = true; break;
        case 4: t.segmentation_var = true; break;
        case 5: t.distortion = t.segmentation_var = true; break;
        case 6: t.placement_angle = t.segmentation_var = true; break;
        case 7: t.distortion = t.placement_angle = t.segmentation_var = true; break;
        default: throw std::invalid_argument("case_toggles: case must lie in 0..7");
    }
    return t;
}

BinaryMask boundary_band(const BinaryMask& mask, int band_px) {
    if (band_px < 0) throw std::invalid_argument("boundary_band: band_px must be >= 0");
    const int w = mask.width();
    const int h = mask.height();

    BinaryMask band(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            const bool edge = (x > 0 && !mask.at(x - 1, y)) || (x + 1 < w && !mask.at(x + 1, y)) ||
                              (y > 0 && !mask.at(x, y - 1)) || (y + 1 < h && !mask.at(x, y + 1));
            if (edge) band.at(x, y) = 1;
        }
    }
    // Chebyshev dilation, one ring per pass
    BinaryMask next(w, h, 0);
    for (int pass = 0; pass < band_px; ++pass) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                std::uint8_t v = band.at(x, y);
                for (int dy = -1; dy <= 1 && !v; ++dy) {
                    const int yy = y + dy;
                    if (yy < 0 || yy >= h) continue;
                    for (int dx = -1; dx <= 1 && !v; ++dx) {
                        const int xx = x + dx;
                        if (xx < 0 || xx >= w) continue;
                        v = band.at(xx, yy);
                    }
                }
                next.at(x, y) = v;
            }
        }
        std::swap(band, next);
    }
    return band;
}

void CaseStudyConfig::validate() const {
    case_toggles(case_id);
    if (samples < 1) throw std::invalid_argument("case study: samples must be >= 1");
    if (mcd_samples < 1) throw std::invalid_argument("case study: mcd_samples must be >= 1");
    if (band_px < 0) throw std::invalid_argument("case study: band_px must be >= 0");
    if (!(fuel_length_cm > 0.0)) throw std::invalid_argument("case study: bad fuel length");
}

BandStudy case_study_image(const ImageFrame& image, const SegmenterBackend& backend,
                           const CaseStudyConfig& cfg, int image_index) {
    cfg.validate();
    const SourceToggles toggles = case_toggles(cfg.case_id);
    const RngStream image_rng(cfg.seed, static_cast<std::uint64_t>(image_index));

    double density = 0.0;
    if (toggles.placement_angle) {
        McdResult ref =
            mcd_predict(backend, image, 0, cfg.mcd_samples, image_rng.substream(0));
        density = pixel_density(threshold_mask(ref.mean), cfg.fuel_length_cm);
    }

    BandStudy study;
    double sum = 0.0;
    for (int n = 0; n < cfg.samples; ++n) {
        const RngStream sample_rng = image_rng.substream(1 + static_cast<std::uint64_t>(n));
        RngStream draws = sample_rng.substream(0);
        PerturbationDraw draw = sample_draw(draws, toggles);

        ImageFrame frame = image;
        if (draw.angle_pct != 0.0) {
            frame = apply_angle_shift(frame, draw.angle_pct, density, cfg.fuel_length_cm);
        }
        if (draw.distortion_pct > 0.0) {
            RngStream distort_rng = sample_rng.substream(1);
            frame = apply_distortion(frame, draw.distortion_pct, distort_rng);
        }

        // ensemble stream is independent of the case, pairing samples
        // across cases draw-for-draw
        McdResult mcd =
            mcd_predict(backend, frame, 0, cfg.mcd_samples, sample_rng.substream(2));
        const UncMap umask = compose_umask(mcd.model_unc, mcd.mean, draw.segvar_pct);

        const BinaryMask band = boundary_band(threshold_mask(mcd.mean), cfg.band_px);
        for (int y = 0; y < band.height(); ++y) {
            for (int x = 0; x < band.width(); ++x) {
                if (!band.at(x, y)) continue;
                const double v = umask.at(x, y);
                study.values.push_back(v);
                sum += v;
            }
        }
    }
    study.mean = study.values.empty() ? 0.0 : sum / static_cast<double>(study.values.size());
    return study;
}

} // namespace slabuq
