#include "slabuq/perturb.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace slabuq {

PerturbationDraw sample_draw(RngStream& rng, const SourceToggles& enabled) {
    PerturbationDraw draw;
    if (enabled.placement_angle) {
        draw.angle_pct = rng.uniform(bounds::angle_lo, bounds::angle_hi);
    }
    if (enabled.distortion) {
        draw.distortion_pct = rng.uniform(bounds::distortion_lo, bounds::distortion_hi);
    }
    if (enabled.segmentation_var) {
        draw.segvar_pct = rng.uniform(bounds::segvar_lo, bounds::segvar_hi);
    }
    return draw;
}

double GeometrySpec::beta_rad() const {
    return std::atan(fuel_length_cm / (2.0 * camera_distance_cm));
}

void GeometrySpec::validate() const {
    if (!(fuel_length_cm > 0.0) || !(camera_distance_cm > 0.0)) {
        throw std::invalid_argument("GeometrySpec: lengths must be positive");
    }
}

double placement_error_pct(double gamma_deg, const GeometrySpec& geom) {
    geom.validate();
    if (!(std::abs(gamma_deg) < 90.0)) {
        throw std::invalid_argument("placement_error_pct: |gamma| must be < 90 degrees");
    }
    const double g = gamma_deg * std::numbers::pi / 180.0;
    return 100.0 * (std::cos(g) + std::tan(geom.beta_rad()) * std::sin(g) - 1.0);
}

ImageFrame apply_distortion(const ImageFrame& frame, double pct, RngStream& rng) {
    if (!(pct >= 0.0 && pct <= 100.0)) {
        throw std::invalid_argument("apply_distortion: pct must lie in [0, 100]");
    }
    ImageFrame out = frame;
    if (pct == 0.0) return out;
    const double p = pct / 100.0;
    auto& data = out.data();
    const std::size_t pixels = data.size() / ImageFrame::kChannels;
    for (std::size_t i = 0; i < pixels; ++i) {
        if (rng.bernoulli(p)) {
            data[3 * i] = 0;
            data[3 * i + 1] = 0;
            data[3 * i + 2] = 0;
        }
    }
    return out;
}

double pixel_density(const BinaryMask& mask, double fuel_length_cm) {
    if (!(fuel_length_cm > 0.0)) {
        throw std::invalid_argument("pixel_density: fuel length must be positive");
    }
    int first = -1, last = -1;
    for (int x = 0; x < mask.width(); ++x) {
        for (int y = 0; y < mask.height(); ++y) {
            if (mask.at(x, y)) {
                if (first < 0) first = x;
                last = x;
                break;
            }
        }
    }
    if (first < 0) throw std::invalid_argument("pixel_density: mask has no fuel pixels");
    return static_cast<double>(last - first + 1) / fuel_length_cm;
}

ShiftGeometry shift_geometry(double angle_pct, double fuel_length_cm,
                             double density_px_per_cm, int width) {
    ShiftGeometry geo;
    geo.mid = width / 2;
    const double error_cm = angle_pct / 100.0 * fuel_length_cm;
    geo.shift_px = error_cm * density_px_per_cm;
    const double half = std::abs(geo.shift_px) / 2.0;
    geo.loc1 = static_cast<int>(std::floor(geo.mid - half));
    geo.loc2 = static_cast<int>(std::floor(geo.mid + half));
    return geo;
}

ImageFrame apply_angle_shift(const ImageFrame& frame, double angle_pct,
                             double density_px_per_cm, double fuel_length_cm) {
    if (angle_pct == 0.0) return frame;
    const int width = frame.width();
    const int height = frame.height();
    const ShiftGeometry geo = shift_geometry(angle_pct, fuel_length_cm, density_px_per_cm, width);
    const int strip = geo.strip_width();
    if (strip == 0) return frame;
    if (geo.loc1 < 0 || geo.loc2 > width || (angle_pct > 0.0 && geo.mid + strip > width)) {
        throw std::domain_error("apply_angle_shift: strip escapes the frame");
    }

    constexpr int C = ImageFrame::kChannels;
    ImageFrame out(width, height);
    auto copy_cols = [&](int dst_x, int src_x, int n, int row) {
        if (n <= 0) return;
        std::memcpy(out.data().data() + (static_cast<std::size_t>(row) * width + dst_x) * C,
                    frame.data().data() + (static_cast<std::size_t>(row) * width + src_x) * C,
                    static_cast<std::size_t>(n) * C);
    };

    for (int y = 0; y < height; ++y) {
        if (angle_pct > 0.0) {
            // duplicate [loc1, loc2) after the middle column, truncate right
            copy_cols(0, 0, geo.mid, y);
            copy_cols(geo.mid, geo.loc1, strip, y);
            copy_cols(geo.mid + strip, geo.mid, width - strip - geo.mid, y);
        } else {
            // remove [loc1, loc2), stitch, pad right with background
            copy_cols(0, 0, geo.loc1, y);
            copy_cols(geo.loc1, geo.loc2, width - geo.loc2, y);
            // remaining `strip` columns stay zero-initialized
        }
    }
    return out;
}

} // namespace slabuq
