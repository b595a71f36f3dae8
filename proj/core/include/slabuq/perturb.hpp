#pragma once

#include "slabuq/raster.hpp"
#include "slabuq/rng.hpp"

namespace slabuq {

/// Which experimental uncertainty sources a run injects.
struct SourceToggles {
    bool distortion = false;       ///< camera distortion (zeroed pixels)
    bool placement_angle = false;  ///< non-zero placement angle (length shift)
    bool segmentation_var = false; ///< manual-segmentation variance
};

/// Calibrated sampling intervals, in percent.
namespace bounds {
inline constexpr double distortion_lo = 0.133;
inline constexpr double distortion_hi = 0.700;
inline constexpr double angle_lo = -1.319;
inline constexpr double angle_hi = 0.558;
inline constexpr double segvar_lo = 0.56;
inline constexpr double segvar_hi = 0.83;
} // namespace bounds

/// One sampled (Uc, Ugamma, Us) triple driving a Monte-Carlo trial.
/// Disabled sources stay exactly 0.
struct PerturbationDraw {
    double distortion_pct = 0.0;
    double angle_pct = 0.0;
    double segvar_pct = 0.0;
};

/// Draws enabled components uniformly from their intervals, consuming the
/// stream in the order angle, distortion, segmentation variance. Disabled
/// components draw nothing.
PerturbationDraw sample_draw(RngStream& rng, const SourceToggles& enabled);

/// Slab/camera geometry behind the placement-angle error model.
struct GeometrySpec {
    double fuel_length_cm = 8.069;     ///< true specimen length y
    double camera_distance_cm = 37.46; ///< specimen-to-camera distance L

    /// Viewing half-angle to the specimen end: atan(y / 2L).
    double beta_rad() const;

    void validate() const;
};

/// Relative error (percent) in perceived specimen length when the slab is
/// placed at `gamma_deg` instead of orthogonal to the camera axis:
///   100 * (cos g + tan(beta) sin g - 1).
/// Requires |gamma_deg| < 90.
double placement_error_pct(double gamma_deg, const GeometrySpec& geom = {});

/// Independently zeroes each pixel (all three channels) with probability
/// pct/100. Throws std::invalid_argument outside [0, 100].
ImageFrame apply_distortion(const ImageFrame& frame, double pct, RngStream& rng);

/// Fuel length in pixels per cm of true length. Fuel length spans from the
/// leftmost to the rightmost fuel column. Throws std::invalid_argument on
/// an empty mask.
double pixel_density(const BinaryMask& mask, double fuel_length_cm);

/// Column arithmetic of the mid-image strip edit that realizes a sampled
/// placement-angle error. The strip edges floor symmetrically about the
/// middle column:
///   loc1 = floor(mid - |shift|/2), loc2 = floor(mid + |shift|/2)
/// with shift = (pct/100 * y_cm) * density. Flooring both edges means the
/// realized shift can differ from the requested one by up to one pixel.
struct ShiftGeometry {
    double shift_px = 0.0; ///< signed requested shift
    int mid = 0;
    int loc1 = 0;
    int loc2 = 0;

    int strip_width() const { return loc2 - loc1; }
};

ShiftGeometry shift_geometry(double angle_pct, double fuel_length_cm,
                             double density_px_per_cm, int width);

/// Shifts the right fuel boundary by editing a vertical strip at the image
/// middle: a positive error duplicates the strip (boundary moves right,
/// right edge truncated); a negative error removes it and pads the right
/// edge with background columns. Width and height are preserved. Throws
/// std::domain_error when the strip escapes the frame.
ImageFrame apply_angle_shift(const ImageFrame& frame, double angle_pct,
                             double density_px_per_cm, double fuel_length_cm);

} // namespace slabuq
