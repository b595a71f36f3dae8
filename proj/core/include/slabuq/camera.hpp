#pragma once

#include <Eigen/Dense>
#include <vector>

namespace slabuq {

/// Pinhole intrinsics plus the two radial distortion coefficients.
struct CameraIntrinsics {
    double fx = 1.0;
    double fy = 1.0;
    double skew = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;

    /// Calibration estimates for the lab high-speed camera (1920x1080).
    static CameraIntrinsics lab_camera();

    /// Throws std::invalid_argument unless fx, fy > 0.
    void validate() const;
};

struct CameraExtrinsics {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    /// Throws std::invalid_argument unless rotation is orthonormal with
    /// det +1, both within 1e-9.
    void validate() const;
};

/// Coplanar 3-D calibration points on a regular grid.
struct PlanarTarget {
    std::vector<Eigen::Vector3d> points;
    double spacing_cm = 2.0;

    /// rows x cols grid in the z = 0 plane, centered on the origin.
    static PlanarTarget grid(int rows, int cols, double spacing_cm);
};

/// World point into the camera frame: q = R^T (p - tau).
Eigen::Vector3d world_to_camera(const Eigen::Vector3d& p, const CameraExtrinsics& ext);

/// Perspective divide followed by the intrinsics:
///   rx = fx * qi/qk + skew * qj/qk + cx,  ry = fy * qj/qk + cy.
/// Throws std::domain_error when the point is not in front of the camera
/// (qk <= 0).
Eigen::Vector2d project(const Eigen::Vector3d& q, const CameraIntrinsics& intr);

/// Radial distortion in normalized image coordinates, applied to raw pixel
/// coordinates exactly as calibrated:
///   x_d = (rx/fx) * (1 + k1 d^2 + k2 d^4),  d = (rx/fx)^2 + (ry/fy)^2
/// and likewise for y. Note d is the *squared* normalized radius, so the
/// correction is quartic/octic in radius rather than the common
/// 1 + k1 r^2 + k2 r^4 form.
Eigen::Vector2d distort_normalized(const Eigen::Vector2d& pixel, const CameraIntrinsics& intr);

/// Pixel-space displacement the radial model induces at `pixel`, measured
/// about the optical center (zero at the principal point).
Eigen::Vector2d distortion_displacement_px(const Eigen::Vector2d& pixel,
                                           const CameraIntrinsics& intr);

/// Projects every target point and returns the percentage whose distortion
/// displacement norm exceeds `threshold_px`. Throws std::invalid_argument
/// on an empty target and std::domain_error if any point lands behind the
/// camera.
double distorted_fraction(const PlanarTarget& target, const CameraExtrinsics& ext,
                          const CameraIntrinsics& intr, double threshold_px = 1.0);

} // namespace slabuq
