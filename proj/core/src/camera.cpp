#include "slabuq/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace slabuq {

CameraIntrinsics CameraIntrinsics::lab_camera() {
    CameraIntrinsics intr;
    intr.fx = 4386.76;
    intr.fy = 4374.34;
    intr.skew = 0.0;
    intr.cx = 971.65;
    intr.cy = 503.64;
    intr.k1 = 4.30;
    intr.k2 = 28.74;
    return intr;
}

void CameraIntrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0)) {
        throw std::invalid_argument("CameraIntrinsics: focal lengths must be positive");
    }
}

void CameraExtrinsics::validate() const {
    const double ortho_err = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                                 .cwiseAbs()
                                 .maxCoeff();
    if (ortho_err > 1e-9) {
        throw std::invalid_argument("CameraExtrinsics: rotation is not orthonormal");
    }
    if (std::abs(rotation.determinant() - 1.0) > 1e-9) {
        throw std::invalid_argument("CameraExtrinsics: rotation determinant is not +1");
    }
}

PlanarTarget PlanarTarget::grid(int rows, int cols, double spacing_cm) {
    if (rows < 1 || cols < 1 || !(spacing_cm > 0.0)) {
        throw std::invalid_argument("PlanarTarget: need positive grid and spacing");
    }
    PlanarTarget target;
    target.spacing_cm = spacing_cm;
    target.points.reserve(static_cast<std::size_t>(rows) * cols);
    const double x0 = -0.5 * spacing_cm * (cols - 1);
    const double y0 = -0.5 * spacing_cm * (rows - 1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            target.points.emplace_back(x0 + c * spacing_cm, y0 + r * spacing_cm, 0.0);
        }
    }
    return target;
}

Eigen::Vector3d world_to_camera(const Eigen::Vector3d& p, const CameraExtrinsics& ext) {
    return ext.rotation.transpose() * (p - ext.translation);
}

Eigen::Vector2d project(const Eigen::Vector3d& q, const CameraIntrinsics& intr) {
    if (!(q.z() > 0.0)) {
        throw std::domain_error("project: point is behind the camera");
    }
    const double xn = q.x() / q.z();
    const double yn = q.y() / q.z();
    return {intr.fx * xn + intr.skew * yn + intr.cx, intr.fy * yn + intr.cy};
}

Eigen::Vector2d distort_normalized(const Eigen::Vector2d& pixel, const CameraIntrinsics& intr) {
    const double xn = pixel.x() / intr.fx;
    const double yn = pixel.y() / intr.fy;
    const double d = xn * xn + yn * yn;
    const double factor = 1.0 + intr.k1 * d * d + intr.k2 * d * d * d * d;
    return {xn * factor, yn * factor};
}

Eigen::Vector2d distortion_displacement_px(const Eigen::Vector2d& pixel,
                                           const CameraIntrinsics& intr) {
    const double xn = (pixel.x() - intr.cx) / intr.fx;
    const double yn = (pixel.y() - intr.cy) / intr.fy;
    const double d = xn * xn + yn * yn;
    const double gain = intr.k1 * d * d + intr.k2 * d * d * d * d;
    return {intr.fx * xn * gain, intr.fy * yn * gain};
}

double distorted_fraction(const PlanarTarget& target, const CameraExtrinsics& ext,
                          const CameraIntrinsics& intr, double threshold_px) {
    if (target.points.empty()) {
        throw std::invalid_argument("distorted_fraction: empty target");
    }
    std::size_t over = 0;
    for (const auto& p : target.points) {
        const Eigen::Vector2d pixel = project(world_to_camera(p, ext), intr);
        if (distortion_displacement_px(pixel, intr).norm() > threshold_px) ++over;
    }
    return 100.0 * static_cast<double>(over) / static_cast<double>(target.points.size());
}

} // namespace slabuq
