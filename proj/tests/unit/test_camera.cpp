#include <doctest.h>

#include <cmath>

#include "slabuq/camera.hpp"

using namespace slabuq;

TEST_CASE("world_to_camera") {
    CameraExtrinsics ext; // identity pose

    SUBCASE("identity transform") {
        Eigen::Vector3d q = world_to_camera({1.0, 2.0, 3.0}, ext);
        CHECK(q.isApprox(Eigen::Vector3d(1.0, 2.0, 3.0)));
    }
    SUBCASE("translation to origin") {
        ext.translation = {1.0, 2.0, 3.0};
        CHECK(world_to_camera({1.0, 2.0, 3.0}, ext).norm() == 0.0);
    }
    SUBCASE("90-degree z rotation, against a hand multiply") {
        ext.rotation << 0, -1, 0, 1, 0, 0, 0, 0, 1;
        ext.validate();
        // R^T (1,0,0) = (0,-1,0)
        Eigen::Vector3d q = world_to_camera({1.0, 0.0, 0.0}, ext);
        CHECK(q.x() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(q.y() == doctest::Approx(-1.0));
        CHECK(q.z() == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("non-orthonormal rotation rejected") {
        ext.rotation(0, 0) = 2.0;
        CHECK_THROWS_AS(ext.validate(), std::invalid_argument);
    }
}

TEST_CASE("project") {
    CameraIntrinsics intr;
    intr.fx = intr.fy = 1000.0;
    intr.cx = intr.cy = 0.0;

    SUBCASE("optical axis lands on the principal point") {
        intr.cx = 971.65;
        intr.cy = 503.64;
        Eigen::Vector2d px = project({0.0, 0.0, 5.0}, intr);
        CHECK(px.x() == doctest::Approx(971.65));
        CHECK(px.y() == doctest::Approx(503.64));
    }
    SUBCASE("direct evaluation") {
        Eigen::Vector2d px = project({0.1, 0.0, 1.0}, intr);
        CHECK(px.x() == doctest::Approx(100.0));
        CHECK(px.y() == doctest::Approx(0.0));
    }
    SUBCASE("scaling the ray does not move the pixel") {
        Eigen::Vector2d a = project({0.3, -0.2, 2.0}, intr);
        Eigen::Vector2d b = project({0.6, -0.4, 4.0}, intr);
        CHECK(a.isApprox(b, 1e-12));
    }
    SUBCASE("points behind the camera are rejected") {
        CHECK_THROWS_AS(project({0.0, 0.0, -1.0}, intr), std::domain_error);
        CHECK_THROWS_AS(project({0.0, 0.0, 0.0}, intr), std::domain_error);
    }
}

TEST_CASE("radial distortion") {
    CameraIntrinsics intr = CameraIntrinsics::lab_camera();

    SUBCASE("no coefficients, no displacement") {
        intr.k1 = intr.k2 = 0.0;
        for (double px : {-500.0, 0.0, 333.0, 1900.0}) {
            Eigen::Vector2d d = distortion_displacement_px({px, 100.0}, intr);
            CHECK(d.norm() == 0.0);
        }
    }

    SUBCASE("lab values at normalized radius 0.1") {
        // d = 0.01; gain = k1 d^2 + k2 d^4; displacement = fx * 0.1 * gain
        const double gain = intr.k1 * 1e-4 + intr.k2 * 1e-8;
        const double expected = intr.fx * 0.1 * gain;
        Eigen::Vector2d pixel{intr.cx + 0.1 * intr.fx, intr.cy};
        Eigen::Vector2d disp = distortion_displacement_px(pixel, intr);
        CHECK(disp.norm() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(disp.norm() == doctest::Approx(0.19).epsilon(0.03));

        // the raw normalized mapping agrees
        Eigen::Vector2d nd = distort_normalized({0.1 * intr.fx, 0.0}, intr);
        CHECK(nd.x() == doctest::Approx(0.1 * (1.0 + gain)).epsilon(1e-12));
        CHECK(nd.y() == 0.0);
    }

    SUBCASE("displacement is radially symmetric when fx == fy") {
        intr.fy = intr.fx;
        const double a = 700.0;
        Eigen::Vector2d dx = distortion_displacement_px({intr.cx + a, intr.cy}, intr);
        Eigen::Vector2d dy = distortion_displacement_px({intr.cx, intr.cy + a}, intr);
        CHECK(dx.norm() == doctest::Approx(dy.norm()).epsilon(1e-12));
    }

    SUBCASE("displacement grows with normalized radius") {
        double prev = -1.0;
        for (double r = 0.0; r <= 0.3; r += 0.05) {
            Eigen::Vector2d d =
                distortion_displacement_px({intr.cx + r * intr.fx, intr.cy}, intr);
            CHECK(d.norm() >= prev);
            prev = d.norm();
        }
    }
}

namespace {

// independent per-point oracle for the distorted fraction
double fraction_oracle(const PlanarTarget& target, const CameraExtrinsics& ext,
                       const CameraIntrinsics& intr, double threshold) {
    int over = 0;
    for (const auto& p : target.points) {
        Eigen::Vector3d q = ext.rotation.transpose() * (p - ext.translation);
        double rx = intr.fx * q.x() / q.z() + intr.skew * q.y() / q.z() + intr.cx;
        double ry = intr.fy * q.y() / q.z() + intr.cy;
        double xn = (rx - intr.cx) / intr.fx;
        double yn = (ry - intr.cy) / intr.fy;
        double d = xn * xn + yn * yn;
        double g = intr.k1 * d * d + intr.k2 * d * d * d * d;
        double ddx = intr.fx * xn * g;
        double ddy = intr.fy * yn * g;
        if (std::sqrt(ddx * ddx + ddy * ddy) > threshold) ++over;
    }
    return 100.0 * over / static_cast<double>(target.points.size());
}

CameraExtrinsics facing_pose(double distance_cm) {
    CameraExtrinsics ext;
    ext.translation = {0.0, 0.0, -distance_cm};
    return ext;
}

} // namespace

TEST_CASE("distorted_fraction") {
    CameraIntrinsics intr = CameraIntrinsics::lab_camera();
    auto target = PlanarTarget::grid(20, 20, 2.0);
    auto ext = facing_pose(100.0);

    SUBCASE("zero coefficients give zero percent") {
        intr.k1 = intr.k2 = 0.0;
        CHECK(distorted_fraction(target, ext, intr) == 0.0);
    }
    SUBCASE("a single point at the principal point is never distorted") {
        PlanarTarget center;
        center.points.emplace_back(0.0, 0.0, 0.0);
        // place the optical axis through it
        intr.cx = intr.cy = 0.0;
        CHECK(distorted_fraction(center, ext, intr) == 0.0);
    }
    SUBCASE("matches the brute-force oracle on a dense grid") {
        auto dense = PlanarTarget::grid(40, 40, 1.0);
        double ours = distorted_fraction(dense, ext, intr);
        double oracle = fraction_oracle(dense, ext, intr, 1.0);
        CHECK(ours == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(ours > 0.0);
        CHECK(ours < 100.0);
    }
    SUBCASE("monotone non-decreasing in k1") {
        double prev = -1.0;
        for (double k1 : {0.0, 2.15, 4.30, 8.60}) {
            intr.k1 = k1;
            double f = distorted_fraction(target, ext, intr);
            CHECK(f >= prev);
            CHECK(f == doctest::Approx(fraction_oracle(target, ext, intr, 1.0)).epsilon(1e-12));
            prev = f;
        }
    }
    SUBCASE("empty target rejected") {
        CHECK_THROWS_AS(distorted_fraction(PlanarTarget{}, ext, intr), std::invalid_argument);
    }
}
