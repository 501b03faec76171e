#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "varibase/core/errors.hpp"
#include "varibase/core/random.hpp"
#include "varibase/geometry/depth.hpp"
#include "varibase/geometry/distortion.hpp"
#include "varibase/geometry/rectification.hpp"

using namespace varibase;
using namespace varibase::geometry;

namespace {

CameraIntrinsics simple_intrinsics(double f = 1000.0, double alpha = 0.0) {
  return CameraIntrinsics(f, f, 64.0, 64.0, alpha);
}

// Documented safe coefficient ranges over the |x|,|y| <= 1.5 domain.
DistortionCoefficients random_coefficients(Rng& rng) {
  return DistortionCoefficients(rng.uniform(-0.06, 0.06),
                                rng.uniform(0.0, 0.01),
                                rng.uniform(-1e-3, 1e-3),
                                rng.uniform(-1e-3, 1e-3),
                                rng.uniform(0.0, 5e-4));
}

}  // namespace

TEST_CASE("projection at the origin hits the principal point") {
  const DistortionCoefficients dist(0.03, 0.001, 5e-4, -5e-4, 1e-4);
  const Vec2 px =
      project_with_distortion(Vec2(0, 0), dist, simple_intrinsics());
  CHECK(px.x() == doctest::Approx(64.0).epsilon(1e-15));
  CHECK(px.y() == doctest::Approx(64.0).epsilon(1e-15));
}

TEST_CASE("pure pinhole scaling without distortion") {
  const Vec2 px =
      project_with_distortion(Vec2(0.1, 0.2), {}, simple_intrinsics());
  CHECK(px.x() == doctest::Approx(164.0).epsilon(1e-12));
  CHECK(px.y() == doctest::Approx(264.0).epsilon(1e-12));
}

TEST_CASE("k1-only projection matches the symbolic evaluation") {
  // r^2 = 0.05, radial factor 1 + 0.1*0.05 = 1.005:
  // x_r = 0.1005 -> 164.5 px, y_r = 0.201 -> 265.0 px.
  const DistortionCoefficients dist(0.1, 0, 0, 0, 0);
  const Vec2 px =
      project_with_distortion(Vec2(0.1, 0.2), dist, simple_intrinsics());
  CHECK(px.x() == doctest::Approx(164.5).epsilon(1e-12));
  CHECK(px.y() == doctest::Approx(265.0).epsilon(1e-12));
}

TEST_CASE("projection rejects non-finite input") {
  CHECK_THROWS_AS(project_with_distortion(
                      Vec2(std::numeric_limits<double>::quiet_NaN(), 0), {},
                      simple_intrinsics()),
                  std::invalid_argument);
}

TEST_CASE("undistort inverts the trivial cases") {
  const CameraIntrinsics intr = simple_intrinsics();
  const Vec2 origin = undistort(Vec2(64, 64), {}, intr);
  CHECK(origin.norm() < 1e-12);

  const Vec2 pinhole = undistort(Vec2(164, 264), {}, intr);
  CHECK(pinhole.x() == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(pinhole.y() == doctest::Approx(0.2).epsilon(1e-10));

  const DistortionCoefficients dist(0.1, 0, 0, 0, 0);
  const Vec2 distorted = undistort(Vec2(164.5, 265.0), dist, intr);
  CHECK(distorted.x() == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(distorted.y() == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("round trip over the 17x17 grid for 100 random coefficient sets") {
  Rng rng(2024);
  const CameraIntrinsics intr(700.0, 710.0, 64.0, 64.0, 0.01);
  double worst = 0.0;
  for (int set = 0; set < 100; ++set) {
    const DistortionCoefficients dist = random_coefficients(rng);
    for (int j = 0; j < 17; ++j) {
      for (int i = 0; i < 17; ++i) {
        const Vec2 p(-1.5 + 3.0 * i / 16, -1.5 + 3.0 * j / 16);
        const Vec2 px = project_with_distortion(p, dist, intr);
        const Vec2 back = undistort(px, dist, intr);
        const Vec2 px2 = project_with_distortion(back, dist, intr);
        worst = std::max(worst, (px2 - px).norm());
      }
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("distortion construction rejects a non-injective map") {
  // Strong negative k1 alone folds the corners of the default domain.
  CHECK_THROWS_AS(DistortionCoefficients(-0.3, 0, 0, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("horizontal stereo is already rectified") {
  const CameraIntrinsics intr = simple_intrinsics();
  const StereoExtrinsics ext(Mat3::Identity(), Vec3(0.2, 0, 0));
  const RectificationPair pair = rectification_pair(intr, intr, ext);
  CHECK((pair.r_rect - Mat3::Identity()).norm() < 1e-12);
  CHECK((pair.h_left - Mat3::Identity()).norm() < 1e-9);
  CHECK((pair.h_right - Mat3::Identity()).norm() < 1e-9);
}

TEST_CASE("vertical stereo rectifying rotation, by hand") {
  const CameraIntrinsics intr = simple_intrinsics();
  const StereoExtrinsics ext(Mat3::Identity(), Vec3(0, 0.2, 0));
  const RectificationPair pair = rectification_pair(intr, intr, ext);
  Mat3 expected;
  expected << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  CHECK((pair.r_rect - expected).norm() < 1e-12);
}

TEST_CASE("rectified rows align for a rotated rig: brute-force oracle") {
  const CameraIntrinsics intr = simple_intrinsics(500.0);
  const Mat3 r_small =
      Eigen::AngleAxisd(1.0 * M_PI / 180.0, Vec3::UnitY()).toRotationMatrix();
  const StereoExtrinsics ext(r_small, Vec3(0.2, 0, 0));
  const RectificationPair pair = rectification_pair(intr, intr, ext);
  CHECK((pair.r_rect.transpose() * pair.r_rect - Mat3::Identity())
            .lpNorm<Eigen::Infinity>() < 1e-9);

  Rng rng(7);
  double worst_row_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 p(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                 rng.uniform(1.0, 10.0));
    const Vec2 left_px = normalized_to_pixel_affine(
        Vec2(p.x() / p.z(), p.y() / p.z()), intr);
    // p_R = R (p - T)
    const Vec3 pr = ext.rotation * (p - ext.translation);
    REQUIRE(pr.z() > 0.0);
    const Vec2 right_px = normalized_to_pixel_affine(
        Vec2(pr.x() / pr.z(), pr.y() / pr.z()), intr);
    const Vec2 left_rect = apply_homography(pair.h_left, left_px);
    const Vec2 right_rect = apply_homography(pair.h_right, right_px);
    worst_row_gap =
        std::max(worst_row_gap, std::abs(left_rect.y() - right_rect.y()));
  }
  CHECK(worst_row_gap < 1e-6);
}

TEST_CASE("rectification rejects a baseline along the optical axis") {
  const CameraIntrinsics intr = simple_intrinsics();
  CHECK_THROWS_AS(rectification_pair(
                      intr, intr,
                      StereoExtrinsics(Mat3::Identity(), Vec3(0, 0, 0.2))),
                  DegenerateGeometryError);
}

TEST_CASE("depth from disparity, scalar") {
  CHECK(depth_from_disparity(50.0, 0.1, 500.0) == doctest::Approx(1.0));
  CHECK(depth_from_disparity(25.0, 0.1, 500.0) == doctest::Approx(2.0));
  // Inverse proportionality: doubling d halves Z.
  const double z1 = depth_from_disparity(10.0, 0.1, 500.0);
  const double z2 = depth_from_disparity(20.0, 0.1, 500.0);
  CHECK(z1 == doctest::Approx(2.0 * z2).epsilon(1e-15));
  CHECK_THROWS_AS(depth_from_disparity(0.0, 0.1, 500.0), std::invalid_argument);
  CHECK_THROWS_AS(depth_from_disparity(-1.0, 0.1, 500.0),
                  std::invalid_argument);
}

TEST_CASE("per-pixel depth conversion maps invalid disparity to invalid") {
  DisparityImage d(3, 1);
  d.set(0, 0, 50.0);
  d.set(1, 0, 0.0);
  // (2,0) stays invalid
  const DepthImage z = depth_image_from_disparity(d, 0.1, 500.0);
  CHECK(z.valid(0, 0));
  CHECK(z.value(0, 0) == doctest::Approx(1.0));
  CHECK_FALSE(z.valid(1, 0));
  CHECK_FALSE(z.valid(2, 0));
}

TEST_CASE("depth error law and its finite-difference oracle") {
  CHECK(depth_error(1.0, 0.1, 500.0, 0.0) == 0.0);
  const double eps = depth_error(1.0, 0.1, 500.0, 1.0);
  CHECK(eps == doctest::Approx(0.02).epsilon(1e-12));
  // One-sided difference at d = 50 differs by exactly 1/d = 2%.
  const double fd = depth_from_disparity(50.0, 0.1, 500.0) -
                    depth_from_disparity(51.0, 0.1, 500.0);
  CHECK(std::abs(eps - fd) / fd <= 0.02 + 1e-9);
  // Quadratic growth: doubling z quadruples eps_z.
  CHECK(depth_error(2.0, 0.1, 500.0, 1.0) == doctest::Approx(0.08));
  CHECK(depth_error(2.0, 0.1, 500.0, 1.0) /
            depth_error(1.0, 0.1, 500.0, 1.0) ==
        doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("depth relations are homogeneous under (b,f,d) scaling") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double b = rng.uniform(0.05, 0.5);
    const double f = rng.uniform(100.0, 1000.0);
    const double d = rng.uniform(1.0, 80.0);
    const double s = rng.uniform(0.1, 10.0);
    CHECK(depth_from_disparity(d, b, f) ==
          doctest::Approx(depth_from_disparity(d * s, b * s, f))
              .epsilon(1e-12));
    CHECK(depth_from_disparity(d, b, f) ==
          doctest::Approx(depth_from_disparity(d * s, b, f * s))
              .epsilon(1e-12));
  }
}

TEST_CASE("intrinsics reject a principal point far outside the image") {
  CHECK_THROWS_AS(CameraIntrinsics(500.0, 500.0, 700.0, 64.0, 0.0, {128, 128}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CameraIntrinsics(-1.0, 500.0, 64.0, 64.0, 0.0),
                  std::invalid_argument);
  CHECK_NOTHROW(CameraIntrinsics(500.0, 500.0, 80.0, 64.0, 0.0, {128, 128}));
}

TEST_CASE("undistort reports non-convergence through the iteration cap") {
  const DistortionCoefficients dist(0.06, 0.01, 1e-3, -1e-3, 5e-4);
  const CameraIntrinsics intr = simple_intrinsics(100.0);
  UndistortOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 1e-14;
  const Vec2 far_pixel(intr.cx + 140.0, intr.cy + 120.0);
  CHECK_THROWS_AS(undistort(far_pixel, dist, intr, opts), ConvergenceError);
  try {
    undistort(far_pixel, dist, intr, opts);
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 0.0);
  }
  // The default budget solves the same pixel.
  CHECK_NOTHROW(undistort(far_pixel, dist, intr));
}
