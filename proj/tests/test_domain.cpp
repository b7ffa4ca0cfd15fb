#include <doctest.h>

#include <cmath>

#include "lane_emden/domain.hpp"

using namespace lane_emden;

TEST_SUITE_BEGIN("domain");

TEST_CASE("geodesic ball planarizes to the circle of radius tan(R/2)") {
  const BoundaryCurve curve = planarize(GeodesicBall{{0, 0, -1}, M_PI / 4}, 128);
  const double t = std::tan(M_PI / 8);
  REQUIRE(curve.size() == 128);
  for (int k = 0; k < curve.size(); ++k) {
    CHECK(norm(curve.samples[k]) == doctest::Approx(t).epsilon(1e-13));
    CHECK(curve.kappa_E[k] == doctest::Approx(1.0 / t).epsilon(1e-13));
    CHECK(norm(curve.nu_E[k]) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("hemisphere boundary is the unit circle") {
  const BoundaryCurve curve = planarize(GeodesicBall{{0, 0, -1}, M_PI / 2}, 64);
  for (int k = 0; k < curve.size(); ++k) {
    CHECK(norm(curve.samples[k]) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(curve.kappa_E[k] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("spherical ellipse stays in the unit disk") {
  const BoundaryCurve curve =
      planarize(SphericalEllipse{M_PI / 4, M_PI / 6}, 181);
  double max_x = 0, max_y = 0;
  for (const PlanarPoint& q : curve.samples) {
    CHECK(norm(q) <= 1.0 + 1e-9);
    max_x = std::max(max_x, std::abs(q.X));
    max_y = std::max(max_y, std::abs(q.Y));
  }
  CHECK(max_x == doctest::Approx(std::tan(M_PI / 8)).epsilon(1e-4));
  CHECK(max_y == doctest::Approx(std::tan(M_PI / 12)).epsilon(1e-4));
}

TEST_CASE("domains beyond the hemisphere cannot be planarized") {
  CHECK_THROWS_AS(planarize(GeodesicBall{{0, 0, -1}, 2 * M_PI / 3}, 64), NotInDisk);
}

TEST_CASE("uniform convexity verdicts") {
  const ConvexityReport ball = check_uniform_convexity(
      GeodesicBall{{0, 0, -1}, M_PI / 4}, 256);
  CHECK(ball.verdict == ConvexityVerdict::uniformly_convex);
  CHECK(ball.kappa_min == doctest::Approx(1.0).epsilon(1e-8));

  const ConvexityReport hemi = check_uniform_convexity(
      GeodesicBall{{0, 0, -1}, M_PI / 2}, 256);
  CHECK(hemi.verdict == ConvexityVerdict::convex_marginal);
  CHECK(std::abs(hemi.kappa_min) <= 1e-6);

  const ConvexityReport big = check_uniform_convexity(
      GeodesicBall{{0, 0, -1}, 2 * M_PI / 3}, 256);
  CHECK(big.verdict == ConvexityVerdict::not_convex);
  CHECK(big.kappa_min ==
        doctest::Approx(std::cos(2 * M_PI / 3) / std::sin(2 * M_PI / 3))
            .epsilon(1e-8));
}

TEST_CASE("self-intersecting curves are rejected") {
  PlanarConvexCurve bowtie;
  bowtie.samples = {{-0.4, -0.2}, {0.4, 0.2}, {0.4, -0.2}, {-0.4, 0.2}};
  CHECK_THROWS_AS(planarize(bowtie, 64), SelfIntersection);
  CHECK_THROWS_AS(check_uniform_convexity(bowtie, 64), DegenerateBoundary);
}

TEST_CASE("clockwise curves are rejected") {
  PlanarConvexCurve cw;
  for (int k = 0; k < 32; ++k) {
    const double t = -2 * M_PI * k / 32;
    cw.samples.push_back({0.3 * std::cos(t), 0.3 * std::sin(t)});
  }
  CHECK_THROWS_AS(planarize(cw, 64), DegenerateBoundary);
}

TEST_CASE("uniformly convex domains planarize to convex curves") {
  for (const DomainSpec& dom :
       {DomainSpec{GeodesicBall{{0, 0, -1}, M_PI / 3}},
        DomainSpec{SphericalEllipse{M_PI / 4, M_PI / 6}}}) {
    const BoundaryCurve curve = planarize(dom, 256);
    const int n = curve.size();
    for (int k = 0; k < n; ++k) {
      const PlanarPoint a = curve.samples[k];
      const PlanarPoint b = curve.samples[(k + 1) % n];
      const PlanarPoint c = curve.samples[(k + 2) % n];
      CHECK(cross(b - a, c - b) > 0);  // every sample is a hull vertex
    }
  }
}

TEST_SUITE_END();
