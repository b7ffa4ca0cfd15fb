#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lane_emden/mesh.hpp"
#include "test_helpers.hpp"

using namespace lane_emden;
using lane_emden::testing::Rng;

TEST_SUITE_BEGIN("mesh");

TEST_CASE("ball mesh: containment, quality, topology") {
  const TriangleMesh mesh = build_mesh(GeodesicBall{{0, 0, -1}, M_PI / 4}, 0.05);
  const double t = std::tan(M_PI / 8);
  for (const PlanarPoint& q : mesh.vertices) {
    CHECK(norm(q) <= t + 1e-9);
  }
  // boundary vertices sit on the input circle well within h^2
  for (const int b : mesh.boundary_vertices) {
    CHECK(std::abs(norm(mesh.vertices[b]) - t) <= 0.05 * 0.05);
  }
  const MeshQuality q = mesh_quality(mesh);
  CHECK(q.min_angle_deg >= 20.0);
  CHECK(q.max_edge <= 1.5 * 0.05);
  CHECK(q.min_area > 0);
  // finalize() ran inside generate_mesh: Euler relation and connectivity hold
  CHECK(mesh.n_vertices() - 1 + mesh.n_triangles() >= mesh.n_triangles());
}

TEST_CASE("vertex count grows like the refinement square") {
  const TriangleMesh coarse = build_mesh(GeodesicBall{{0, 0, -1}, M_PI / 4}, 0.05);
  const TriangleMesh fine = build_mesh(GeodesicBall{{0, 0, -1}, M_PI / 4}, 0.025);
  const double factor = static_cast<double>(fine.n_vertices()) / coarse.n_vertices();
  CHECK(factor >= 3.2);
  CHECK(factor <= 4.8);
}

TEST_CASE("self-crossing input propagates SelfIntersection") {
  BoundaryCurve bad;
  bad.samples = {{-0.4, -0.2}, {0.4, 0.2}, {0.4, -0.2}, {-0.4, 0.2}};
  bad.kappa_E = {1, 1, 1, 1};
  bad.nu_E = {{1, 0}, {1, 0}, {1, 0}, {1, 0}};
  CHECK_THROWS_AS(generate_mesh(bad, 0.1), SelfIntersection);
}

TEST_CASE("boundary distance field") {
  const TriangleMesh mesh = build_mesh(GeodesicBall{{0, 0, -1}, M_PI / 3}, 0.05);
  const std::vector<double> dist = boundary_distance(mesh);
  const double R = M_PI / 3;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (mesh.is_boundary[i]) {
      CHECK(dist[i] == 0.0);
      continue;
    }
    CHECK(dist[i] > 0);
    // for the ball the distance field is R - geodesic radius, up to the
    // polygonal boundary resolution
    const double r = geodesic_distance(stereo_lift(mesh.vertices[i]), {0, 0, -1});
    CHECK(std::abs(dist[i] - (R - r)) <= 2 * mesh.h);
  }
  // center vertex reads the ball radius
  double best = 1e9;
  double center_dist = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const double r = norm(mesh.vertices[i]);
    if (r < best) {
      best = r;
      center_dist = dist[i];
    }
  }
  CHECK(std::abs(center_dist - R) <= 2 * mesh.h);
}

TEST_CASE("Fermi frames on the ball") {
  const TriangleMesh mesh = build_mesh(GeodesicBall{{0, 0, -1}, M_PI / 3}, 0.05);
  Rng rng(7);
  const int nb = static_cast<int>(mesh.boundary_vertices.size());
  for (int trial = 0; trial < 100; ++trial) {
    const int k = static_cast<int>(rng.uniform() * nb) % nb;
    const FermiFrame frame = fermi_frame(mesh, k);
    // eta points at the origin
    const PlanarPoint to_center = -1.0 * frame.base;
    const double cosang = dot(frame.eta, to_center) / (norm(frame.eta) * norm(to_center));
    CHECK(std::abs(cosang - 1.0) <= 1e-6);
    // curvature of the geodesic circle
    CHECK(frame.kappa_tilde ==
          doctest::Approx(std::cos(M_PI / 3) / std::sin(M_PI / 3)).epsilon(1e-6));
    // conformal orthonormality
    const double rho2 = conformal_factor(frame.base);
    CHECK(std::abs(rho2 * dot(frame.tau, frame.eta)) <= 1e-10);
    CHECK(std::abs(std::sqrt(rho2 * norm2(frame.tau)) - 1.0) <= 1e-10);
    CHECK(std::abs(std::sqrt(rho2 * norm2(frame.eta)) - 1.0) <= 1e-10);
  }
}

TEST_CASE("mesh text round trip") {
  const TriangleMesh mesh = build_mesh(SphericalEllipse{M_PI / 4, M_PI / 6}, 0.08);
  std::ostringstream first;
  write_mesh(first, mesh);
  std::istringstream in(first.str());
  const TriangleMesh back = read_mesh(in);
  std::ostringstream second;
  write_mesh(second, back);
  CHECK(first.str() == second.str());
  CHECK(back.n_vertices() == mesh.n_vertices());
  CHECK(back.boundary_vertices == mesh.boundary_vertices);
}

TEST_CASE("point location and interpolation") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  const PointLocator locator(mesh);
  std::vector<double> values(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    values[i] = 2.0 * mesh.vertices[i].X - 3.0 * mesh.vertices[i].Y + 1.0;
  }
  Rng rng(19);
  for (int k = 0; k < 200; ++k) {
    const double ang = rng.uniform(0, 2 * M_PI);
    const double rad = 0.95 * std::tan(M_PI / 8) * std::sqrt(rng.uniform());
    const PlanarPoint q{rad * std::cos(ang), rad * std::sin(ang)};
    const double exact = 2.0 * q.X - 3.0 * q.Y + 1.0;
    CHECK(std::abs(locator.interpolate(values, q) - exact) <= 1e-12);
  }
  CHECK_THROWS_AS(locator.interpolate(values, {0.9, 0.9}), DomainMismatch);
}

TEST_SUITE_END();
