#include <doctest.h>

#include <cmath>
#include <map>

#include "lane_emden/oracle.hpp"
#include "lane_emden/solver.hpp"
#include "test_helpers.hpp"

using namespace lane_emden;
using lane_emden::testing::Rng;

TEST_SUITE_BEGIN("solver");

TEST_CASE("torsion on the ball R = pi/3 matches the closed form") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi3_h02();
  Solver solver(mesh);
  auto [u, report] = solver.torsion();
  CHECK(std::abs(report.max_value - std::log(4.0 / 3.0)) <= 2e-3);
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (!mesh.is_boundary[i]) CHECK(u.values[i] > 0);
  }
  const CompareResult cmp = compare(u, torsion_closed_form(M_PI / 3), {0, 0});
  CHECK(cmp.rel_sup_err <= 7e-3);
}

TEST_CASE("hemisphere torsion peaks at log 2") {
  // closed form 2 log(cos(r/2)/cos(R/2)) evaluated at r = 0, R = pi/2
  const TriangleMesh& mesh = lane_emden::testing::hemisphere_h03();
  Solver solver(mesh);
  auto [u, report] = solver.torsion();
  CHECK(std::abs(report.max_value - std::log(2.0)) <= 5e-3);
}

TEST_CASE("sublinear at p = 0 reproduces the torsion solve") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  auto [ut, rt] = solver.torsion();
  auto [us, rs] = solver.sublinear(0.0);
  double diff = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    diff = std::max(diff, std::abs(ut.values[i] - us.values[i]));
  }
  CHECK(diff <= 10 * solver.options().tol_fix * rt.max_value + 1e-12);
}

TEST_CASE("sublinear solutions are independent of the initialization") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  auto [torsion_field, tr] = solver.torsion();
  ScalarField ones{&mesh, std::vector<double>(mesh.n_vertices(), 1.0), {}};
  for (const int b : mesh.boundary_vertices) ones.values[b] = 0.0;

  auto [ua, ra] = solver.sublinear(0.5, &torsion_field);
  auto [ub, rb] = solver.sublinear(0.5, &ones);
  double diff = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    diff = std::max(diff, std::abs(ua.values[i] - ub.values[i]));
  }
  CHECK(diff <= 1e-8);
}

TEST_CASE("sublinear solutions decrease radially on the ball") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  auto [u, report] = solver.sublinear(0.5);

  // collect vertices in a narrow angular sector and sort by radius
  std::map<double, double> along_ray;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const PlanarPoint q = mesh.vertices[i];
    const double r = norm(q);
    if (r < 1e-12) continue;
    const double ang = std::atan2(q.Y, q.X);
    if (std::abs(ang - 0.4) < 0.15) along_ray[r] = u.values[i];
  }
  REQUIRE(along_ray.size() >= 5);
  double prev = u.max_value() * 1.001;
  for (const auto& [r, value] : along_ray) {
    CHECK(value <= prev + 1e-6 * report.max_value);
    prev = value;
  }
}

TEST_CASE("solutions on the ball are radially symmetric") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  auto [u, report] = solver.sublinear(0.5);
  // coefficient of variation over thin geodesic annuli, after removing the
  // radial trend across the bin width (the field itself varies with r)
  const double R = M_PI / 4;
  for (double r0 = 0.2 * R; r0 < 0.8 * R; r0 += 0.1 * R) {
    std::vector<std::pair<double, double>> samples;  // (r, u)
    for (int i = 0; i < mesh.n_vertices(); ++i) {
      const double r = geodesic_distance(stereo_lift(mesh.vertices[i]), {0, 0, -1});
      if (std::abs(r - r0) < mesh.h) samples.push_back({r, u.values[i]});
    }
    REQUIRE(samples.size() >= 8);
    double sr = 0, su = 0, srr = 0, sru = 0;
    for (const auto& [r, value] : samples) {
      sr += r; su += value; srr += r * r; sru += r * value;
    }
    const double n = static_cast<double>(samples.size());
    const double slope = (n * sru - sr * su) / (n * srr - sr * sr);
    const double intercept = (su - slope * sr) / n;
    double var = 0;
    for (const auto& [r, value] : samples) {
      var += std::pow(value - (intercept + slope * r), 2);
    }
    const double mean = su / n;
    CHECK(std::sqrt(var / n) / mean <= 1e-2);
  }
}

TEST_CASE("hemisphere eigenpair") {
  const TriangleMesh& mesh = lane_emden::testing::hemisphere_h03();
  Solver solver(mesh);
  const EigenResult e = solver.eigen();
  CHECK(std::abs(e.lambda1 - 2.0) <= 5e-3);
  CHECK(e.u1.max_value() == doctest::Approx(1.0));

  double sup = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const double s = norm2(mesh.vertices[i]);
    const double exact = (1.0 - s) / (1.0 + s);
    sup = std::max(sup, std::abs(e.u1.values[i] - exact));
    if (!mesh.is_boundary[i]) CHECK(e.u1.values[i] > 0);
  }
  CHECK(sup <= 5e-3);

  // the reported eigenvalue is the Rayleigh quotient of the returned vector
  const FemSystem& sys = solver.system();
  const std::vector<double> x = sys.restrict_free(e.u1.values);
  const double rq = sys.K_ff.quadratic_form(x) / sys.Mrho_ff.quadratic_form(x);
  CHECK(std::abs(rq - e.lambda1) <= 1e-10 * e.lambda1);
}

TEST_CASE("Rayleigh quotients of random trial vectors dominate lambda1") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  const EigenResult e = solver.eigen();
  const FemSystem& sys = solver.system();
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> y(sys.free_vertices.size());
    for (double& v : y) v = rng.uniform(-1, 1);
    const double rq = sys.K_ff.quadratic_form(y) / sys.Mrho_ff.quadratic_form(y);
    CHECK(rq >= e.lambda1 - 1e-8);
  }
}

TEST_CASE("small caps approach the Euclidean eigenvalue") {
  const TriangleMesh mesh = build_mesh(GeodesicBall{{0, 0, -1}, 0.1}, 0.0025);
  Solver solver(mesh);
  const EigenResult e = solver.eigen();
  const double euclid = std::pow(2.404825557695773 / 0.1, 2);
  CHECK(std::abs(e.lambda1 - euclid) <= 0.01 * euclid);
}

TEST_CASE("superlinear solve matches the shooting oracle") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  auto [u, report] = solver.superlinear(2.0);
  const CompareResult cmp = compare(u, radial_shoot(M_PI / 4, 2.0), {0, 0});
  CHECK(cmp.rel_sup_err <= 5e-3);
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (!mesh.is_boundary[i]) CHECK(u.values[i] > 0);
  }
}

TEST_CASE("superlinear solutions near p = 1 track the eigenfunction") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  const EigenResult e = solver.eigen();
  auto [u, report] = solver.superlinear(1.01);
  const double m = u.max_value();
  double d = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    d = std::max(d, std::abs(u.values[i] / m - e.u1.values[i]));
  }
  CHECK(d <= 0.05);
}

TEST_CASE("exponents beyond 3 need the experimental flag") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver plain(mesh);
  CHECK_THROWS_AS(plain.superlinear(4.0), Uncertified);

  SolveOptions opts;
  opts.experimental = true;
  Solver experimental(mesh, opts);
  auto [u, report] = experimental.superlinear(4.0);
  CHECK(report.uncertified);
  CHECK(report.max_value > 0);
}

TEST_CASE("sweep diagnostics") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  CHECK_THROWS_AS(solver.sweep({1.1, 0.9}), Error);
  CHECK_THROWS_AS(solver.sweep({0.9, 3.5}), Uncertified);

  const std::vector<SweepEntry> entries = solver.sweep({1.0});
  REQUIRE(entries.size() == 1);
  CHECK(entries.front().converged);
  CHECK(entries.front().D == doctest::Approx(0.0));
}

TEST_CASE("sweep records per-exponent failures and continues") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  SolveOptions opts;
  opts.max_outer = 120;  // enough for p = 0.5, hopeless for p = 0.99
  Solver solver(mesh, opts);
  const std::vector<SweepEntry> entries = solver.sweep({0.5, 0.99, 1.0});
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].converged);
  CHECK_FALSE(entries[1].converged);
  CHECK(entries[1].error.find("stalled") != std::string::npos);
  CHECK(entries[2].converged);
}

TEST_CASE("torsion error decreases under refinement") {
  const double exact = std::log(4.0 / 3.0);
  double errors[2];
  int k = 0;
  for (const double h : {0.05, 0.025}) {
    const TriangleMesh mesh = build_mesh(GeodesicBall{{0, 0, -1}, M_PI / 3}, h);
    Solver solver(mesh);
    auto [u, report] = solver.torsion();
    const CompareResult cmp = compare(u, torsion_closed_form(M_PI / 3), {0, 0});
    errors[k++] = cmp.sup_err;
    (void)exact;
  }
  CHECK(errors[0] / errors[1] >= std::pow(2.0, 1.5));
}

TEST_SUITE_END();
