#include <doctest.h>

#include <cmath>

#include "lane_emden/oracle.hpp"
#include "lane_emden/solver.hpp"
#include "test_helpers.hpp"

using namespace lane_emden;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("torsion closed form") {
  const RadialSolution sol = torsion_closed_form(M_PI / 3);
  CHECK(sol.u.front() == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
  CHECK(sol.u.back() == 0.0);
  CHECK(sol.du.front() == 0.0);

  // the hemisphere value of the same closed form is log 2
  const RadialSolution hemi = torsion_closed_form(M_PI / 2);
  CHECK(hemi.u.front() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // residual of u'' + cot(r) u' + 1 along the grid, with the analytic second
  // derivative -sec^2(r/2)/2
  for (std::size_t i = 1; i + 1 < sol.r.size(); ++i) {
    const double r = sol.r[i];
    const double upp = -0.5 / std::pow(std::cos(0.5 * r), 2);
    const double residual = upp + sol.du[i] / std::tan(r) + 1.0;
    CHECK(std::abs(residual) <= 1e-12);
  }
}

TEST_CASE("shooting at p = 0 reproduces the closed form") {
  const RadialSolution shot = radial_shoot(M_PI / 3, 0.0);
  const RadialSolution exact = torsion_closed_form(M_PI / 3);
  double worst = 0;
  for (std::size_t i = 0; i < shot.r.size(); ++i) {
    worst = std::max(worst, std::abs(shot.u[i] - exact.value(shot.r[i])));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("eigen-shooting on the hemisphere") {
  const RadialSolution sol = radial_shoot(M_PI / 2, 1.0);
  CHECK(std::abs(sol.lambda - 2.0) <= 1e-8);
  for (std::size_t i = 0; i < sol.r.size(); i += 50) {
    CHECK(std::abs(sol.u[i] / sol.u.front() - std::cos(sol.r[i])) <= 1e-7);
  }
}

TEST_CASE("eigen-shooting approaches the Euclidean limit on small caps") {
  const RadialSolution sol = radial_shoot(0.1, 1.0);
  const double euclid = std::pow(2.404825557695773 / 0.1, 2);
  CHECK(std::abs(sol.lambda - euclid) <= 0.005 * euclid);
}

TEST_CASE("first eigenvalue decreases with the cap radius") {
  double prev = std::numeric_limits<double>::infinity();
  for (const double R : {0.3, 0.6, 0.9, 1.2, M_PI_2}) {
    const double lambda = radial_shoot(R, 1.0).lambda;
    CHECK(lambda < prev);
    prev = lambda;
  }
}

TEST_CASE("shot profiles satisfy the boundary and center conditions") {
  for (const double p : {0.5, 2.0, 3.0}) {
    const RadialSolution sol = radial_shoot(M_PI / 4, p);
    CHECK(std::abs(sol.u.back()) <= 1e-10 * sol.u.front());
    CHECK(std::abs(sol.du.front()) <= 1e-8);
    for (std::size_t i = 1; i + 1 < sol.u.size(); ++i) {
      CHECK(sol.u[i] > 0);
      CHECK(sol.u[i] <= sol.u[i - 1] + 1e-12 * sol.u.front());
    }
  }
}

TEST_CASE("transformed profiles carry the expected sign along both directions") {
  // radial eigenvalue v''(r), tangential eigenvalue v'(r) cot(r)
  for (const double p : {0.0, 0.5}) {
    const RadialSolution sol =
        p == 0.0 ? torsion_closed_form(M_PI / 4) : radial_shoot(M_PI / 4, p);
    for (double r = 0.02; r < M_PI / 4 - 0.02; r += 0.02) {
      const RadialHessianEigs eigs = radial_transform_eigs(sol, r);
      CHECK(eigs.radial < 0);
      CHECK(eigs.tangential < 0);
    }
  }
  for (const double p : {2.0, 3.0}) {
    const RadialSolution sol = radial_shoot(M_PI / 4, p);
    for (double r = 0.02; r < M_PI / 4 - 0.02; r += 0.02) {
      const RadialHessianEigs eigs = radial_transform_eigs(sol, r);
      CHECK(eigs.radial > 0);
      CHECK(eigs.tangential > 0);
    }
  }
}

TEST_CASE("compare is exact on its own interpolant") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  const RadialSolution sol = radial_shoot(M_PI / 4, 2.0);
  ScalarField field{&mesh, std::vector<double>(mesh.n_vertices()), {}};
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const double r = std::min(
        geodesic_distance(stereo_lift(mesh.vertices[i]), {0, 0, -1}), sol.R);
    field.values[i] = sol.value(r);
  }
  const CompareResult cmp = compare(field, sol, {0, 0});
  CHECK(cmp.sup_err <= 1e-8);
  CHECK(cmp.l2_err <= 1e-8);
}

TEST_CASE("compare rejects mismatched domains") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  ScalarField field{&mesh, std::vector<double>(mesh.n_vertices(), 0.0), {}};
  CHECK_THROWS_AS(compare(field, torsion_closed_form(M_PI / 3), {0, 0}),
                  DomainMismatch);
}

TEST_CASE("FEM fields match the radial oracles") {
  const TriangleMesh& mesh = lane_emden::testing::ball_pi4_h02();
  Solver solver(mesh);
  auto [u2, r2] = solver.superlinear(2.0);
  CHECK(compare(u2, radial_shoot(M_PI / 4, 2.0), {0, 0}).rel_sup_err <= 1e-2);
  auto [u05, r05] = solver.sublinear(0.5);
  CHECK(compare(u05, radial_shoot(M_PI / 4, 0.5), {0, 0}).rel_sup_err <= 1e-2);
}

TEST_SUITE_END();
