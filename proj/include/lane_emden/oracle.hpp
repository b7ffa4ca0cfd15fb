#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "lane_emden/field.hpp"

namespace lane_emden {

// Radial profile u(r) on a geodesic ball of radius R, on an increasing grid
// r in [0, R] with nodal derivatives for cubic Hermite interpolation.
struct RadialSolution {
  double R = 0;
  double p = 0;
  double lambda = std::numeric_limits<double>::quiet_NaN();  // p = 1 only
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;

  double value(double radius) const;
  double deriv(double radius) const;
};

// Torsion profile u(r) = 2 log(cos(r/2) / cos(R/2)), the radial solution of
// u'' + cot(r) u' = -1 with u'(0) = 0, u(R) = 0.
RadialSolution torsion_closed_form(double R, int n_grid = 2001);

// Shooting solution of u'' + cot(r) u' + u^p = 0 (or + lambda u for p = 1)
// with u'(0) = 0 and first zero at R. Shoots on the center value (p != 1) or
// on lambda (p = 1, normalized u(0) = 1).
RadialSolution radial_shoot(double R, double p, int n_grid = 4001);

struct CompareResult {
  double sup_err = 0;
  double l2_err = 0;
  double rel_sup_err = 0;
};

// Evaluates the radial profile at the geodesic radius of every vertex and
// returns the discrepancies against the nodal field. The mesh must be the
// geodesic ball of radius radial.R centered at the lift of center.
CompareResult compare(const ScalarField& mesh_solution, const RadialSolution& radial,
                      PlanarPoint center);

// Hessian eigenvalues of the transformed profile v = g(u) of a radial
// function: radial direction v''(r), tangential direction v'(r) cot(r).
// Uses g(s) = s^{(1-p)/2} for p != 1 and g = log for p = 1.
struct RadialHessianEigs {
  double radial = 0;
  double tangential = 0;
};
RadialHessianEigs radial_transform_eigs(const RadialSolution& sol, double radius);

// CSV dump: "# R=<R> p=<p> lambda=<lambda>" then "r,u,u_prime" rows.
void write_radial_csv(std::ostream& out, const RadialSolution& sol);

}  // namespace lane_emden
