#pragma once

#include <optional>
#include <vector>

#include "lane_emden/field.hpp"

namespace lane_emden {

// Covariant Hessian of a field at a vertex, expressed in an orthonormal
// frame of the round metric, together with its invariants. The fitted chart
// gradient is kept for level-curve and critical-point work.
struct HessianSample {
  double A = 0, B = 0, C = 0;   // frame components of the Hessian
  double phi = 0;               // det = A C - B^2
  double trace = 0;             // A + C = Laplace-Beltrami of the field
  double eig_min = 0, eig_max = 0;
  double grad_X = 0, grad_Y = 0;  // chart derivatives of the field
  double grad_norm = 0;           // |grad|_g = sqrt(grad_X^2+grad_Y^2)/rho
  bool valid = false;
};

struct HessianField {
  const TriangleMesh* mesh = nullptr;
  std::vector<HessianSample> samples;

  const HessianSample& at(int vertex) const { return samples[vertex]; }
};

// Chart derivatives recovered by a weighted least-squares quadratic fit over
// the 2-ring patch of a vertex (weights: inverse squared distance).
struct ChartDerivatives {
  double vx = 0, vy = 0;
  double vxx = 0, vxy = 0, vyy = 0;
};

// Fits the patch of `vertex`, skipping non-finite field values. Returns
// nullopt when fewer than 6 usable neighbors remain AND some were skipped
// (singular field near the boundary); throws PatchDeficient when the mesh
// itself cannot supply 6 neighbors.
std::optional<ChartDerivatives> fit_quadratic_patch(const TriangleMesh& mesh,
                                                    const std::vector<double>& values,
                                                    int vertex);

// Covariant Hessian of v at every interior vertex with a usable patch:
// chart second derivatives from the patch fit, conformal Christoffel
// correction with the analytic gradient of (1/2) log rho^2, then rescaling
// by 1/rho^2 into the orthonormal frame. Boundary vertices and vertices
// whose patch touches singular values are left invalid.
HessianField covariant_hessian(const TriangleMesh& mesh, const ScalarField& v);

// Applies the Hessian quadratic form to a Euclidean unit direction, i.e.
// evaluates Hess(w, w) for the g-unit vector along dir.
double hessian_form(const HessianSample& sample, PlanarPoint dir);

// Covariant Hessian of v = g(u) by the chain rule
//   Hess v = g'(u) Hess u + g''(u) du (x) du,
// evaluated from the recovered Hessian of u. This sidesteps the loss of
// accuracy of direct fits of v near the boundary, where the transform is
// singular while u itself is smooth. g is s^{(1-p)/2} for |p-1| > 1e-6 and
// log s at p = 1.
HessianField transform_hessian(const HessianField& hess_u, const ScalarField& u,
                               double p);

}  // namespace lane_emden
