#pragma once

#include "lane_emden/mesh.hpp"
#include "lane_emden/sparse.hpp"

namespace lane_emden {

// Piecewise-linear FEM matrices on a planarized mesh:
//   K      Euclidean stiffness  (grad phi_i, grad phi_j)
//   M_rho  weighted mass        (rho^2 phi_i, phi_j), 3-point quadrature
//   M      plain mass           (phi_i, phi_j)
// Full-size matrices plus the Dirichlet-eliminated blocks on interior
// (free) vertices.
struct FemSystem {
  CsrMatrix K, M_rho, M;
  CsrMatrix K_ff, Mrho_ff;
  std::vector<int> free_vertices;  // ascending interior vertex ids
  std::vector<int> full_to_free;   // -1 at boundary vertices

  std::vector<double> restrict_free(const std::vector<double>& full) const;
  // zero at boundary vertices
  std::vector<double> extend(const std::vector<double>& free_values) const;
};

FemSystem assemble(const TriangleMesh& mesh);

// integral of rho^2 * (u_+)^exponent by the same 3-point rule, with u
// interpolated linearly
double integrate_rho_power(const TriangleMesh& mesh,
                           const std::vector<double>& u, double exponent);

}  // namespace lane_emden
