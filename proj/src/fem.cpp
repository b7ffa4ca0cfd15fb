#include "lane_emden/fem.hpp"

#include <cmath>

namespace lane_emden {

namespace {

// degree-2 interior quadrature rule on the reference triangle
constexpr double qa = 2.0 / 3.0, qb = 1.0 / 6.0;
constexpr double quad_bary[3][3] = {
    {qa, qb, qb},
    {qb, qa, qb},
    {qb, qb, qa},
};

CsrMatrix restrict_matrix(const CsrMatrix& A, const std::vector<int>& full_to_free,
                          int n_free) {
  std::vector<CsrMatrix::Triplet> trips;
  for (int r = 0; r < A.n; ++r) {
    const int fr = full_to_free[r];
    if (fr < 0) continue;
    for (int k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k) {
      const int fc = full_to_free[A.cols[k]];
      if (fc < 0) continue;
      trips.push_back({fr, fc, A.vals[k]});
    }
  }
  return CsrMatrix::from_triplets(n_free, std::move(trips));
}

}  // namespace

std::vector<double> FemSystem::restrict_free(const std::vector<double>& full) const {
  std::vector<double> out(free_vertices.size());
  for (std::size_t i = 0; i < free_vertices.size(); ++i) {
    out[i] = full[free_vertices[i]];
  }
  return out;
}

std::vector<double> FemSystem::extend(const std::vector<double>& free_values) const {
  std::vector<double> out(full_to_free.size(), 0.0);
  for (std::size_t i = 0; i < free_vertices.size(); ++i) {
    out[free_vertices[i]] = free_values[i];
  }
  return out;
}

FemSystem assemble(const TriangleMesh& mesh) {
  const int nv = mesh.n_vertices();
  std::vector<CsrMatrix::Triplet> tk, tmr, tm;
  tk.reserve(9 * mesh.n_triangles());
  tmr.reserve(9 * mesh.n_triangles());
  tm.reserve(9 * mesh.n_triangles());

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const PlanarPoint p0 = mesh.vertices[tri[0]];
    const PlanarPoint p1 = mesh.vertices[tri[1]];
    const PlanarPoint p2 = mesh.vertices[tri[2]];
    const double area = 0.5 * cross(p1 - p0, p2 - p0);

    // P1 gradient coefficients: grad(lambda_i) = (b_i, c_i) / (2 area)
    const double b[3] = {p1.Y - p2.Y, p2.Y - p0.Y, p0.Y - p1.Y};
    const double c[3] = {p2.X - p1.X, p0.X - p2.X, p1.X - p0.X};

    double rho2[3];
    for (int q = 0; q < 3; ++q) {
      const PlanarPoint xq =
          quad_bary[q][0] * p0 + quad_bary[q][1] * p1 + quad_bary[q][2] * p2;
      rho2[q] = conformal_factor(xq);
    }

    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double kij = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
        const double mij = area * (i == j ? 1.0 / 6.0 : 1.0 / 12.0);
        double mrij = 0;
        for (int q = 0; q < 3; ++q) {
          mrij += (area / 3.0) * rho2[q] * quad_bary[q][i] * quad_bary[q][j];
        }
        tk.push_back({tri[i], tri[j], kij});
        tm.push_back({tri[i], tri[j], mij});
        tmr.push_back({tri[i], tri[j], mrij});
      }
    }
  }

  FemSystem sys;
  sys.K = CsrMatrix::from_triplets(nv, std::move(tk));
  sys.M = CsrMatrix::from_triplets(nv, std::move(tm));
  sys.M_rho = CsrMatrix::from_triplets(nv, std::move(tmr));

  sys.full_to_free.assign(nv, -1);
  for (int i = 0; i < nv; ++i) {
    if (!mesh.is_boundary[i]) {
      sys.full_to_free[i] = static_cast<int>(sys.free_vertices.size());
      sys.free_vertices.push_back(i);
    }
  }
  const int nf = static_cast<int>(sys.free_vertices.size());
  sys.K_ff = restrict_matrix(sys.K, sys.full_to_free, nf);
  sys.Mrho_ff = restrict_matrix(sys.M_rho, sys.full_to_free, nf);
  return sys;
}

double integrate_rho_power(const TriangleMesh& mesh,
                           const std::vector<double>& u, double exponent) {
  double total = 0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const PlanarPoint p0 = mesh.vertices[tri[0]];
    const PlanarPoint p1 = mesh.vertices[tri[1]];
    const PlanarPoint p2 = mesh.vertices[tri[2]];
    const double area = mesh.triangle_area(t);
    for (int q = 0; q < 3; ++q) {
      const PlanarPoint xq =
          quad_bary[q][0] * p0 + quad_bary[q][1] * p1 + quad_bary[q][2] * p2;
      const double uq = quad_bary[q][0] * u[tri[0]] + quad_bary[q][1] * u[tri[1]] +
                        quad_bary[q][2] * u[tri[2]];
      total += (area / 3.0) * conformal_factor(xq) *
               std::pow(std::max(uq, 0.0), exponent);
    }
  }
  return total;
}

}  // namespace lane_emden
