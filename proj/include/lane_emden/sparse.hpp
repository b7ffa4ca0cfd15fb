#pragma once

#include <vector>

#include "lane_emden/errors.hpp"

namespace lane_emden {

// Square symmetric matrix in compressed row storage.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_offsets;  // size n+1
  std::vector<int> cols;
  std::vector<double> vals;

  struct Triplet {
    int r, c;
    double v;
  };

  // Sums duplicate entries; rows sorted by column.
  static CsrMatrix from_triplets(int n, std::vector<Triplet> triplets);

  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  double quadratic_form(const std::vector<double>& x) const;  // x^T A x

  // max |A_ij - A_ji| over the stored pattern; for validation
  double symmetry_error() const;
};

struct CgResult {
  int iterations = 0;
  double residual = 0;  // relative to ||b||
};

// Jacobi-preconditioned conjugate gradients for SPD systems. x is used as the
// initial guess. Stops when ||b - Ax||_2 <= tol * ||b||_2; throws
// NoConvergence after max_iter.
CgResult cg_solve(const CsrMatrix& A, const std::vector<double>& b,
                  std::vector<double>& x, double tol, int max_iter);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2_vec(const std::vector<double>& a);
double sup_norm(const std::vector<double>& a);

}  // namespace lane_emden
