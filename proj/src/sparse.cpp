#include "lane_emden/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lane_emden {

CsrMatrix CsrMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  CsrMatrix m;
  m.n = n;
  m.row_offsets.assign(n + 1, 0);
  m.cols.reserve(triplets.size());
  m.vals.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    std::size_t j = i;
    double sum = 0;
    while (j < triplets.size() && triplets[j].r == triplets[i].r &&
           triplets[j].c == triplets[i].c) {
      sum += triplets[j].v;
      ++j;
    }
    m.cols.push_back(triplets[i].c);
    m.vals.push_back(sum);
    ++m.row_offsets[triplets[i].r + 1];
    i = j;
  }
  for (int r = 0; r < n; ++r) m.row_offsets[r + 1] += m.row_offsets[r];
  return m;
}

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(n, 0.0);
  for (int r = 0; r < n; ++r) {
    double s = 0;
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      s += vals[k] * x[cols[k]];
    }
    y[r] = s;
  }
}

std::vector<double> CsrMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y;
  multiply(x, y);
  return y;
}

double CsrMatrix::quadratic_form(const std::vector<double>& x) const {
  double q = 0;
  for (int r = 0; r < n; ++r) {
    double s = 0;
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      s += vals[k] * x[cols[k]];
    }
    q += x[r] * s;
  }
  return q;
}

double CsrMatrix::symmetry_error() const {
  std::map<std::pair<int, int>, double> entries;
  for (int r = 0; r < n; ++r) {
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      entries[{r, cols[k]}] = vals[k];
    }
  }
  double err = 0;
  for (const auto& [idx, v] : entries) {
    const auto it = entries.find({idx.second, idx.first});
    const double vt = it == entries.end() ? 0.0 : it->second;
    err = std::max(err, std::abs(v - vt));
  }
  return err;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_vec(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double sup_norm(const std::vector<double>& a) {
  double s = 0;
  for (const double v : a) s = std::max(s, std::abs(v));
  return s;
}

CgResult cg_solve(const CsrMatrix& A, const std::vector<double>& b,
                  std::vector<double>& x, double tol, int max_iter) {
  const int n = A.n;
  x.resize(n, 0.0);
  const double bnorm = norm2_vec(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    return {0, 0.0};
  }

  std::vector<double> diag(n, 1.0);
  for (int r = 0; r < n; ++r) {
    for (int k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k) {
      if (A.cols[k] == r && A.vals[k] != 0.0) diag[r] = A.vals[k];
    }
  }

  std::vector<double> r = A.multiply(x);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rnorm = norm2_vec(r);
  if (rnorm <= tol * bnorm) return {0, rnorm / bnorm};

  std::vector<double> z(n), p(n), q(n);
  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = dot(r, z);

  for (int it = 1; it <= max_iter; ++it) {
    A.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0)) {
      throw NoConvergence("matrix not positive definite in cg_solve");
    }
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    rnorm = norm2_vec(r);
    if (rnorm <= tol * bnorm) return {it, rnorm / bnorm};
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw NoConvergence("cg_solve: " + std::to_string(max_iter) +
                      " iterations, residual " + std::to_string(rnorm / bnorm));
}

}  // namespace lane_emden
