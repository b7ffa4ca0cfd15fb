#include "lane_emden/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lane_emden {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<double> pow_plus(const std::vector<double>& u, double p) {
  if (p == 0.0) return std::vector<double>(u.size(), 1.0);  // source of (P_0)
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = u[i] > 0 ? std::pow(u[i], p) : 0.0;
  }
  return out;
}

FieldMeta solution_meta(double p) {
  return {Quantity::u, p, 1.0, std::numeric_limits<double>::quiet_NaN()};
}

double rel_sup_update(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0 ? num / den : num;
}

}  // namespace

Solver::Solver(const TriangleMesh& mesh, SolveOptions opts)
    : mesh_(mesh), opts_(opts), sys_(assemble(mesh)) {}

std::vector<double> Solver::solve_poisson(const std::vector<double>& rhs_full,
                                          std::vector<double>* warm, int* iters,
                                          double* residual) const {
  std::vector<double> b = sys_.restrict_free(rhs_full);
  std::vector<double> x =
      warm && warm->size() == b.size() ? *warm : std::vector<double>(b.size(), 0.0);
  const CgResult cg = cg_solve(sys_.K_ff, b, x, opts_.tol_lin, opts_.max_cg);
  if (warm) *warm = x;
  if (iters) *iters += cg.iterations;
  if (residual) *residual = cg.residual;
  return sys_.extend(x);
}

std::pair<ScalarField, SolveReport> Solver::torsion() {
  const auto t0 = clock_type::now();
  SolveReport report;
  report.p = 0;

  std::vector<double> ones(mesh_.n_vertices(), 1.0);
  const std::vector<double> rhs = sys_.M_rho.multiply(ones);
  double residual = 0;
  const std::vector<double> u =
      solve_poisson(rhs, nullptr, &report.iterations, &residual);

  ScalarField field{&mesh_, u, solution_meta(0.0)};
  report.residual_norm = residual;
  report.max_value = field.max_value();
  report.wall_time = seconds_since(t0);
  return {std::move(field), report};
}

std::pair<ScalarField, SolveReport> Solver::sublinear(double p,
                                                      const ScalarField* init) {
  if (!(p >= 0 && p < 1)) {
    throw Error("sublinear solver requires 0 <= p < 1, got " + std::to_string(p));
  }
  const auto t0 = clock_type::now();
  SolveReport report;
  report.p = p;

  std::vector<double> u;
  if (init) {
    u = init->values;
    for (int b : mesh_.boundary_vertices) u[b] = 0.0;
  } else {
    u = torsion().first.values;
  }

  std::vector<double> warm = sys_.restrict_free(u);
  bool converged = false;
  for (int k = 0; k < opts_.max_outer; ++k) {
    ++report.iterations;
    const std::vector<double> rhs = sys_.M_rho.multiply(pow_plus(u, p));
    double residual = 0;
    const std::vector<double> w = solve_poisson(rhs, &warm, nullptr, &residual);
    std::vector<double> next(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      next[i] = (1.0 - opts_.omega) * u[i] + opts_.omega * w[i];
    }
    const double update = rel_sup_update(next, u);
    u.swap(next);
    if (update < opts_.tol_fix) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoConvergence("sublinear Picard iteration stalled at p = " +
                        std::to_string(p) + " after " +
                        std::to_string(opts_.max_outer) + " iterations");
  }

  const std::vector<double> lhs = sys_.restrict_free(sys_.K.multiply(u));
  const std::vector<double> rhs = sys_.restrict_free(sys_.M_rho.multiply(pow_plus(u, p)));
  std::vector<double> diff(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) diff[i] = lhs[i] - rhs[i];
  report.residual_norm = norm2_vec(diff) / std::max(norm2_vec(rhs), 1e-300);

  ScalarField field{&mesh_, std::move(u), solution_meta(p)};
  report.max_value = field.max_value();
  report.wall_time = seconds_since(t0);
  return {std::move(field), report};
}

EigenResult Solver::eigen() {
  if (eigen_cache_) return *eigen_cache_;
  const auto t0 = clock_type::now();
  SolveReport report;
  report.p = 1;

  const int nf = static_cast<int>(sys_.free_vertices.size());
  std::vector<double> x(nf, 1.0);
  {
    const double s = std::sqrt(sys_.Mrho_ff.quadratic_form(x));
    for (double& v : x) v /= s;
  }

  double lambda = 0, lambda_prev = -1;
  double eigres = 1.0;
  bool converged = false;
  for (int k = 0; k < opts_.max_outer; ++k) {
    const std::vector<double> y = sys_.Mrho_ff.multiply(x);
    const double inner_tol = std::max(1e-13, std::min(1e-2, 1e-2 * eigres));
    std::vector<double> z = x;  // warm start with the previous iterate
    cg_solve(sys_.K_ff, y, z, inner_tol, opts_.max_cg);
    ++report.iterations;

    const double zkz = sys_.K_ff.quadratic_form(z);
    const double zmz = sys_.Mrho_ff.quadratic_form(z);
    lambda = zkz / zmz;

    // eigenresidual ||K z - lambda M z|| / ||lambda M z||
    const std::vector<double> kz = sys_.K_ff.multiply(z);
    const std::vector<double> mz = sys_.Mrho_ff.multiply(z);
    double num = 0, den = 0;
    for (int i = 0; i < nf; ++i) {
      const double r = kz[i] - lambda * mz[i];
      num += r * r;
      den += (lambda * mz[i]) * (lambda * mz[i]);
    }
    eigres = std::sqrt(num / den);

    const double s = std::sqrt(zmz);
    for (int i = 0; i < nf; ++i) x[i] = z[i] / s;

    if (k > 0 && std::abs(lambda - lambda_prev) < opts_.eigen_tol * std::abs(lambda)) {
      converged = true;
      break;
    }
    lambda_prev = lambda;
  }
  if (!converged) {
    throw NoConvergence("inverse power iteration stalled after " +
                        std::to_string(opts_.max_outer) + " iterations");
  }

  std::vector<double> u = sys_.extend(x);
  // fix the sign so the sup is attained by a positive value, then scale to 1
  double extreme = 0;
  for (const double v : u) {
    if (std::abs(v) > std::abs(extreme)) extreme = v;
  }
  for (double& v : u) v /= extreme;

  EigenResult result;
  result.lambda1 = lambda;
  result.u1 = ScalarField{&mesh_, std::move(u),
                          FieldMeta{Quantity::eigenfunction, 1.0, 1.0, lambda}};
  report.lambda = lambda;
  report.residual_norm = eigres;
  report.max_value = 1.0;
  report.wall_time = seconds_since(t0);
  result.report = report;
  eigen_cache_ = result;
  return result;
}

std::pair<ScalarField, SolveReport> Solver::superlinear(double p,
                                                        const ScalarField* init) {
  if (!(p > 1)) {
    throw Error("superlinear solver requires p > 1, got " + std::to_string(p));
  }
  if (p > 3 && !opts_.experimental) {
    throw Uncertified("p = " + std::to_string(p) +
                      " is beyond the certified range (1, 3]; pass the "
                      "experimental flag to proceed");
  }
  const auto t0 = clock_type::now();
  SolveReport report;
  report.p = p;
  report.uncertified = p > 3;

  // One normalized fixed-point pass at a fixed exponent. The rescaling keeps
  // the constrained-minimization normalization exact on the discrete level:
  // a discrete solution of K u = M_rho u^p is a fixed point.
  std::vector<double> warm;
  auto iterate = [&](std::vector<double> u, double q, double tol, int max_iter,
                     bool* ok) -> std::vector<double> {
    for (int k = 0; k < max_iter; ++k) {
      ++report.iterations;
      const std::vector<double> uq = pow_plus(u, q);
      const std::vector<double> rhs = sys_.M_rho.multiply(uq);
      double residual = 0;
      const std::vector<double> w =
          solve_poisson(rhs, &warm, nullptr, &residual);

      const std::vector<double> wq = pow_plus(w, q);
      const double constraint = dot(w, sys_.M_rho.multiply(wq));
      if (!(constraint > 0)) {
        throw NoConvergence("normalized iteration lost positivity");
      }
      const double s = std::pow(constraint, 1.0 / (q + 1.0));
      const double energy = sys_.K.quadratic_form(w) / (s * s);
      const double scale = std::pow(energy, 1.0 / (q - 1.0)) / s;

      std::vector<double> next(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double cand = scale * w[i];
        next[i] = (1.0 - opts_.omega_super) * u[i] + opts_.omega_super * cand;
      }
      const double update = rel_sup_update(next, u);
      u.swap(next);
      if (update < tol) {
        if (ok) *ok = true;
        return u;
      }
    }
    if (ok) *ok = false;
    return u;
  };

  std::vector<double> u;
  if (init) {
    u = init->values;
    for (int b : mesh_.boundary_vertices) u[b] = 0.0;
    for (double& v : u) v = std::max(v, 0.0);
  } else if (opts_.continuation) {
    u = eigen().u1.values;
    double q = 1.0;
    while (q + opts_.continuation_step < p) {
      q += opts_.continuation_step;
      bool ok = false;
      u = iterate(std::move(u), q, std::max(opts_.tol_fix, 1e-6), opts_.max_outer, &ok);
      if (!ok) {
        throw NoConvergence("continuation stalled at p = " + std::to_string(q));
      }
    }
  } else {
    u = torsion().first.values;
  }

  bool ok = false;
  u = iterate(std::move(u), p, opts_.tol_fix, opts_.max_outer, &ok);
  if (!ok) {
    throw NoConvergence("normalized iteration stalled at p = " + std::to_string(p));
  }

  const std::vector<double> lhs = sys_.restrict_free(sys_.K.multiply(u));
  const std::vector<double> rhs = sys_.restrict_free(sys_.M_rho.multiply(pow_plus(u, p)));
  std::vector<double> diff(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) diff[i] = lhs[i] - rhs[i];
  report.residual_norm = norm2_vec(diff) / std::max(norm2_vec(rhs), 1e-300);
  if (report.residual_norm > opts_.residual_tol) {
    throw NoConvergence("superlinear residual " +
                        std::to_string(report.residual_norm) + " above tolerance");
  }

  ScalarField field{&mesh_, std::move(u), solution_meta(p)};
  report.max_value = field.max_value();
  report.wall_time = seconds_since(t0);
  return {std::move(field), report};
}

std::pair<ScalarField, SolveReport> Solver::solve(double p, const ScalarField* init) {
  if (p < 0) throw Error("negative exponent");
  if (p < 1.0 - 1e-6) return sublinear(p, init);
  if (std::abs(p - 1.0) <= 1e-6) {
    EigenResult e = eigen();
    return {e.u1, e.report};
  }
  return superlinear(p, init);
}

std::vector<SweepEntry> Solver::sweep(const std::vector<double>& p_list) {
  if (!std::is_sorted(p_list.begin(), p_list.end())) {
    throw Error("sweep expects a sorted exponent list");
  }
  for (const double p : p_list) {
    if (p < 0) throw Error("negative exponent in sweep");
    if (p > 3 && !opts_.experimental) {
      throw Uncertified("sweep exponent " + std::to_string(p) +
                        " beyond 3 requires the experimental flag");
    }
  }

  const EigenResult e = eigen();
  std::vector<SweepEntry> entries;
  std::optional<ScalarField> prev_sub, prev_super;
  for (const double p : p_list) {
    SweepEntry entry;
    entry.p = p;
    try {
      const ScalarField* init = nullptr;
      if (p < 1.0 - 1e-6 && prev_sub) init = &*prev_sub;
      if (p > 1.0 + 1e-6 && prev_super) init = &*prev_super;
      auto [u, report] = solve(p, init);
      entry.report = report;
      entry.converged = true;

      const double m = u.max_value();
      double d = 0;
      for (int i = 0; i < mesh_.n_vertices(); ++i) {
        d = std::max(d, std::abs(u.values[i] / m - e.u1.values[i]));
      }
      entry.D = d;

      if (p < 1.0 - 1e-6) {
        prev_sub = u;
      } else if (p > 1.0 + 1e-6) {
        prev_super = u;
      }
    } catch (const Error& err) {
      entry.converged = false;
      entry.error = err.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace lane_emden
