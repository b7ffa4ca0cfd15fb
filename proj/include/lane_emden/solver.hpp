#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lane_emden/fem.hpp"
#include "lane_emden/field.hpp"

namespace lane_emden {

struct SolveOptions {
  double tol_lin = 1e-12;   // relative CG residual
  double tol_fix = 1e-10;   // relative sup-norm update of outer iterations
  int max_outer = 500;
  int max_cg = 50000;
  double omega = 0.8;           // Picard damping, sublinear
  double omega_super = 1.0;     // damping of the normalized iteration
  double continuation_step = 0.1;
  bool continuation = true;     // start superlinear solves from p = 1
  bool experimental = false;    // required for p > 3
  double eigen_tol = 1e-12;     // relative Rayleigh-quotient increment
  double residual_tol = 1e-8;   // nonlinear residual acceptance
};

struct SolveReport {
  double p = 0;
  double max_value = 0;
  int iterations = 0;
  double residual_norm = 0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double wall_time = 0;  // seconds
  bool uncertified = false;
};

struct SweepEntry {
  double p = 0;
  SolveReport report;
  double D = std::numeric_limits<double>::quiet_NaN();  // ||u/max u - u1||_inf
  bool converged = false;
  std::string error;
};

struct EigenResult {
  double lambda1 = 0;
  ScalarField u1;
  SolveReport report;
};

// Finite-element solver for the weighted planar problems
//   -Laplace(u) = rho^2 u^p          (0 <= p, p != 1)
//   -Laplace(u1) = lambda1 rho^2 u1  (p = 1)
// with zero Dirichlet data. Assembles once per mesh; all solves reuse the
// Dirichlet-eliminated blocks.
class Solver {
 public:
  explicit Solver(const TriangleMesh& mesh, SolveOptions opts = {});

  const FemSystem& system() const { return sys_; }
  const SolveOptions& options() const { return opts_; }

  // -Laplace(u) = rho^2 (p = 0 case)
  std::pair<ScalarField, SolveReport> torsion();

  // damped Picard iteration, 0 <= p < 1; init defaults to the torsion field
  std::pair<ScalarField, SolveReport> sublinear(double p,
                                                const ScalarField* init = nullptr);

  // smallest Dirichlet eigenpair via inverse power iteration;
  // eigenfunction normalized to max = 1
  EigenResult eigen();

  // normalized fixed-point iteration for 1 < p (<= 3 unless experimental),
  // with optional continuation in p from the eigenfunction
  std::pair<ScalarField, SolveReport> superlinear(double p,
                                                  const ScalarField* init = nullptr);

  // regime dispatch: p < 1-1e-6 sublinear, |p-1| <= 1e-6 eigen, else
  // superlinear
  std::pair<ScalarField, SolveReport> solve(double p,
                                            const ScalarField* init = nullptr);

  // warm-started sweep over sorted exponents with the convergence diagnostic
  // D(p) = ||u_p / max u_p - u1||_inf; failures are recorded per entry
  std::vector<SweepEntry> sweep(const std::vector<double>& p_list);

 private:
  std::vector<double> solve_poisson(const std::vector<double>& rhs_full,
                                    std::vector<double>* warm, int* iters,
                                    double* residual) const;

  const TriangleMesh& mesh_;
  SolveOptions opts_;
  FemSystem sys_;
  std::optional<EigenResult> eigen_cache_;
};

}  // namespace lane_emden
