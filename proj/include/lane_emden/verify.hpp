#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lane_emden/domain.hpp"
#include "lane_emden/hessian.hpp"
#include "lane_emden/solver.hpp"

namespace lane_emden {

enum class Definiteness {
  negative_definite,
  positive_definite,
  indefinite,
  semidefinite_marginal,
};
const char* to_string(Definiteness d);

enum class TransformKind { power, log };
const char* to_string(TransformKind t);

enum class CritType { max, saddle, min, degenerate };
const char* to_string(CritType t);

// v = u^{(1-p)/2} for |p-1| > 1e-6, v = log u at p = 1. Boundary vertices
// carry 0 for p < 1 and are marked singular (infinite) otherwise.
ScalarField power_transform(const ScalarField& u, double p);

struct VerifyOptions {
  double exclusion_margin = -1;  // < 0: use 3h
  double delta = 0.15;           // boundary-layer band depth
  double max_delta_fraction = 0.8;  // of the inradius
  std::vector<double> level_fractions = {0.1, 0.25, 0.5, 0.75, 0.9};
  double eps_def_scale = 1e-8;   // epsilon_def = scale * max |H|
  double tau_kappa = 1e-6;
  double crit_factor = 2.0;      // eta_crit = crit_factor * h * max |grad u|
  std::uint64_t seed = 12345;
};

struct RankSummary {
  int rank0 = 0, rank1 = 0, rank2 = 0;
};

struct DefinitenessResult {
  Definiteness definiteness = Definiteness::semidefinite_marginal;
  RankSummary ranks;
  double min_abs_eig = 0;
  double min_abs_phi = 0;
  double epsilon_def = 0;
  int included = 0;
  bool trace_all_negative = false;
  bool trace_all_positive = false;
};

// Classifies the Hessian field over vertices with boundary distance >=
// exclusion_margin. Throws EmptyInterior when nothing is left.
DefinitenessResult definiteness_report(const HessianField& hess,
                                       const std::vector<double>& bdist,
                                       double exclusion_margin,
                                       double eps_def_scale = 1e-8);

struct LevelSample {
  PlanarPoint point;
  double kappa_g = 0;
};

struct LevelCurve {
  double c = 0;
  std::vector<LevelSample> samples;  // counterclockwise
  double kappa_min = 0;
  bool convex = false;
};

// Extracts {u = c} by marching triangles and evaluates the level-curve
// geodesic curvature -Hess u(tau,tau)/|grad u| at each segment midpoint.
// hess_u must be covariant_hessian(mesh, u).
LevelCurve level_curvature(const TriangleMesh& mesh, const ScalarField& u,
                           double c, const HessianField& hess_u);

struct CriticalPoint {
  PlanarPoint location;
  double grad_norm = 0;
  double eig1 = 0, eig2 = 0;  // Hessian eigenvalues of u
  CritType type = CritType::degenerate;
};

std::vector<CriticalPoint> critical_points(const TriangleMesh& mesh,
                                           const ScalarField& u,
                                           const HessianField& hess_u,
                                           double crit_factor = 2.0,
                                           double eps_def_scale = 1e-8);

struct BoundaryLayerResult {
  double delta = 0;
  double a0 = 0;      // min inward normal derivative over the boundary
  double kappa0 = 0;  // min geodesic curvature of the boundary
  double u_tautau_max = 0;  // over the band; negative when the check holds
  double u_etaeta_min = 0;  // over the band; positive when the check holds
  bool tangential_ok = false;
  bool normal_ok = false;
  bool v_definite = false;
  double margin_scale = 0;  // kappa0 * a0 / 2
  int n_band = 0;
  int n_band_v = 0;  // band vertices with a usable Hessian of v
};

BoundaryLayerResult boundary_layer_check(const TriangleMesh& mesh,
                                         const ScalarField& u, double p,
                                         double delta,
                                         const VerifyOptions& opts = {});

struct Residuals {
  double pde_residual_l2 = 0;     // | trace Hess u + u^p | relative
  double deltav_residual_l2 = 0;  // transformed-equation mismatch, relative
};

// Evaluates the transformed PDE identity satisfied by v (and the primal
// equation satisfied by u) at included vertices. For p = 1 the field must
// carry its eigenvalue in meta.lambda.
Residuals pde_residual(const ScalarField& u, double p,
                       double exclusion_margin = -1);

struct VerificationReport {
  double p = 0;
  TransformKind transform = TransformKind::power;
  Definiteness definiteness = Definiteness::semidefinite_marginal;
  DefinitenessResult definiteness_detail;
  bool trace_negative = false;  // over included vertices
  bool trace_positive = false;
  std::vector<LevelCurve> level_set_results;
  std::vector<CriticalPoint> critical_points;
  BoundaryLayerResult boundary_layer;
  Residuals residuals;
  double domain_kappa_min = 0;
  ConvexityVerdict domain_verdict = ConvexityVerdict::not_convex;
  bool pass = false;
  std::vector<std::string> failures;
};

// Full verification pipeline for one solved field. domain_verdict gates the
// strictness demanded at p = 1 (strict on uniformly convex domains).
VerificationReport run_verification(const TriangleMesh& mesh, const ScalarField& u,
                                    double p, const ConvexityReport& domain,
                                    const VerifyOptions& opts = {});

std::string report_to_json(const VerificationReport& report);

// CSV dump "c,X,Y,kappa_g" of extracted level curves.
void write_levels_csv(std::ostream& out, const std::vector<LevelCurve>& levels);

}  // namespace lane_emden
