#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lane_emden/domain.hpp"
#include "lane_emden/solver.hpp"
#include "lane_emden/verify.hpp"

namespace lane_emden {

// Run configuration parsed from the section-based key = value text format:
//   [domain]  type (ball|ellipse|curve), R, a, b, samples_file
//   [solver]  h, p, p_list, tol_fix, tol_lin, max_outer, omega, omega_super,
//             continuation, continuation_step
//   [verify]  exclusion_margin, delta, level_fractions, epsilon_def_scale,
//             tau_kappa
//   [output]  dir, seed, quiet
// Unknown keys and duplicate keys are rejected with line diagnostics.
struct RunConfig {
  DomainSpec domain = GeodesicBall{{0, 0, -1}, M_PI / 4};
  std::string curve_file;  // for type = curve; loaded by materialize_domain
  double h = 0.05;
  double p = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> p_list;
  SolveOptions solver;
  VerifyOptions verify;
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  bool quiet = false;
};

RunConfig parse_config(const std::string& text);

// Loads the boundary polyline for curve-type domains; pass-through otherwise.
DomainSpec materialize_domain(const RunConfig& config);

}  // namespace lane_emden
