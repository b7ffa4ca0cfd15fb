#include "lane_emden/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <json.hpp>

namespace lane_emden {

using nlohmann::json;

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::semidefinite_marginal: return "semidefinite_marginal";
  }
  return "unknown";
}

const char* to_string(TransformKind t) {
  return t == TransformKind::power ? "power" : "log";
}

const char* to_string(CritType t) {
  switch (t) {
    case CritType::max: return "max";
    case CritType::saddle: return "saddle";
    case CritType::min: return "min";
    case CritType::degenerate: return "degenerate";
  }
  return "unknown";
}

ScalarField power_transform(const ScalarField& u, double p) {
  const TriangleMesh& mesh = *u.mesh;
  ScalarField v;
  v.mesh = &mesh;
  v.values.resize(mesh.n_vertices());
  v.meta.p = p;
  v.meta.lambda = u.meta.lambda;
  v.meta.normalization = u.meta.normalization;

  const bool log_case = std::abs(p - 1.0) <= 1e-6;
  v.meta.quantity = log_case ? Quantity::log_u : Quantity::v;
  const double alpha = 0.5 * (1.0 - p);

  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (mesh.is_boundary[i]) {
      if (log_case) {
        v.values[i] = -std::numeric_limits<double>::infinity();
      } else if (p > 1) {
        v.values[i] = std::numeric_limits<double>::infinity();
      } else {
        v.values[i] = 0.0;
      }
      continue;
    }
    const double ui = u.values[i];
    if (!(ui > 0)) {
      throw NonPositive("interior vertex " + std::to_string(i) + " has u = " +
                        std::to_string(ui));
    }
    v.values[i] = log_case ? std::log(ui) : std::pow(ui, alpha);
  }
  return v;
}

DefinitenessResult definiteness_report(const HessianField& hess,
                                       const std::vector<double>& bdist,
                                       double exclusion_margin,
                                       double eps_def_scale) {
  const TriangleMesh& mesh = *hess.mesh;
  std::vector<int> included;
  double max_h = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const HessianSample& s = hess.samples[i];
    if (!s.valid || bdist[i] < exclusion_margin) continue;
    included.push_back(i);
    max_h = std::max({max_h, std::abs(s.eig_min), std::abs(s.eig_max)});
  }
  if (included.empty()) {
    throw EmptyInterior("exclusion margin " + std::to_string(exclusion_margin) +
                        " removed every vertex");
  }

  DefinitenessResult result;
  result.included = static_cast<int>(included.size());
  result.epsilon_def = eps_def_scale * max_h;
  const double eps = result.epsilon_def;
  const double eps2 = eps * eps;

  result.min_abs_eig = std::numeric_limits<double>::infinity();
  result.min_abs_phi = std::numeric_limits<double>::infinity();
  bool any_indefinite = false, any_nd = false, any_pd = false, any_marginal = false;
  result.trace_all_negative = true;
  result.trace_all_positive = true;

  for (const int i : included) {
    const HessianSample& s = hess.samples[i];
    result.min_abs_eig = std::min(
        result.min_abs_eig, std::min(std::abs(s.eig_min), std::abs(s.eig_max)));
    result.min_abs_phi = std::min(result.min_abs_phi, std::abs(s.phi));
    result.trace_all_negative = result.trace_all_negative && s.trace < -eps;
    result.trace_all_positive = result.trace_all_positive && s.trace > eps;

    if (std::abs(s.phi) > eps2) {
      ++result.ranks.rank2;
    } else if (std::abs(s.trace) > eps) {
      ++result.ranks.rank1;
    } else {
      ++result.ranks.rank0;
    }

    if (s.phi < -eps2) {
      any_indefinite = true;
    } else if (s.phi > eps2 && s.trace < -eps) {
      any_nd = true;
    } else if (s.phi > eps2 && s.trace > eps) {
      any_pd = true;
    } else {
      any_marginal = true;
    }
  }

  if (any_indefinite || (any_nd && any_pd)) {
    result.definiteness = Definiteness::indefinite;
  } else if (any_nd && !any_marginal) {
    result.definiteness = Definiteness::negative_definite;
  } else if (any_pd && !any_marginal) {
    result.definiteness = Definiteness::positive_definite;
  } else {
    result.definiteness = Definiteness::semidefinite_marginal;
  }
  return result;
}

// ---------------------------------------------------------------------------
// level curves
// ---------------------------------------------------------------------------

LevelCurve level_curvature(const TriangleMesh& mesh, const ScalarField& u,
                           double c, const HessianField& hess_u) {
  const double max_u = u.max_value();
  if (c >= max_u) {
    throw EmptyLevel("level " + std::to_string(c) + " at or above max u = " +
                     std::to_string(max_u));
  }

  // signed values with exact hits nudged off zero
  const double nudge = 1e-14 * std::max(std::abs(max_u), 1.0);
  std::vector<double> d(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    d[i] = u.values[i] - c;
    if (d[i] == 0.0) d[i] = nudge;
  }

  auto edge_key = [](int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  struct Crossing {
    PlanarPoint point;
    std::vector<int> triangles;
  };
  std::map<std::pair<int, int>, Crossing> crossings;
  struct TriSeg {
    std::pair<int, int> e0, e1;
  };
  std::map<int, TriSeg> segments;

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    std::vector<std::pair<int, int>> cut;
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      if ((d[a] > 0) != (d[b] > 0)) cut.push_back(edge_key(a, b));
    }
    if (cut.size() != 2) continue;
    for (const auto& e : cut) {
      auto& cr = crossings[e];
      cr.triangles.push_back(t);
      const double da = d[e.first], db = d[e.second];
      const double w = da / (da - db);
      cr.point = mesh.vertices[e.first] +
                 w * (mesh.vertices[e.second] - mesh.vertices[e.first]);
    }
    segments[t] = {cut[0], cut[1]};
  }
  if (segments.empty()) {
    throw EmptyLevel("no crossings at level " + std::to_string(c));
  }

  // chain triangle segments into an ordered loop
  std::vector<int> order;
  std::map<int, bool> visited;
  {
    const int start = segments.begin()->first;
    int t = start;
    std::pair<int, int> entry = segments[t].e0;
    for (std::size_t guard = 0; guard <= 2 * segments.size(); ++guard) {
      visited[t] = true;
      order.push_back(t);
      const TriSeg& seg = segments[t];
      const std::pair<int, int> exit = seg.e0 == entry ? seg.e1 : seg.e0;
      const auto& owners = crossings[exit].triangles;
      int next = -1;
      for (const int o : owners) {
        if (o != t) next = o;
      }
      if (next < 0 || next == start) break;
      if (visited.count(next)) break;
      entry = exit;
      t = next;
    }
  }

  LevelCurve curve;
  curve.c = c;

  double max_grad = 0;
  for (const auto& s : hess_u.samples) {
    if (s.valid) max_grad = std::max(max_grad, s.grad_norm);
  }
  const double grad_floor = 1e-8 * max_grad;

  for (const int t : order) {
    const TriSeg& seg = segments[t];
    const PlanarPoint mid =
        0.5 * (crossings[seg.e0].point + crossings[seg.e1].point);
    const auto& tri = mesh.triangles[t];
    // barycentric interpolation of the recovered derivatives at mid; weights
    // renormalized over sample-carrying corners (boundary corners carry none)
    const PlanarPoint a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]],
                      cc = mesh.vertices[tri[2]];
    const double area = cross(b - a, cc - a);
    double w[3];
    w[0] = cross(b - mid, cc - mid) / area;
    w[1] = cross(cc - mid, a - mid) / area;
    w[2] = 1.0 - w[0] - w[1];
    double total = 0;
    for (int i = 0; i < 3; ++i) {
      if (!hess_u.samples[tri[i]].valid) w[i] = 0;
      total += w[i];
    }
    if (total <= 0) continue;  // no usable corner at all
    for (double& wi : w) wi /= total;
    auto lerp = [&](auto&& get) {
      return w[0] * get(hess_u.samples[tri[0]]) + w[1] * get(hess_u.samples[tri[1]]) +
             w[2] * get(hess_u.samples[tri[2]]);
    };
    HessianSample s;
    s.A = lerp([](const HessianSample& h) { return h.A; });
    s.B = lerp([](const HessianSample& h) { return h.B; });
    s.C = lerp([](const HessianSample& h) { return h.C; });
    const double gx = lerp([](const HessianSample& h) { return h.grad_X; });
    const double gy = lerp([](const HessianSample& h) { return h.grad_Y; });
    const double rho = std::sqrt(conformal_factor(mid));
    const double grad_g = std::hypot(gx, gy) / rho;
    if (grad_g < grad_floor) {
      throw NotRegularValue("|grad u| = " + std::to_string(grad_g) +
                            " on the level curve " + std::to_string(c));
    }
    const PlanarPoint tau{-gy, gx};  // Euclidean direction of the level line
    const double kappa = -hessian_form(s, tau) / grad_g;
    curve.samples.push_back({mid, kappa});
  }
  if (curve.samples.empty()) {
    throw EmptyLevel("level curve lies entirely in sample-free triangles");
  }

  // counterclockwise orientation of the sample polygon
  double area2 = 0;
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    area2 += cross(curve.samples[i].point,
                   curve.samples[(i + 1) % curve.samples.size()].point);
  }
  if (area2 < 0) std::reverse(curve.samples.begin(), curve.samples.end());

  curve.kappa_min = std::numeric_limits<double>::infinity();
  for (const auto& s : curve.samples) {
    curve.kappa_min = std::min(curve.kappa_min, s.kappa_g);
  }
  curve.convex = curve.kappa_min > 0;
  return curve;
}

// ---------------------------------------------------------------------------
// critical points
// ---------------------------------------------------------------------------

std::vector<CriticalPoint> critical_points(const TriangleMesh& mesh,
                                           const ScalarField& u,
                                           const HessianField& hess_u,
                                           double crit_factor,
                                           double eps_def_scale) {
  double max_grad = 0, max_h = 0;
  for (const auto& s : hess_u.samples) {
    if (!s.valid) continue;
    max_grad = std::max(max_grad, s.grad_norm);
    max_h = std::max({max_h, std::abs(s.eig_min), std::abs(s.eig_max)});
  }
  const double eta_crit = crit_factor * mesh.h * max_grad;
  const double eps = eps_def_scale * max_h;

  std::vector<int> candidates;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const HessianSample& s = hess_u.samples[i];
    if (!s.valid || s.grad_norm >= eta_crit) continue;
    bool strict_min = true;
    for (const int w : mesh.neighbors[i]) {
      const HessianSample& sw = hess_u.samples[w];
      if (sw.valid && sw.grad_norm <= s.grad_norm) {
        strict_min = false;
        break;
      }
    }
    if (strict_min) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return hess_u.samples[a].grad_norm < hess_u.samples[b].grad_norm;
  });

  std::vector<CriticalPoint> points;
  for (const int i : candidates) {
    const HessianSample& s = hess_u.samples[i];
    CriticalPoint cp;
    cp.location = mesh.vertices[i];
    cp.grad_norm = s.grad_norm;
    cp.eig1 = s.eig_min;
    cp.eig2 = s.eig_max;

    // one Newton step on the chart quadratic fit
    const auto fit = fit_quadratic_patch(mesh, u.values, i);
    if (fit) {
      const double det = fit->vxx * fit->vyy - fit->vxy * fit->vxy;
      if (std::abs(det) > 0) {
        PlanarPoint step{-(fit->vyy * fit->vx - fit->vxy * fit->vy) / det,
                         -(-fit->vxy * fit->vx + fit->vxx * fit->vy) / det};
        const double len = norm(step);
        if (len > 2.0 * mesh.h) step = (2.0 * mesh.h / len) * step;
        cp.location = cp.location + step;
      }
    }

    if (s.eig_max < -eps) {
      cp.type = CritType::max;
    } else if (s.eig_min > eps) {
      cp.type = CritType::min;
    } else if (s.eig_min < -eps && s.eig_max > eps) {
      cp.type = CritType::saddle;
    } else {
      cp.type = CritType::degenerate;
    }

    bool merged = false;
    for (const auto& other : points) {
      if (norm(other.location - cp.location) < mesh.h) {
        merged = true;
        break;
      }
    }
    if (!merged) points.push_back(cp);
  }
  return points;
}

// ---------------------------------------------------------------------------
// boundary layer
// ---------------------------------------------------------------------------

BoundaryLayerResult boundary_layer_check(const TriangleMesh& mesh,
                                         const ScalarField& u, double p,
                                         double delta,
                                         const VerifyOptions& opts) {
  const std::vector<double> bdist = boundary_distance(mesh);
  const std::vector<int> nearest = nearest_boundary_index(mesh);
  const double inradius = *std::max_element(bdist.begin(), bdist.end());
  if (delta < 3.0 * mesh.h) {
    throw Error("boundary-layer depth " + std::to_string(delta) +
                " below 3h = " + std::to_string(3.0 * mesh.h));
  }
  if (delta > opts.max_delta_fraction * inradius) {
    throw Error("boundary-layer depth " + std::to_string(delta) +
                " exceeds the configured fraction of the inradius " +
                std::to_string(inradius));
  }

  BoundaryLayerResult result;
  result.delta = delta;

  // a0: minimum inward normal derivative over the boundary (one-sided fits)
  result.a0 = std::numeric_limits<double>::infinity();
  result.kappa0 = std::numeric_limits<double>::infinity();
  const int nb = static_cast<int>(mesh.boundary_vertices.size());
  std::vector<FermiFrame> frames;
  frames.reserve(nb);
  for (int k = 0; k < nb; ++k) {
    frames.push_back(fermi_frame(mesh, k));
    const int bvert = mesh.boundary_vertices[k];
    const auto fit = fit_quadratic_patch(mesh, u.values, bvert);
    if (fit) {
      const PlanarPoint eta = -1.0 * mesh.boundary_nu_E[k];
      const double rho = std::sqrt(conformal_factor(mesh.vertices[bvert]));
      const double u_eta = (fit->vx * eta.X + fit->vy * eta.Y) / rho;
      result.a0 = std::min(result.a0, u_eta);
    }
    result.kappa0 = std::min(result.kappa0, frames.back().kappa_tilde);
  }
  result.margin_scale = 0.5 * result.kappa0 * result.a0;

  const HessianField hess_u = covariant_hessian(mesh, u);
  const HessianField hess_v = transform_hessian(hess_u, u, p);
  const bool want_negative = p < 1.0 + 1e-6;

  double v_eps_scale = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const HessianSample& sv = hess_v.samples[i];
    if (!sv.valid || bdist[i] < 2.0 * mesh.h || bdist[i] > delta) continue;
    v_eps_scale = std::max({v_eps_scale, std::abs(sv.eig_min), std::abs(sv.eig_max)});
  }
  const double v_eps = 1e-8 * v_eps_scale;

  result.u_tautau_max = -std::numeric_limits<double>::infinity();
  result.u_etaeta_min = std::numeric_limits<double>::infinity();
  result.v_definite = true;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (mesh.is_boundary[i] || bdist[i] < 2.0 * mesh.h || bdist[i] > delta) continue;
    ++result.n_band;
    const FermiFrame& frame = frames[nearest[i]];
    const HessianSample& su = hess_u.samples[i];
    if (su.valid) {
      result.u_tautau_max =
          std::max(result.u_tautau_max, hessian_form(su, frame.tau));
      result.u_etaeta_min =
          std::min(result.u_etaeta_min, hessian_form(su, frame.eta));
    }
    const HessianSample& sv = hess_v.samples[i];
    if (sv.valid) {
      ++result.n_band_v;
      if (want_negative ? !(sv.eig_max < -v_eps) : !(sv.eig_min > v_eps)) {
        result.v_definite = false;
      }
    }
  }
  if (result.n_band < 10) {
    throw LayerTooThin("band [2h, delta] holds only " +
                       std::to_string(result.n_band) + " vertices");
  }
  if (result.n_band_v == 0) result.v_definite = false;
  result.tangential_ok = result.u_tautau_max < 0;
  result.normal_ok = result.u_etaeta_min > 0;
  return result;
}

// ---------------------------------------------------------------------------
// residuals
// ---------------------------------------------------------------------------

Residuals pde_residual(const ScalarField& u, double p, double exclusion_margin) {
  const TriangleMesh& mesh = *u.mesh;
  const double margin = exclusion_margin < 0 ? 3.0 * mesh.h : exclusion_margin;
  const std::vector<double> bdist = boundary_distance(mesh);
  const HessianField hess_u = covariant_hessian(mesh, u);
  const ScalarField v = power_transform(u, p);
  const HessianField hess_v = transform_hessian(hess_u, u, p);

  const bool log_case = std::abs(p - 1.0) <= 1e-6;
  const double lambda = u.meta.lambda;
  if (log_case && !std::isfinite(lambda)) {
    throw Error("p = 1 residual needs the eigenvalue in the field metadata");
  }

  double num_dv = 0, den_lhs = 0, den_rhs = 0;
  double num_u = 0, den_u = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (mesh.is_boundary[i] || bdist[i] < margin) continue;
    const HessianSample& sv = hess_v.samples[i];
    const HessianSample& su = hess_u.samples[i];
    if (!sv.valid || !su.valid) continue;

    const double lhs = sv.trace;
    const double grad2 = sv.grad_norm * sv.grad_norm;
    double rhs;
    if (log_case) {
      rhs = -lambda - grad2;
    } else {
      rhs = (1.0 / v.values[i]) *
            (-(1.0 + p) / (1.0 - p) * grad2 - 0.5 * (1.0 - p));
    }
    num_dv += (lhs - rhs) * (lhs - rhs);
    den_lhs += lhs * lhs;
    den_rhs += rhs * rhs;

    const double source =
        log_case ? lambda * u.values[i] : std::pow(u.values[i], p);
    const double ru = su.trace + source;
    num_u += ru * ru;
    den_u += source * source;
  }
  if (den_u == 0 || std::max(den_lhs, den_rhs) == 0) {
    throw EmptyInterior("residual evaluation has no usable vertices");
  }
  Residuals res;
  res.deltav_residual_l2 = std::sqrt(num_dv / std::max(den_lhs, den_rhs));
  res.pde_residual_l2 = std::sqrt(num_u / den_u);
  return res;
}

// ---------------------------------------------------------------------------
// orchestration
// ---------------------------------------------------------------------------

VerificationReport run_verification(const TriangleMesh& mesh, const ScalarField& u,
                                    double p, const ConvexityReport& domain,
                                    const VerifyOptions& opts) {
  VerificationReport report;
  report.p = p;
  report.domain_kappa_min = domain.kappa_min;
  report.domain_verdict = domain.verdict;
  const bool log_case = std::abs(p - 1.0) <= 1e-6;
  report.transform = log_case ? TransformKind::log : TransformKind::power;

  const double margin = opts.exclusion_margin < 0 ? 3.0 * mesh.h : opts.exclusion_margin;
  const std::vector<double> bdist = boundary_distance(mesh);

  const HessianField hess_u = covariant_hessian(mesh, u);
  const HessianField hess_v = transform_hessian(hess_u, u, p);

  report.definiteness_detail =
      definiteness_report(hess_v, bdist, margin, opts.eps_def_scale);
  report.definiteness = report.definiteness_detail.definiteness;
  report.trace_negative = report.definiteness_detail.trace_all_negative;
  report.trace_positive = report.definiteness_detail.trace_all_positive;

  const double max_u = u.max_value();
  for (const double f : opts.level_fractions) {
    report.level_set_results.push_back(level_curvature(mesh, u, f * max_u, hess_u));
  }

  report.critical_points =
      critical_points(mesh, u, hess_u, opts.crit_factor, opts.eps_def_scale);
  report.residuals = pde_residual(u, p, margin);
  report.boundary_layer = boundary_layer_check(mesh, u, p, opts.delta, opts);

  // verdicts
  auto fail = [&](const std::string& what) { report.failures.push_back(what); };
  const bool strictly_convex_domain =
      domain.verdict == ConvexityVerdict::uniformly_convex;

  if (p < 1.0 - 1e-6) {
    if (report.definiteness != Definiteness::negative_definite) {
      fail("expected negative_definite Hessian of the transform, got " +
           std::string(to_string(report.definiteness)));
    }
  } else if (log_case) {
    if (strictly_convex_domain) {
      if (report.definiteness != Definiteness::negative_definite) {
        fail("expected strict log-concavity on a uniformly convex domain, got " +
             std::string(to_string(report.definiteness)));
      }
    } else if (report.definiteness == Definiteness::indefinite ||
               report.definiteness == Definiteness::positive_definite) {
      fail("expected at least negative semidefiniteness, got " +
           std::string(to_string(report.definiteness)));
    }
  } else {
    if (report.definiteness != Definiteness::positive_definite) {
      fail("expected positive_definite Hessian of the transform, got " +
           std::string(to_string(report.definiteness)));
    }
  }

  if (p <= 1.0 + 1e-6) {
    if (!report.trace_negative) fail("trace of the transform Hessian not negative");
  } else {
    if (!report.trace_positive) fail("trace of the transform Hessian not positive");
  }

  if (report.definiteness_detail.ranks.rank2 !=
      report.definiteness_detail.included) {
    fail("Hessian rank below 2 at " +
         std::to_string(report.definiteness_detail.included -
                        report.definiteness_detail.ranks.rank2) +
         " vertices");
  }

  for (const auto& level : report.level_set_results) {
    if (!level.convex) {
      fail("level curve at c = " + std::to_string(level.c) +
           " has kappa_min = " + std::to_string(level.kappa_min));
    }
  }

  if (report.critical_points.size() != 1) {
    fail("expected exactly one critical point, found " +
         std::to_string(report.critical_points.size()));
  } else if (report.critical_points.front().type != CritType::max) {
    fail("critical point is not a maximum");
  }

  if (strictly_convex_domain) {
    if (!report.boundary_layer.tangential_ok) {
      fail("tangential second derivative not negative in the boundary band");
    }
    // The positivity of u_eta_eta follows from the equation only when the
    // source u^p vanishes at least linearly at the boundary, i.e. p >= 1:
    // u_eta_eta = kappa u_eta - u^p + O(d), and for p < 1 the source term
    // can win throughout a band of fixed depth (it always does at p = 0,
    // where u_eta_eta = kappa a0 - 1 at the boundary).
    if (p > 1.0 + 1e-6 && !report.boundary_layer.normal_ok) {
      fail("normal second derivative not positive in the boundary band");
    }
    if (!report.boundary_layer.v_definite) {
      fail("transform Hessian loses definiteness in the boundary band");
    }
  }

  report.pass = report.failures.empty();
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  json j;
  j["schema_version"] = 1;
  j["p"] = report.p;
  j["transform"] = to_string(report.transform);
  j["definiteness"] = to_string(report.definiteness);
  j["min_abs_eig"] = report.definiteness_detail.min_abs_eig;
  j["min_abs_phi"] = report.definiteness_detail.min_abs_phi;
  j["epsilon_def"] = report.definiteness_detail.epsilon_def;
  j["included_vertices"] = report.definiteness_detail.included;
  j["rank_field_summary"] = {{"rank0", report.definiteness_detail.ranks.rank0},
                             {"rank1", report.definiteness_detail.ranks.rank1},
                             {"rank2", report.definiteness_detail.ranks.rank2}};
  j["trace_negative"] = report.trace_negative;
  j["trace_positive"] = report.trace_positive;
  j["level_set_results"] = json::array();
  for (const auto& level : report.level_set_results) {
    j["level_set_results"].push_back({{"c", level.c},
                                      {"kappa_min", level.kappa_min},
                                      {"convex", level.convex},
                                      {"n_samples", level.samples.size()}});
  }
  j["critical_points"] = json::array();
  for (const auto& cp : report.critical_points) {
    j["critical_points"].push_back({{"X", cp.location.X},
                                    {"Y", cp.location.Y},
                                    {"gradient_norm", cp.grad_norm},
                                    {"hessian_eigs", {cp.eig1, cp.eig2}},
                                    {"type", to_string(cp.type)}});
  }
  j["boundary_layer"] = {{"delta", report.boundary_layer.delta},
                         {"a0", report.boundary_layer.a0},
                         {"kappa0", report.boundary_layer.kappa0},
                         {"u_tautau_max", report.boundary_layer.u_tautau_max},
                         {"u_etaeta_min", report.boundary_layer.u_etaeta_min},
                         {"tangential_ok", report.boundary_layer.tangential_ok},
                         {"normal_ok", report.boundary_layer.normal_ok},
                         {"v_definite", report.boundary_layer.v_definite},
                         {"n_band", report.boundary_layer.n_band}};
  j["residuals"] = {{"pde_residual_L2", report.residuals.pde_residual_l2},
                    {"deltav_residual_L2", report.residuals.deltav_residual_l2}};
  j["domain"] = {{"kappa_min", report.domain_kappa_min},
                 {"verdict", to_string(report.domain_verdict)}};
  j["pass"] = report.pass;
  j["failures"] = report.failures;
  return j.dump(2) + "\n";
}

void write_levels_csv(std::ostream& out, const std::vector<LevelCurve>& levels) {
  out << "c,X,Y,kappa_g\n";
  char buf[160];
  for (const auto& level : levels) {
    for (const auto& s : level.samples) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", level.c,
                    s.point.X, s.point.Y, s.kappa_g);
      out << buf;
    }
  }
}

}  // namespace lane_emden
