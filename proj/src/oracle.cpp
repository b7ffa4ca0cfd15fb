#include "lane_emden/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace lane_emden {

namespace {

double hermite(double x, double x0, double x1, double f0, double f1, double d0,
               double d1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
}

double hermite_deriv(double x, double x0, double x1, double f0, double f1,
                     double d0, double d1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * h * d0 +
          (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * h * d1) /
         h;
}

int grid_interval(const std::vector<double>& r, double radius) {
  const auto it = std::upper_bound(r.begin(), r.end(), radius);
  int hi = static_cast<int>(it - r.begin());
  hi = std::clamp(hi, 1, static_cast<int>(r.size()) - 1);
  return hi;
}

// One classical RK4 step of u' = w, w' = -cot(r) w - f(u).
template <typename F>
void rk4_step(double& r, double& u, double& w, double dr, F&& f) {
  auto du = [](double, double, double wv) { return wv; };
  auto dw = [&f](double rv, double uv, double wv) {
    return -wv / std::tan(rv) - f(uv);
  };
  const double k1u = du(r, u, w), k1w = dw(r, u, w);
  const double k2u = du(r + dr / 2, u + dr / 2 * k1u, w + dr / 2 * k1w);
  const double k2w = dw(r + dr / 2, u + dr / 2 * k1u, w + dr / 2 * k1w);
  const double k3u = du(r + dr / 2, u + dr / 2 * k2u, w + dr / 2 * k2w);
  const double k3w = dw(r + dr / 2, u + dr / 2 * k2u, w + dr / 2 * k2w);
  const double k4u = du(r + dr, u + dr * k3u, w + dr * k3w);
  const double k4w = dw(r + dr, u + dr * k3u, w + dr * k3w);
  u += dr / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
  w += dr / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
  r += dr;
}

// Integrates to r = R and returns u(R); optionally stores the trajectory.
template <typename F>
double integrate(double R, double center_value, int n_grid, F&& f,
                 RadialSolution* out) {
  const double eps = 1e-6;
  const double f0 = f(center_value);
  double r = eps;
  double u = center_value - 0.25 * f0 * eps * eps;
  double w = -0.5 * f0 * eps;
  const int steps = std::max(n_grid - 1, 256);
  const double dr = (R - eps) / steps;
  if (out) {
    out->r.assign(1, 0.0);
    out->u.assign(1, center_value);
    out->du.assign(1, 0.0);
    out->r.push_back(r);
    out->u.push_back(u);
    out->du.push_back(w);
  }
  for (int i = 0; i < steps; ++i) {
    rk4_step(r, u, w, dr, f);
    if (out) {
      out->r.push_back(r);
      out->u.push_back(u);
      out->du.push_back(w);
    }
  }
  return u;
}

// First sign-change bracket of g over an ascending parameter scan, then
// bisection. Returns the root parameter.
template <typename G>
double bracket_and_bisect(G&& g, const std::vector<double>& scan,
                          const char* what) {
  double lo = scan.front();
  double g_lo = g(lo);
  double hi = lo;
  bool found = false;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    hi = scan[i];
    const double g_hi = g(hi);
    if ((g_lo > 0) != (g_hi > 0)) {
      found = true;
      break;
    }
    lo = hi;
    g_lo = g_hi;
  }
  if (!found) {
    throw ShootingFailed(std::string("no bracket found for ") + what);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if ((g_lo > 0) != (g_mid > 0)) {
      hi = mid;
    } else {
      lo = mid;
      g_lo = g_mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double RadialSolution::value(double radius) const {
  const int hi = grid_interval(r, radius);
  return hermite(radius, r[hi - 1], r[hi], u[hi - 1], u[hi], du[hi - 1], du[hi]);
}

double RadialSolution::deriv(double radius) const {
  const int hi = grid_interval(r, radius);
  return hermite_deriv(radius, r[hi - 1], r[hi], u[hi - 1], u[hi], du[hi - 1],
                       du[hi]);
}

RadialSolution torsion_closed_form(double R, int n_grid) {
  if (!(R > 0 && R < M_PI)) {
    throw ShootingFailed("torsion profile needs 0 < R < pi");
  }
  RadialSolution sol;
  sol.R = R;
  sol.p = 0;
  sol.r.resize(n_grid);
  sol.u.resize(n_grid);
  sol.du.resize(n_grid);
  const double c = std::log(std::cos(0.5 * R));
  for (int i = 0; i < n_grid; ++i) {
    const double r = R * i / (n_grid - 1);
    sol.r[i] = r;
    sol.u[i] = 2.0 * (std::log(std::cos(0.5 * r)) - c);
    sol.du[i] = -std::tan(0.5 * r);
  }
  sol.u[n_grid - 1] = 0.0;
  return sol;
}

RadialSolution radial_shoot(double R, double p, int n_grid) {
  if (!(R > 0 && R < M_PI_2 + 1e-12)) {
    throw ShootingFailed("shooting needs 0 < R <= pi/2");
  }
  if (!(p >= 0)) throw ShootingFailed("negative exponent");

  RadialSolution sol;
  sol.R = R;
  sol.p = p;

  if (std::abs(p - 1.0) <= 1e-12) {
    // eigen-shooting on lambda with u(0) = 1
    auto end_value = [&](double lambda) {
      auto f = [lambda](double u) { return lambda * u; };
      return integrate(R, 1.0, n_grid, f, nullptr);
    };
    std::vector<double> scan;
    for (double l = 1e-2; l <= 1e6; l *= std::pow(10.0, 0.125)) scan.push_back(l);
    const double lambda = bracket_and_bisect(end_value, scan, "eigenvalue");
    sol.lambda = lambda;
    auto f = [lambda](double u) { return lambda * u; };
    integrate(R, 1.0, n_grid, f, &sol);
  } else {
    auto end_value = [&](double m) {
      auto f = [p](double u) { return u > 0 ? std::pow(u, p) : 0.0; };
      return integrate(R, m, n_grid, f, nullptr);
    };
    std::vector<double> scan;
    for (double m = 1e-6; m <= 1e3; m *= std::pow(10.0, 0.125)) scan.push_back(m);
    const double m = bracket_and_bisect(end_value, scan, "center value");
    auto f = [p](double u) { return u > 0 ? std::pow(u, p) : 0.0; };
    integrate(R, m, n_grid, f, &sol);
  }

  // pin the boundary value and validate the profile
  const double m = sol.u.front();
  if (std::abs(sol.u.back()) > 1e-9 * std::max(m, 1.0)) {
    throw ShootingFailed("shooting residual " + std::to_string(sol.u.back()));
  }
  sol.u.back() = 0.0;
  for (std::size_t i = 1; i + 1 < sol.u.size(); ++i) {
    if (!(sol.u[i] > 0) || sol.u[i] > sol.u[i - 1] + 1e-12 * m) {
      throw ShootingFailed("profile not strictly decreasing");
    }
  }
  return sol;
}

CompareResult compare(const ScalarField& mesh_solution, const RadialSolution& radial,
                      PlanarPoint center) {
  const TriangleMesh& mesh = *mesh_solution.mesh;
  const SpherePoint c = stereo_lift(center);

  for (const int b : mesh.boundary_vertices) {
    const double rb = geodesic_distance(stereo_lift(mesh.vertices[b]), c);
    if (std::abs(rb - radial.R) > 2.0 * mesh.h) {
      throw DomainMismatch("boundary vertex at geodesic radius " +
                           std::to_string(rb) + ", expected " +
                           std::to_string(radial.R));
    }
  }

  CompareResult result;
  double sq_sum = 0;
  double max_u = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const double r = std::min(
        geodesic_distance(stereo_lift(mesh.vertices[i]), c), radial.R);
    const double expected = radial.value(r);
    const double err = std::abs(mesh_solution.values[i] - expected);
    result.sup_err = std::max(result.sup_err, err);
    sq_sum += err * err;
    max_u = std::max(max_u, std::abs(mesh_solution.values[i]));
  }
  result.l2_err = std::sqrt(sq_sum / mesh.n_vertices());
  result.rel_sup_err = max_u > 0 ? result.sup_err / max_u : result.sup_err;
  return result;
}

RadialHessianEigs radial_transform_eigs(const RadialSolution& sol, double radius) {
  const double u = sol.value(radius);
  const double up = sol.deriv(radius);
  double f;  // -u'' - cot(r) u' from the equation
  if (std::abs(sol.p - 1.0) <= 1e-12) {
    f = sol.lambda * u;
  } else if (sol.p == 0.0) {
    f = 1.0;
  } else {
    f = u > 0 ? std::pow(u, sol.p) : 0.0;
  }
  const double upp = -up / std::tan(radius) - f;

  RadialHessianEigs eigs;
  if (std::abs(sol.p - 1.0) <= 1e-12) {
    // v = log u
    const double vp = up / u;
    eigs.radial = upp / u - vp * vp;
    eigs.tangential = vp / std::tan(radius);
  } else {
    const double alpha = 0.5 * (1.0 - sol.p);
    const double vp = alpha * std::pow(u, alpha - 1.0) * up;
    eigs.radial = alpha * std::pow(u, alpha - 1.0) * upp +
                  alpha * (alpha - 1.0) * std::pow(u, alpha - 2.0) * up * up;
    eigs.tangential = vp / std::tan(radius);
  }
  return eigs;
}

void write_radial_csv(std::ostream& out, const RadialSolution& sol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# R=%.17g p=%.17g lambda=%.17g\n", sol.R, sol.p,
                sol.lambda);
  out << buf << "r,u,u_prime\n";
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", sol.r[i], sol.u[i],
                  sol.du[i]);
    out << buf;
  }
}

}  // namespace lane_emden
