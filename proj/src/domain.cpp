#include "lane_emden/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lane_emden {

namespace {

// Proper-crossing test for closed polylines, skipping segments that share an
// endpoint.
bool segments_cross(PlanarPoint a, PlanarPoint b, PlanarPoint c, PlanarPoint d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) &&
         d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

bool is_simple(const std::vector<PlanarPoint>& pts) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // adjacent segments share a vertex
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

double signed_area(const std::vector<PlanarPoint>& pts) {
  double a = 0;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    a += cross(pts[i], pts[(i + 1) % n]);
  }
  return 0.5 * a;
}

BoundaryCurve sample_ball(const GeodesicBall& ball, int n) {
  const double t = std::tan(0.5 * ball.radius);
  BoundaryCurve curve;
  curve.samples.resize(n);
  curve.kappa_E.assign(n, 1.0 / t);
  curve.nu_E.resize(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    const PlanarPoint nu{std::cos(th), std::sin(th)};
    curve.nu_E[k] = nu;
    curve.samples[k] = t * nu;
  }
  return curve;
}

BoundaryCurve sample_ellipse(const SphericalEllipse& e, int n) {
  const double A = std::tan(0.5 * e.a);
  const double B = std::tan(0.5 * e.b);
  // Uniform-arclength parameters via a fine chord-length table.
  const int fine = std::max(8192, 16 * n);
  std::vector<double> acc(fine + 1, 0.0);
  PlanarPoint prev{A, 0};
  for (int i = 1; i <= fine; ++i) {
    const double t = 2.0 * M_PI * i / fine;
    const PlanarPoint p{A * std::cos(t), B * std::sin(t)};
    acc[i] = acc[i - 1] + norm(p - prev);
    prev = p;
  }
  const double total = acc[fine];
  BoundaryCurve curve;
  curve.samples.resize(n);
  curve.kappa_E.resize(n);
  curve.nu_E.resize(n);
  for (int k = 0; k < n; ++k) {
    const double target = total * k / n;
    const auto it = std::lower_bound(acc.begin(), acc.end(), target);
    int hi = static_cast<int>(it - acc.begin());
    hi = std::clamp(hi, 1, fine);
    const double frac = (target - acc[hi - 1]) / (acc[hi] - acc[hi - 1]);
    const double t = 2.0 * M_PI * (hi - 1 + frac) / fine;
    const double st = std::sin(t), ct = std::cos(t);
    curve.samples[k] = {A * ct, B * st};
    const double w = std::sqrt(A * A * st * st + B * B * ct * ct);
    curve.kappa_E[k] = A * B / (w * w * w);
    curve.nu_E[k] = {B * ct / w, A * st / w};
  }
  return curve;
}

BoundaryCurve sample_polyline(const PlanarConvexCurve& c, int n) {
  std::vector<PlanarPoint> pts = c.samples;
  if (pts.size() >= 2 && norm(pts.front() - pts.back()) < 1e-14) pts.pop_back();
  if (pts.size() < 3) throw DegenerateBoundary("fewer than 3 boundary samples");

  const int m = static_cast<int>(pts.size());
  std::vector<double> acc(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    acc[i + 1] = acc[i] + norm(pts[(i + 1) % m] - pts[i]);
  }
  const double total = acc[m];
  if (!(total > 0)) throw DegenerateBoundary("zero-length boundary curve");

  BoundaryCurve curve;
  curve.samples.resize(n);
  for (int k = 0; k < n; ++k) {
    const double target = total * k / n;
    const auto it = std::upper_bound(acc.begin(), acc.end(), target);
    int hi = std::clamp(static_cast<int>(it - acc.begin()), 1, m);
    const double seg = acc[hi] - acc[hi - 1];
    const double frac = seg > 0 ? (target - acc[hi - 1]) / seg : 0.0;
    const PlanarPoint a = pts[hi - 1];
    const PlanarPoint b = pts[hi % m];
    curve.samples[k] = a + frac * (b - a);
  }
  // Curvature from the circumcircle of consecutive sample triples, normal
  // from the central-difference tangent. Exact for circular arcs.
  curve.kappa_E.resize(n);
  curve.nu_E.resize(n);
  for (int k = 0; k < n; ++k) {
    const PlanarPoint p0 = curve.samples[(k + n - 1) % n];
    const PlanarPoint p1 = curve.samples[k];
    const PlanarPoint p2 = curve.samples[(k + 1) % n];
    const double l01 = norm(p1 - p0), l12 = norm(p2 - p1), l02 = norm(p2 - p0);
    const double denom = l01 * l12 * l02;
    curve.kappa_E[k] = denom > 0 ? 2.0 * cross(p1 - p0, p2 - p1) / denom
                                 : std::numeric_limits<double>::quiet_NaN();
    const PlanarPoint tangent = p2 - p0;
    const double tl = norm(tangent);
    if (!(tl > 0)) throw DegenerateBoundary("coincident boundary samples");
    // interior on the left of a CCW curve: outward normal = tangent rotated -90
    curve.nu_E[k] = {tangent.Y / tl, -tangent.X / tl};
  }
  return curve;
}

}  // namespace

double BoundaryCurve::length() const {
  double total = 0;
  const int n = size();
  for (int i = 0; i < n; ++i) total += norm(samples[(i + 1) % n] - samples[i]);
  return total;
}

BoundaryCurve sample_boundary(const DomainSpec& domain, int n_boundary) {
  if (n_boundary < 3) throw DegenerateBoundary("need at least 3 samples");
  return std::visit(
      [&](const auto& d) -> BoundaryCurve {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GeodesicBall>) {
          if (!(d.radius > 0 && d.radius < M_PI))
            throw DegenerateBoundary("ball radius out of (0, pi)");
          return sample_ball(d, n_boundary);
        } else if constexpr (std::is_same_v<T, SphericalEllipse>) {
          if (!(d.a > 0 && d.a < M_PI_2 && d.b > 0 && d.b < M_PI_2))
            throw DegenerateBoundary("ellipse semi-angles out of (0, pi/2)");
          return sample_ellipse(d, n_boundary);
        } else {
          return sample_polyline(d, n_boundary);
        }
      },
      domain);
}

BoundaryCurve planarize(const DomainSpec& domain, int n_boundary) {
  BoundaryCurve curve = sample_boundary(domain, n_boundary);
  for (const PlanarPoint& q : curve.samples) {
    if (norm2(q) > 1.0 + 2e-9) {
      throw NotInDisk("boundary sample at |q| = " + std::to_string(norm(q)) +
                      " leaves the unit disk; domain exceeds the open hemisphere");
    }
  }
  if (!is_simple(curve.samples)) {
    throw SelfIntersection("boundary curve crosses itself");
  }
  if (signed_area(curve.samples) <= 0) {
    throw DegenerateBoundary("boundary curve is not counterclockwise");
  }
  return curve;
}

ConvexityReport check_uniform_convexity(const DomainSpec& domain, int n_samples,
                                        double tau_kappa) {
  BoundaryCurve curve = sample_boundary(domain, n_samples);
  if (!is_simple(curve.samples)) {
    throw DegenerateBoundary("boundary curve crosses itself");
  }
  ConvexityReport report;
  report.kappa_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < curve.size(); ++k) {
    if (!std::isfinite(curve.kappa_E[k])) {
      throw DegenerateBoundary("non-finite curvature sample");
    }
    const double kappa = spherical_boundary_curvature(
        curve.samples[k], curve.kappa_E[k], curve.nu_E[k]);
    report.kappa_min = std::min(report.kappa_min, kappa);
  }
  if (report.kappa_min > tau_kappa) {
    report.verdict = ConvexityVerdict::uniformly_convex;
  } else if (report.kappa_min >= -tau_kappa) {
    report.verdict = ConvexityVerdict::convex_marginal;
  } else {
    report.verdict = ConvexityVerdict::not_convex;
  }
  return report;
}

const char* to_string(ConvexityVerdict v) {
  switch (v) {
    case ConvexityVerdict::uniformly_convex: return "uniformly_convex";
    case ConvexityVerdict::convex_marginal: return "convex_marginal";
    case ConvexityVerdict::not_convex: return "not_convex";
  }
  return "unknown";
}

}  // namespace lane_emden
