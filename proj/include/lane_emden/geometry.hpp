#pragma once

#include <cmath>

#include "lane_emden/errors.hpp"

namespace lane_emden {

// Point on the unit sphere, stored as a unit 3-vector.
struct SpherePoint {
  double x = 0, y = 0, z = 0;
};

// Point of the stereographic plane (projection from the north pole).
// Doubles as a plain 2-vector for tangents and normals.
struct PlanarPoint {
  double X = 0, Y = 0;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.X + b.X, a.Y + b.Y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.X - b.X, a.Y - b.Y}; }
inline PlanarPoint operator*(double s, PlanarPoint a) { return {s * a.X, s * a.Y}; }
inline double dot(PlanarPoint a, PlanarPoint b) { return a.X * b.X + a.Y * b.Y; }
inline double cross(PlanarPoint a, PlanarPoint b) { return a.X * b.Y - a.Y * b.X; }
inline double norm(PlanarPoint a) { return std::hypot(a.X, a.Y); }
inline double norm2(PlanarPoint a) { return a.X * a.X + a.Y * a.Y; }
// 90-degree counterclockwise rotation.
inline PlanarPoint perp(PlanarPoint a) { return {-a.Y, a.X}; }

inline double dot(const SpherePoint& a, const SpherePoint& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline SpherePoint normalized(const SpherePoint& p) {
  const double n = std::sqrt(dot(p, p));
  return {p.x / n, p.y / n, p.z / n};
}

// Guard band below the north pole; points with z >= 1 - pole_guard cannot be
// projected.
inline constexpr double pole_guard = 1e-9;

// Stereographic projection from the north pole: (x,y,z) -> (x,y)/(1-z).
PlanarPoint stereo_project(const SpherePoint& p);

// Inverse of stereo_project: (X,Y) -> (2X, 2Y, X^2+Y^2-1)/(1+X^2+Y^2).
SpherePoint stereo_lift(const PlanarPoint& q);

// Conformal factor rho^2 of the pushed-forward round metric,
// rho^2(X,Y) = 4/(1+X^2+Y^2)^2.  Always in (0, 4].
double conformal_factor(const PlanarPoint& q);

// Gradient of f = (1/2) log rho^2, needed for the covariant Hessian
// correction: f_X = -2X/(1+|q|^2), f_Y = -2Y/(1+|q|^2).
PlanarPoint conformal_log_gradient(const PlanarPoint& q);

// Geodesic curvature on the sphere of a boundary curve through q, given its
// Euclidean curvature kappa_E and outward Euclidean unit normal nu_E:
//   kappa = (1+|q|^2)/2 * kappa_E - <q, nu_E>.
// Sign convention: positive when the curve bends away from the outward
// normal (convex domains have positive curvature).
double spherical_boundary_curvature(const PlanarPoint& q, double kappa_E,
                                    const PlanarPoint& nu_E);

// Geodesic (great-circle) distance, in [0, pi].
double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

}  // namespace lane_emden
