#include "lane_emden/geometry.hpp"

#include <algorithm>

namespace lane_emden {

PlanarPoint stereo_project(const SpherePoint& p) {
  if (p.z >= 1.0 - pole_guard) {
    throw PoleProjection("point too close to the projection pole, z = " +
                         std::to_string(p.z));
  }
  const double d = 1.0 - p.z;
  return {p.x / d, p.y / d};
}

SpherePoint stereo_lift(const PlanarPoint& q) {
  const double s = norm2(q);
  const double d = 1.0 + s;
  return {2.0 * q.X / d, 2.0 * q.Y / d, (s - 1.0) / d};
}

double conformal_factor(const PlanarPoint& q) {
  const double d = 1.0 + norm2(q);
  return 4.0 / (d * d);
}

PlanarPoint conformal_log_gradient(const PlanarPoint& q) {
  const double d = 1.0 + norm2(q);
  return {-2.0 * q.X / d, -2.0 * q.Y / d};
}

double spherical_boundary_curvature(const PlanarPoint& q, double kappa_E,
                                    const PlanarPoint& nu_E) {
  const double len = norm(nu_E);
  if (std::abs(len - 1.0) > 1e-10) {
    throw NonUnitNormal("|nu_E| = " + std::to_string(len));
  }
  return 0.5 * (1.0 + norm2(q)) * kappa_E - dot(q, nu_E);
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  const double c = std::clamp(dot(p, q), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace lane_emden
