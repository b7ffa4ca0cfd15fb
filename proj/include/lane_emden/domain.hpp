#pragma once

#include <variant>
#include <vector>

#include "lane_emden/geometry.hpp"

namespace lane_emden {

// Geodesic ball of radius R in (0, pi/2], described by its spherical center.
// Planarization rotates the center to the south pole, so the projected
// boundary is the circle of radius tan(R/2) about the origin.
struct GeodesicBall {
  SpherePoint center{0, 0, -1};
  double radius = 0;
};

// Domain whose projected boundary is the ellipse
// (tan(a/2) cos t, tan(b/2) sin t), semi-angles a, b in (0, pi/2).
struct SphericalEllipse {
  double a = 0;
  double b = 0;
};

// Domain given directly by a closed counterclockwise planar boundary
// polyline (interior on the left).
struct PlanarConvexCurve {
  std::vector<PlanarPoint> samples;
};

using DomainSpec = std::variant<GeodesicBall, SphericalEllipse, PlanarConvexCurve>;

// Planar boundary of a domain: sample points in counterclockwise order with
// Euclidean curvature and outward Euclidean unit normal at each sample.
struct BoundaryCurve {
  std::vector<PlanarPoint> samples;
  std::vector<double> kappa_E;
  std::vector<PlanarPoint> nu_E;

  int size() const { return static_cast<int>(samples.size()); }
  double length() const;
};

// Samples the projected boundary without any containment gate. Used by the
// convexity check, which must be able to look at domains that stick out of
// the unit disk (and then reject them).
BoundaryCurve sample_boundary(const DomainSpec& domain, int n_boundary);

// sample_boundary plus validation: every sample inside the closed unit disk
// (within 1e-9), simple curve, counterclockwise. Throws NotInDisk /
// SelfIntersection / DegenerateBoundary.
BoundaryCurve planarize(const DomainSpec& domain, int n_boundary);

enum class ConvexityVerdict { uniformly_convex, convex_marginal, not_convex };

struct ConvexityReport {
  double kappa_min = 0;  // min spherical geodesic curvature over the samples
  ConvexityVerdict verdict = ConvexityVerdict::not_convex;
};

// Samples the boundary, maps Euclidean curvature to spherical geodesic
// curvature and classifies against the tolerance tau_kappa.
ConvexityReport check_uniform_convexity(const DomainSpec& domain, int n_samples,
                                        double tau_kappa = 1e-6);

const char* to_string(ConvexityVerdict v);

}  // namespace lane_emden
