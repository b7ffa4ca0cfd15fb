#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "lane_emden/domain.hpp"
#include "lane_emden/geometry.hpp"

namespace lane_emden {

// Boundary-adapted orthonormal frame at a boundary vertex. tau (tangent,
// counterclockwise) and eta (inward normal) have unit length in the
// conformal metric, i.e. Euclidean length (1+|base|^2)/2.
struct FermiFrame {
  int boundary_index = -1;
  PlanarPoint base;
  PlanarPoint tau;
  PlanarPoint eta;
  double kappa_tilde = 0;
};

// Conforming triangulation of a planarized domain. Boundary vertices come
// first (ids 0..n_boundary-1, in counterclockwise curve order) and carry the
// Euclidean curvature / outward normal of the input curve.
struct TriangleMesh {
  std::vector<PlanarPoint> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<int> boundary_vertices;         // ordered trace of the boundary
  std::vector<double> boundary_kappa_E;
  std::vector<PlanarPoint> boundary_nu_E;
  double h = 0;  // target edge length

  // derived connectivity, rebuilt by finalize()
  std::vector<char> is_boundary;
  std::vector<std::vector<int>> neighbors;  // sorted 1-rings

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  double triangle_area(int t) const;

  // Rebuilds flags/adjacency and validates orientation, connectivity and the
  // Euler relation V - E + F = 1. Throws MeshFailure on violation.
  void finalize();
};

struct MeshQuality {
  double min_angle_deg = 0;
  double max_edge = 0;
  double min_area = 0;
};

MeshQuality mesh_quality(const TriangleMesh& mesh);

// Triangulates the region enclosed by the curve with quasi-uniform target
// edge length h. Quality targets: max edge <= 1.5 h, min angle >= 20 deg.
TriangleMesh generate_mesh(const BoundaryCurve& curve, double h);

// planarize + generate_mesh with the boundary sample count chosen from h.
TriangleMesh build_mesh(const DomainSpec& domain, double h);

// Per-vertex geodesic distance to the boundary on the sphere (minimum over
// boundary vertices after lifting). Zero at boundary vertices.
std::vector<double> boundary_distance(const TriangleMesh& mesh);

// Position (in boundary_vertices order) of the boundary vertex realizing the
// minimum above, per vertex.
std::vector<int> nearest_boundary_index(const TriangleMesh& mesh);

FermiFrame fermi_frame(const TriangleMesh& mesh, int boundary_index);

// Text format: "V T B" counts, V lines "X Y", T lines "i j k",
// B lines "idx kappa_E nuX nuY"; floats with 17 significant digits.
void write_mesh(std::ostream& out, const TriangleMesh& mesh);
TriangleMesh read_mesh(std::istream& in);

// Uniform-grid point locator for barycentric interpolation.
class PointLocator {
 public:
  explicit PointLocator(const TriangleMesh& mesh);

  // Returns the triangle containing q (with barycentric coordinates in
  // *bary), or -1 if q is outside the mesh.
  int locate(PlanarPoint q, std::array<double, 3>* bary) const;

  // P1 interpolation of a per-vertex field; throws DomainMismatch outside.
  double interpolate(const std::vector<double>& values, PlanarPoint q) const;

 private:
  const TriangleMesh& mesh_;
  double x0_ = 0, y0_ = 0, cell_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace lane_emden
