#include "lane_emden/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "lane_emden/parallel.hpp"

namespace lane_emden {

namespace {

// ---------------------------------------------------------------------------
// Bowyer-Watson Delaunay triangulation of a planar point set.
// ---------------------------------------------------------------------------

long double orient(PlanarPoint a, PlanarPoint b, PlanarPoint c) {
  const long double abx = (long double)b.X - a.X, aby = (long double)b.Y - a.Y;
  const long double acx = (long double)c.X - a.X, acy = (long double)c.Y - a.Y;
  return abx * acy - aby * acx;
}

// > 0 iff d lies strictly inside the circumcircle of the CCW triangle abc.
long double in_circle(PlanarPoint a, PlanarPoint b, PlanarPoint c, PlanarPoint d) {
  const long double adx = (long double)a.X - d.X, ady = (long double)a.Y - d.Y;
  const long double bdx = (long double)b.X - d.X, bdy = (long double)b.Y - d.Y;
  const long double cdx = (long double)c.X - d.X, cdy = (long double)c.Y - d.Y;
  const long double ad2 = adx * adx + ady * ady;
  const long double bd2 = bdx * bdx + bdy * bdy;
  const long double cd2 = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
         ad2 * (bdx * cdy - cdx * bdy);
}

class Delaunay {
 public:
  explicit Delaunay(const std::vector<PlanarPoint>& input) : pts_(input) {
    const int n = static_cast<int>(pts_.size());
    if (n < 3) throw MeshFailure("need at least 3 points to triangulate");

    double xmin = pts_[0].X, xmax = xmin, ymin = pts_[0].Y, ymax = ymin;
    for (const auto& p : pts_) {
      xmin = std::min(xmin, p.X); xmax = std::max(xmax, p.X);
      ymin = std::min(ymin, p.Y); ymax = std::max(ymax, p.Y);
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double m = 64.0 * std::max({xmax - xmin, ymax - ymin, 1.0});
    pts_.push_back({cx - 2.0 * m, cy - m});
    pts_.push_back({cx + 2.0 * m, cy - m});
    pts_.push_back({cx, cy + 2.0 * m});
    tris_.push_back({{n, n + 1, n + 2}, {-1, -1, -1}});
    alive_.push_back(true);

    for (int i = 0; i < n; ++i) insert(i);
  }

  std::vector<std::array<int, 3>> triangles() const {
    const int n = static_cast<int>(pts_.size()) - 3;
    std::vector<std::array<int, 3>> out;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!alive_[t]) continue;
      const auto& v = tris_[t].v;
      if (v[0] >= n || v[1] >= n || v[2] >= n) continue;
      std::array<int, 3> tri{v[0], v[1], v[2]};
      if (orient(pts_[tri[0]], pts_[tri[1]], pts_[tri[2]]) < 0) {
        std::swap(tri[1], tri[2]);
      }
      out.push_back(tri);
    }
    return out;
  }

 private:
  struct Tri {
    std::array<int, 3> v;  // counterclockwise
    std::array<int, 3> n;  // n[i] shares the edge opposite v[i]; -1 if none
  };

  int locate(PlanarPoint p) const {
    int t = last_;
    if (t < 0 || !alive_[t]) {
      t = -1;
      for (std::size_t k = 0; k < tris_.size(); ++k) {
        if (alive_[k]) { t = static_cast<int>(k); break; }
      }
    }
    const int max_steps = static_cast<int>(tris_.size()) + 16;
    for (int step = 0; step < max_steps; ++step) {
      const auto& tri = tris_[t];
      bool moved = false;
      for (int i = 0; i < 3; ++i) {
        const int a = tri.v[(i + 1) % 3], b = tri.v[(i + 2) % 3];
        if (orient(pts_[a], pts_[b], p) < 0) {
          const int next = tri.n[i];
          if (next < 0) return t;  // on the hull side; cannot happen inside super
          t = next;
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // walk cycled on a degeneracy; fall back to a scan
    for (std::size_t k = 0; k < tris_.size(); ++k) {
      if (!alive_[k]) continue;
      const auto& tri = tris_[k];
      bool inside = true;
      for (int i = 0; i < 3; ++i) {
        if (orient(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]], p) < 0) {
          inside = false;
          break;
        }
      }
      if (inside) return static_cast<int>(k);
    }
    throw MeshFailure("point location failed");
  }

  void insert(int pi) {
    const PlanarPoint p = pts_[pi];
    const int t0 = locate(p);

    // reject exact duplicates
    for (int i = 0; i < 3; ++i) {
      const PlanarPoint q = pts_[tris_[t0].v[i]];
      if (norm(q - p) < 1e-14) return;
    }

    // cavity: connected set of triangles whose circumcircle contains p
    std::vector<int> cavity{t0};
    std::vector<char> in_cavity(tris_.size(), false);
    in_cavity[t0] = true;
    std::vector<int> stack{t0};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        const int nb = tris_[t].n[i];
        if (nb < 0 || in_cavity[nb]) continue;
        const auto& v = tris_[nb].v;
        if (in_circle(pts_[v[0]], pts_[v[1]], pts_[v[2]], p) > 0) {
          in_cavity[nb] = true;
          cavity.push_back(nb);
          stack.push_back(nb);
        }
      }
    }

    // Repair the cavity until it is star-shaped as seen from p: every
    // boundary edge must have p strictly on its interior side. Fails only on
    // near-cocircular ties, where the strict in_circle test can produce an
    // inconsistent cavity.
    struct Edge { int a, b, outside; };
    std::vector<Edge> edges;
    for (int guard = 0; guard < 4 * static_cast<int>(cavity.size()) + 8; ++guard) {
      // keep only the edge-connected component of the containing triangle
      std::vector<char> keep(tris_.size(), false);
      keep[t0] = true;
      std::vector<int> bfs{t0};
      while (!bfs.empty()) {
        const int t = bfs.back();
        bfs.pop_back();
        for (int i = 0; i < 3; ++i) {
          const int nb = tris_[t].n[i];
          if (nb >= 0 && in_cavity[nb] && !keep[nb]) {
            keep[nb] = true;
            bfs.push_back(nb);
          }
        }
      }
      cavity.clear();
      for (std::size_t t = 0; t < tris_.size(); ++t) {
        in_cavity[t] = keep[t];
        if (keep[t]) cavity.push_back(static_cast<int>(t));
      }

      edges.clear();
      int bad_owner = -1;
      for (const int t : cavity) {
        for (int i = 0; i < 3; ++i) {
          const int nb = tris_[t].n[i];
          if (nb >= 0 && in_cavity[nb]) continue;
          const int a = tris_[t].v[(i + 1) % 3], b = tris_[t].v[(i + 2) % 3];
          if (t != t0 && orient(pts_[a], pts_[b], p) <= 0) {
            bad_owner = t;
            break;
          }
          edges.push_back({a, b, nb});
        }
        if (bad_owner >= 0) break;
      }
      if (bad_owner < 0) break;
      in_cavity[bad_owner] = false;
    }

    for (const int t : cavity) {
      alive_[t] = false;
      free_.push_back(t);
    }

    std::map<int, int> by_a, by_b;
    std::vector<int> created;
    created.reserve(edges.size());
    for (const Edge& e : edges) {
      const int t = alloc();
      tris_[t].v = {pi, e.a, e.b};
      tris_[t].n = {e.outside, -1, -1};
      if (e.outside >= 0) {
        // the outside triangle holds the shared edge with opposite orientation
        for (int i = 0; i < 3; ++i) {
          const int oa = tris_[e.outside].v[(i + 1) % 3];
          const int ob = tris_[e.outside].v[(i + 2) % 3];
          if ((oa == e.b && ob == e.a) || (oa == e.a && ob == e.b)) {
            tris_[e.outside].n[i] = t;
            break;
          }
        }
      }
      if (!by_a.emplace(e.a, t).second || !by_b.emplace(e.b, t).second) {
        throw MeshFailure("pinched cavity boundary");
      }
      created.push_back(t);
    }
    for (const int t : created) {
      const int a = tris_[t].v[1], b = tris_[t].v[2];
      const auto ita = by_a.find(b);
      const auto itb = by_b.find(a);
      if (ita == by_a.end() || itb == by_b.end()) {
#ifdef LANE_EMDEN_DT_DEBUG
        std::fprintf(stderr, "stitch failure inserting %d at (%.17g, %.17g)\n",
                     pi, p.X, p.Y);
        std::fprintf(stderr, "edges (%zu):\n", edges.size());
        for (const Edge& e : edges) {
          std::fprintf(stderr, "  a=%d b=%d out=%d\n", e.a, e.b, e.outside);
        }
#endif
        throw MeshFailure("cavity boundary is not a simple loop");
      }
      tris_[t].n[1] = ita->second;  // across a: edge (b, p)
      tris_[t].n[2] = itb->second;  // across b: edge (p, a)
    }
    last_ = created.empty() ? last_ : created.front();
  }

  int alloc() {
    if (!free_.empty()) {
      const int t = free_.back();
      free_.pop_back();
      alive_[t] = true;
      return t;
    }
    tris_.push_back({});
    alive_.push_back(true);
    return static_cast<int>(tris_.size()) - 1;
  }

  std::vector<PlanarPoint> pts_;
  std::vector<Tri> tris_;
  std::vector<char> alive_;
  std::vector<int> free_;
  int last_ = 0;
};

// ---------------------------------------------------------------------------
// polygon helpers
// ---------------------------------------------------------------------------

bool point_in_polygon(PlanarPoint p, const std::vector<PlanarPoint>& poly) {
  bool inside = false;
  const int n = static_cast<int>(poly.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const PlanarPoint& a = poly[i];
    const PlanarPoint& b = poly[j];
    if ((a.Y > p.Y) != (b.Y > p.Y)) {
      const double x = a.X + (p.Y - a.Y) / (b.Y - a.Y) * (b.X - a.X);
      if (p.X < x) inside = !inside;
    }
  }
  return inside;
}

double dist_to_polygon(PlanarPoint p, const std::vector<PlanarPoint>& poly) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const PlanarPoint a = poly[i];
    const PlanarPoint b = poly[(i + 1) % n];
    const PlanarPoint ab = b - a;
    const double len2 = norm2(ab);
    double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, norm(p - (a + t * ab)));
  }
  return best;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double hash_unit(uint64_t key) {  // deterministic value in [-0.5, 0.5)
  return static_cast<double>(splitmix64(key) >> 11) * 0x1.0p-53 - 0.5;
}

struct TriangleStats {
  double min_angle;
  double max_edge;
  PlanarPoint circumcenter;
};

TriangleStats triangle_stats(PlanarPoint a, PlanarPoint b, PlanarPoint c) {
  const double la = norm(c - b), lb = norm(a - c), lc = norm(b - a);
  auto angle = [](double opp, double s1, double s2) {
    const double v = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2),
                                -1.0, 1.0);
    return std::acos(v);
  };
  const double A = angle(la, lb, lc);
  const double B = angle(lb, lc, la);
  const double C = M_PI - A - B;
  const double d = 2.0 * cross(b - a, c - a);
  PlanarPoint cc{0, 0};
  if (d != 0) {
    const double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
    cc.X = (a2 * (b.Y - c.Y) + b2 * (c.Y - a.Y) + c2 * (a.Y - b.Y)) / d;
    cc.Y = (a2 * (c.X - b.X) + b2 * (a.X - c.X) + c2 * (b.X - a.X)) / d;
  }
  return {std::min({A, B, C}), std::max({la, lb, lc}), cc};
}

std::vector<std::vector<int>> vertex_rings(
    int n_vertices, const std::vector<std::array<int, 3>>& tris) {
  std::vector<std::set<int>> ring(n_vertices);
  for (const auto& t : tris) {
    for (int i = 0; i < 3; ++i) {
      ring[t[i]].insert(t[(i + 1) % 3]);
      ring[t[i]].insert(t[(i + 2) % 3]);
    }
  }
  std::vector<std::vector<int>> out(n_vertices);
  for (int i = 0; i < n_vertices; ++i) out[i].assign(ring[i].begin(), ring[i].end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TriangleMesh
// ---------------------------------------------------------------------------

double TriangleMesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  return 0.5 * cross(vertices[tri[1]] - vertices[tri[0]],
                     vertices[tri[2]] - vertices[tri[0]]);
}

void TriangleMesh::finalize() {
  const int nv = n_vertices();
  is_boundary.assign(nv, 0);
  for (const int b : boundary_vertices) {
    if (b < 0 || b >= nv) throw MeshFailure("boundary index out of range");
    is_boundary[b] = 1;
  }

  std::map<std::pair<int, int>, int> edge_count;
  for (int t = 0; t < n_triangles(); ++t) {
    if (triangle_area(t) <= 0) {
      throw MeshFailure("triangle " + std::to_string(t) +
                        " is not counterclockwise / has nonpositive area");
    }
    for (int i = 0; i < 3; ++i) {
      int a = triangles[t][i], b = triangles[t][(i + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  int boundary_edges = 0;
  for (const auto& [edge, count] : edge_count) {
    if (count > 2) throw MeshFailure("non-manifold edge");
    if (count == 1) {
      ++boundary_edges;
      if (!is_boundary[edge.first] || !is_boundary[edge.second]) {
        throw MeshFailure("hull edge with interior endpoint");
      }
    }
  }
  if (boundary_edges != static_cast<int>(boundary_vertices.size())) {
    throw MeshFailure("boundary trace does not match triangulation hull");
  }
  const int euler = nv - static_cast<int>(edge_count.size()) + n_triangles();
  if (euler != 1) {
    throw MeshFailure("Euler relation violated: V-E+F = " + std::to_string(euler));
  }

  neighbors = vertex_rings(nv, triangles);
  for (int i = 0; i < nv; ++i) {
    if (neighbors[i].empty()) throw MeshFailure("isolated vertex");
  }
  // single component: flood from vertex 0 over the 1-ring graph
  std::vector<char> seen(nv, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const int w : neighbors[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  if (visited != nv) throw MeshFailure("mesh is not connected");
}

MeshQuality mesh_quality(const TriangleMesh& mesh) {
  MeshQuality q;
  q.min_angle_deg = 180.0;
  q.max_edge = 0.0;
  q.min_area = std::numeric_limits<double>::infinity();
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto st = triangle_stats(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                   mesh.vertices[tri[2]]);
    q.min_angle_deg = std::min(q.min_angle_deg, st.min_angle * 180.0 / M_PI);
    q.max_edge = std::max(q.max_edge, st.max_edge);
    q.min_area = std::min(q.min_area, mesh.triangle_area(t));
  }
  return q;
}

// ---------------------------------------------------------------------------
// mesh generation
// ---------------------------------------------------------------------------

TriangleMesh generate_mesh(const BoundaryCurve& curve, double h) {
  if (!(h > 0)) throw MeshFailure("nonpositive target edge length");
  const int nb = curve.size();
  if (nb < 3) throw MeshFailure("boundary curve too short");
  // re-validate: generate_mesh may be fed curves that bypassed planarize
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 2; j < nb; ++j) {
      if (i == 0 && j == nb - 1) continue;
      const PlanarPoint a = curve.samples[i], b = curve.samples[(i + 1) % nb];
      const PlanarPoint c = curve.samples[j], d = curve.samples[(j + 1) % nb];
      const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
      const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
      if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 &&
          d2 != 0 && d3 != 0 && d4 != 0) {
        throw SelfIntersection("boundary curve crosses itself");
      }
    }
  }
  {
    double area = 0;
    for (int i = 0; i < nb; ++i) {
      area += cross(curve.samples[i], curve.samples[(i + 1) % nb]);
    }
    if (area <= 0) throw DegenerateBoundary("boundary curve is not counterclockwise");
  }

  std::vector<PlanarPoint> points = curve.samples;

  // hexagonal interior lattice, kept clear of the boundary
  const double row_h = h * std::sqrt(3.0) / 2.0;
  const double gap = 0.60 * h;
  double xmin = points[0].X, xmax = xmin, ymin = points[0].Y, ymax = ymin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.X); xmax = std::max(xmax, p.X);
    ymin = std::min(ymin, p.Y); ymax = std::max(ymax, p.Y);
  }
  const int j0 = static_cast<int>(std::floor(ymin / row_h)) - 1;
  const int j1 = static_cast<int>(std::ceil(ymax / row_h)) + 1;
  for (int j = j0; j <= j1; ++j) {
    const double y = j * row_h;
    const double off = (j % 2 == 0) ? 0.0 : 0.5 * h;
    const int i0 = static_cast<int>(std::floor((xmin - off) / h)) - 1;
    const int i1 = static_cast<int>(std::ceil((xmax - off) / h)) + 1;
    for (int i = i0; i <= i1; ++i) {
      PlanarPoint p{i * h + off, y};
      const uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) |
                           static_cast<uint32_t>(j);
      p.X += 1e-7 * h * hash_unit(key);
      p.Y += 1e-7 * h * hash_unit(~key);
      if (!point_in_polygon(p, curve.samples)) continue;
      if (dist_to_polygon(p, curve.samples) < gap) continue;
      points.push_back(p);
    }
  }

  auto triangulate = [&](const std::vector<PlanarPoint>& pts) {
    return Delaunay(pts).triangles();
  };

  std::vector<std::array<int, 3>> tris = triangulate(points);

  auto smooth = [&](int rounds) {
    for (int r = 0; r < rounds; ++r) {
      const auto rings = vertex_rings(static_cast<int>(points.size()), tris);
      std::vector<PlanarPoint> next = points;
      for (std::size_t v = nb; v < points.size(); ++v) {
        if (rings[v].empty()) continue;
        PlanarPoint c{0, 0};
        for (const int w : rings[v]) c = c + points[w];
        c = (1.0 / rings[v].size()) * c;
        if (point_in_polygon(c, curve.samples) &&
            dist_to_polygon(c, curve.samples) >= 0.5 * gap) {
          next[v] = c;
        }
      }
      points.swap(next);
      tris = triangulate(points);
    }
  };

  smooth(3);

  // quality refinement: insert circumcenters (or centroids) of offending
  // triangles until the gates hold
  const double max_edge_gate = 1.5 * h;
  const double min_angle_gate = 20.0 * M_PI / 180.0;
  for (int round = 0; round < 8; ++round) {
    std::vector<PlanarPoint> inserts;
    for (const auto& t : tris) {
      const auto st = triangle_stats(points[t[0]], points[t[1]], points[t[2]]);
      if (st.min_angle >= min_angle_gate * 1.05 && st.max_edge <= max_edge_gate * 0.97) {
        continue;
      }
      PlanarPoint cand = st.circumcenter;
      if (!point_in_polygon(cand, curve.samples) ||
          dist_to_polygon(cand, curve.samples) < 0.9 * gap) {
        cand = (1.0 / 3.0) * (points[t[0]] + points[t[1]] + points[t[2]]);
        if (dist_to_polygon(cand, curve.samples) < 0.9 * gap) continue;
      }
      bool clear = true;
      for (const auto& p : points) {
        if (norm(p - cand) < 0.55 * h) { clear = false; break; }
      }
      for (const auto& p : inserts) {
        if (norm(p - cand) < 0.55 * h) { clear = false; break; }
      }
      if (clear) inserts.push_back(cand);
    }
    if (inserts.empty()) break;
    points.insert(points.end(), inserts.begin(), inserts.end());
    tris = triangulate(points);
    smooth(2);
  }

  TriangleMesh mesh;
  mesh.vertices = std::move(points);
  mesh.triangles = std::move(tris);
  mesh.boundary_vertices.resize(nb);
  for (int i = 0; i < nb; ++i) mesh.boundary_vertices[i] = i;
  mesh.boundary_kappa_E = curve.kappa_E;
  mesh.boundary_nu_E = curve.nu_E;
  mesh.h = h;
  mesh.finalize();

  const MeshQuality q = mesh_quality(mesh);
  if (q.min_angle_deg < 20.0 - 1e-9 || q.max_edge > max_edge_gate + 1e-12) {
    throw MeshFailure("quality targets unreachable: min angle " +
                      std::to_string(q.min_angle_deg) + " deg, max edge " +
                      std::to_string(q.max_edge) + " (target " +
                      std::to_string(max_edge_gate) + ")");
  }
  return mesh;
}

TriangleMesh build_mesh(const DomainSpec& domain, double h) {
  const double length = sample_boundary(domain, 1024).length();
  const int nb = std::max(16, static_cast<int>(std::lround(length / h)));
  return generate_mesh(planarize(domain, nb), h);
}

// ---------------------------------------------------------------------------
// boundary distance and Fermi frames
// ---------------------------------------------------------------------------

namespace {

void distance_scan(const TriangleMesh& mesh, std::vector<double>* dist,
                   std::vector<int>* nearest) {
  const int nv = mesh.n_vertices();
  const int nb = static_cast<int>(mesh.boundary_vertices.size());
  std::vector<SpherePoint> lifted(nv);
  for (int i = 0; i < nv; ++i) lifted[i] = stereo_lift(mesh.vertices[i]);
  std::vector<SpherePoint> blift(nb);
  for (int k = 0; k < nb; ++k) blift[k] = lifted[mesh.boundary_vertices[k]];

  std::vector<int> boundary_pos(nv, -1);
  for (int k = 0; k < nb; ++k) boundary_pos[mesh.boundary_vertices[k]] = k;

  if (dist) dist->assign(nv, 0.0);
  if (nearest) nearest->assign(nv, 0);
  parallel_for(nv, [&](std::size_t i) {
    if (mesh.is_boundary[i]) {
      if (nearest) (*nearest)[i] = boundary_pos[i];
      return;
    }
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int k = 0; k < nb; ++k) {
      const double d = geodesic_distance(lifted[i], blift[k]);
      if (d < best) { best = d; arg = k; }
    }
    if (dist) (*dist)[i] = best;
    if (nearest) (*nearest)[i] = arg;
  });
}

}  // namespace

std::vector<double> boundary_distance(const TriangleMesh& mesh) {
  std::vector<double> dist;
  distance_scan(mesh, &dist, nullptr);
  return dist;
}

std::vector<int> nearest_boundary_index(const TriangleMesh& mesh) {
  std::vector<int> nearest;
  distance_scan(mesh, nullptr, &nearest);
  return nearest;
}

FermiFrame fermi_frame(const TriangleMesh& mesh, int boundary_index) {
  const int nb = static_cast<int>(mesh.boundary_vertices.size());
  if (boundary_index < 0 || boundary_index >= nb) {
    throw MeshFailure("boundary index out of range");
  }
  FermiFrame frame;
  frame.boundary_index = boundary_index;
  frame.base = mesh.vertices[mesh.boundary_vertices[boundary_index]];
  const PlanarPoint nu = mesh.boundary_nu_E[boundary_index];
  const double scale = 0.5 * (1.0 + norm2(frame.base));  // 1/rho
  frame.tau = scale * perp(nu);
  frame.eta = -scale * nu;
  frame.kappa_tilde = spherical_boundary_curvature(
      frame.base, mesh.boundary_kappa_E[boundary_index], nu);
  return frame;
}

// ---------------------------------------------------------------------------
// mesh text I/O
// ---------------------------------------------------------------------------

void write_mesh(std::ostream& out, const TriangleMesh& mesh) {
  char buf[128];
  out << mesh.n_vertices() << " " << mesh.n_triangles() << " "
      << mesh.boundary_vertices.size() << "\n";
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.X, v.Y);
    out << buf;
  }
  for (const auto& t : mesh.triangles) {
    out << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  for (std::size_t k = 0; k < mesh.boundary_vertices.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g %.17g\n",
                  mesh.boundary_vertices[k], mesh.boundary_kappa_E[k],
                  mesh.boundary_nu_E[k].X, mesh.boundary_nu_E[k].Y);
    out << buf;
  }
}

TriangleMesh read_mesh(std::istream& in) {
  TriangleMesh mesh;
  int nv = 0, nt = 0, nb = 0;
  if (!(in >> nv >> nt >> nb) || nv < 3 || nt < 1 || nb < 3) {
    throw MeshFailure("bad mesh header");
  }
  mesh.vertices.resize(nv);
  for (auto& v : mesh.vertices) {
    if (!(in >> v.X >> v.Y)) throw MeshFailure("truncated vertex list");
  }
  mesh.triangles.resize(nt);
  for (auto& t : mesh.triangles) {
    if (!(in >> t[0] >> t[1] >> t[2])) throw MeshFailure("truncated triangle list");
  }
  mesh.boundary_vertices.resize(nb);
  mesh.boundary_kappa_E.resize(nb);
  mesh.boundary_nu_E.resize(nb);
  for (int k = 0; k < nb; ++k) {
    if (!(in >> mesh.boundary_vertices[k] >> mesh.boundary_kappa_E[k] >>
          mesh.boundary_nu_E[k].X >> mesh.boundary_nu_E[k].Y)) {
      throw MeshFailure("truncated boundary list");
    }
  }
  mesh.finalize();
  return mesh;
}

// ---------------------------------------------------------------------------
// point location
// ---------------------------------------------------------------------------

PointLocator::PointLocator(const TriangleMesh& mesh) : mesh_(mesh) {
  double xmin = mesh.vertices[0].X, xmax = xmin;
  double ymin = mesh.vertices[0].Y, ymax = ymin;
  for (const auto& v : mesh.vertices) {
    xmin = std::min(xmin, v.X); xmax = std::max(xmax, v.X);
    ymin = std::min(ymin, v.Y); ymax = std::max(ymax, v.Y);
  }
  const double span = std::max(xmax - xmin, ymax - ymin);
  cell_ = std::max(2.0 * mesh.h, span / 256.0);
  if (!(cell_ > 0)) cell_ = 1.0;
  x0_ = xmin - 0.5 * cell_;
  y0_ = ymin - 0.5 * cell_;
  nx_ = static_cast<int>((xmax - x0_) / cell_) + 2;
  ny_ = static_cast<int>((ymax - y0_) / cell_) + 2;
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    double txmin = mesh.vertices[tri[0]].X, txmax = txmin;
    double tymin = mesh.vertices[tri[0]].Y, tymax = tymin;
    for (int i = 1; i < 3; ++i) {
      txmin = std::min(txmin, mesh.vertices[tri[i]].X);
      txmax = std::max(txmax, mesh.vertices[tri[i]].X);
      tymin = std::min(tymin, mesh.vertices[tri[i]].Y);
      tymax = std::max(tymax, mesh.vertices[tri[i]].Y);
    }
    const int i0 = std::clamp(static_cast<int>((txmin - x0_) / cell_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((txmax - x0_) / cell_), 0, nx_ - 1);
    const int j0c = std::clamp(static_cast<int>((tymin - y0_) / cell_), 0, ny_ - 1);
    const int j1c = std::clamp(static_cast<int>((tymax - y0_) / cell_), 0, ny_ - 1);
    for (int j = j0c; j <= j1c; ++j) {
      for (int i = i0; i <= i1; ++i) {
        buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(t);
      }
    }
  }
}

int PointLocator::locate(PlanarPoint q, std::array<double, 3>* bary) const {
  const int i = static_cast<int>((q.X - x0_) / cell_);
  const int j = static_cast<int>((q.Y - y0_) / cell_);
  if (i < 0 || i >= nx_ || j < 0 || j >= ny_) return -1;
  for (const int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
    const auto& tri = mesh_.triangles[t];
    const PlanarPoint a = mesh_.vertices[tri[0]];
    const PlanarPoint b = mesh_.vertices[tri[1]];
    const PlanarPoint c = mesh_.vertices[tri[2]];
    const double area = cross(b - a, c - a);
    if (area <= 0) continue;
    const double b0 = cross(b - q, c - q) / area;
    const double b1 = cross(c - q, a - q) / area;
    const double b2 = 1.0 - b0 - b1;
    const double tol = -1e-10;
    if (b0 >= tol && b1 >= tol && b2 >= tol) {
      if (bary) *bary = {b0, b1, b2};
      return t;
    }
  }
  return -1;
}

double PointLocator::interpolate(const std::vector<double>& values,
                                 PlanarPoint q) const {
  std::array<double, 3> bary{};
  const int t = locate(q, &bary);
  if (t < 0) {
    throw DomainMismatch("query point outside the mesh: (" +
                         std::to_string(q.X) + ", " + std::to_string(q.Y) + ")");
  }
  const auto& tri = mesh_.triangles[t];
  return bary[0] * values[tri[0]] + bary[1] * values[tri[1]] +
         bary[2] * values[tri[2]];
}

}  // namespace lane_emden
