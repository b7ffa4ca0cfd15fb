#include "lane_emden/hessian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "lane_emden/parallel.hpp"

namespace lane_emden {

namespace {

std::vector<int> two_ring(const TriangleMesh& mesh, int vertex) {
  std::set<int> patch;
  for (const int w : mesh.neighbors[vertex]) {
    patch.insert(w);
    for (const int w2 : mesh.neighbors[w]) {
      if (w2 != vertex) patch.insert(w2);
    }
  }
  patch.erase(vertex);
  return {patch.begin(), patch.end()};
}

}  // namespace

std::optional<ChartDerivatives> fit_quadratic_patch(const TriangleMesh& mesh,
                                                    const std::vector<double>& values,
                                                    int vertex) {
  const std::vector<int> ring = two_ring(mesh, vertex);
  if (static_cast<int>(ring.size()) < 6) {
    throw PatchDeficient("vertex " + std::to_string(vertex) + " has only " +
                         std::to_string(ring.size()) + " patch neighbors");
  }
  if (!std::isfinite(values[vertex])) return std::nullopt;

  const PlanarPoint x0 = mesh.vertices[vertex];
  std::vector<int> usable;
  usable.reserve(ring.size());
  for (const int w : ring) {
    if (std::isfinite(values[w])) usable.push_back(w);
  }
  if (static_cast<int>(usable.size()) < 6) {
    if (usable.size() == ring.size()) {
      throw PatchDeficient("vertex " + std::to_string(vertex) +
                           " patch underdetermined");
    }
    return std::nullopt;  // singular field ate the patch
  }

  // v(x) ~ c0 + c1 dx + c2 dy + c3 dx^2/2 + c4 dx dy + c5 dy^2/2 [+ cubics].
  // The cubic tail absorbs the third-order content that would otherwise bias
  // the recovered second derivatives on one-sided patches; the derivative
  // unknowns stay the six quadratic coefficients.
  const int order3 = static_cast<int>(usable.size()) >= 12 ? 1 : 0;
  const int m = 6 + 4 * order3;

  Eigen::MatrixXd ata = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd atb = Eigen::VectorXd::Zero(m);
  auto accumulate = [&](PlanarPoint q, double value, double weight) {
    const double dx = q.X - x0.X, dy = q.Y - x0.Y;
    Eigen::VectorXd row(m);
    row.head<6>() << 1.0, dx, dy, 0.5 * dx * dx, dx * dy, 0.5 * dy * dy;
    if (order3) {
      row.tail<4>() << dx * dx * dx, dx * dx * dy, dx * dy * dy, dy * dy * dy;
    }
    ata += weight * row * row.transpose();
    atb += weight * value * row;
  };
  double d2_min = std::numeric_limits<double>::infinity();
  for (const int w : usable) {
    d2_min = std::min(d2_min, norm2(mesh.vertices[w] - x0));
  }
  const double reg = 1e-4 * d2_min;
  accumulate(x0, values[vertex], 1.0 / reg);
  for (const int w : usable) {
    accumulate(mesh.vertices[w], values[w], 1.0 / (norm2(mesh.vertices[w] - x0) + reg));
  }

  const Eigen::VectorXd c = ata.ldlt().solve(atb);
  if (!c.allFinite()) return std::nullopt;
  return ChartDerivatives{c[1], c[2], c[3], c[4], c[5]};
}

HessianField covariant_hessian(const TriangleMesh& mesh, const ScalarField& v) {
  HessianField field;
  field.mesh = &mesh;
  field.samples.assign(mesh.n_vertices(), HessianSample{});

  parallel_for(mesh.n_vertices(), [&](std::size_t i) {
    if (mesh.is_boundary[i]) return;
    const auto fit = fit_quadratic_patch(mesh, v.values, static_cast<int>(i));
    if (!fit) return;

    const PlanarPoint q = mesh.vertices[i];
    const double rho2 = conformal_factor(q);
    const PlanarPoint f = conformal_log_gradient(q);
    const double fg = f.X * fit->vx + f.Y * fit->vy;

    // (hess v)_ij = v_ij - f_i v_j - f_j v_i + delta_ij (f_X v_X + f_Y v_Y)
    const double hxx = fit->vxx - 2.0 * f.X * fit->vx + fg;
    const double hxy = fit->vxy - f.X * fit->vy - f.Y * fit->vx;
    const double hyy = fit->vyy - 2.0 * f.Y * fit->vy + fg;

    HessianSample s;
    s.A = hxx / rho2;
    s.B = hxy / rho2;
    s.C = hyy / rho2;
    s.phi = s.A * s.C - s.B * s.B;
    s.trace = s.A + s.C;
    const double mid = 0.5 * s.trace;
    const double rad = std::sqrt(std::max(mid * mid - s.phi, 0.0));
    s.eig_min = mid - rad;
    s.eig_max = mid + rad;
    s.grad_X = fit->vx;
    s.grad_Y = fit->vy;
    s.grad_norm = std::hypot(fit->vx, fit->vy) / std::sqrt(rho2);
    s.valid = true;
    field.samples[i] = s;
  });
  return field;
}

double hessian_form(const HessianSample& sample, PlanarPoint dir) {
  const double len = norm(dir);
  const double ex = dir.X / len, ey = dir.Y / len;
  return sample.A * ex * ex + 2.0 * sample.B * ex * ey + sample.C * ey * ey;
}

HessianField transform_hessian(const HessianField& hess_u, const ScalarField& u,
                               double p) {
  const TriangleMesh& mesh = *hess_u.mesh;
  HessianField field;
  field.mesh = &mesh;
  field.samples.assign(mesh.n_vertices(), HessianSample{});

  const bool log_case = std::abs(p - 1.0) <= 1e-6;
  const double alpha = 0.5 * (1.0 - p);

  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const HessianSample& su = hess_u.samples[i];
    if (!su.valid || mesh.is_boundary[i]) continue;
    const double ui = u.values[i];
    if (!(ui > 0)) {
      throw NonPositive("interior vertex " + std::to_string(i) + " has u = " +
                        std::to_string(ui));
    }
    double g1, g2;  // g'(u), g''(u)
    if (log_case) {
      g1 = 1.0 / ui;
      g2 = -1.0 / (ui * ui);
    } else {
      g1 = alpha * std::pow(ui, alpha - 1.0);
      g2 = alpha * (alpha - 1.0) * std::pow(ui, alpha - 2.0);
    }

    // frame components of du: chart gradient over rho
    const double rho = std::sqrt(conformal_factor(mesh.vertices[i]));
    const double gx = su.grad_X / rho, gy = su.grad_Y / rho;

    HessianSample s;
    s.A = g1 * su.A + g2 * gx * gx;
    s.B = g1 * su.B + g2 * gx * gy;
    s.C = g1 * su.C + g2 * gy * gy;
    s.phi = s.A * s.C - s.B * s.B;
    s.trace = s.A + s.C;
    const double mid = 0.5 * s.trace;
    const double rad = std::sqrt(std::max(mid * mid - s.phi, 0.0));
    s.eig_min = mid - rad;
    s.eig_max = mid + rad;
    s.grad_X = g1 * su.grad_X;
    s.grad_Y = g1 * su.grad_Y;
    s.grad_norm = std::abs(g1) * su.grad_norm;
    s.valid = true;
    field.samples[i] = s;
  }
  return field;
}

}  // namespace lane_emden
