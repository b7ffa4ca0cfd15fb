#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <vector>

#include "lane_emden/mesh.hpp"

namespace lane_emden {

enum class Quantity { u, v, log_u, eigenfunction };

const char* to_string(Quantity q);

struct FieldMeta {
  Quantity quantity = Quantity::u;
  double p = 0;
  double normalization = 1;
  double lambda = std::numeric_limits<double>::quiet_NaN();  // eigen solves only
};

// Per-vertex nodal values on a mesh. Non-finite entries mark vertices where
// the quantity is singular (boundary values of log u and of u^{(1-p)/2} for
// p > 1); those are excluded from all statistics.
struct ScalarField {
  const TriangleMesh* mesh = nullptr;
  std::vector<double> values;
  FieldMeta meta;

  bool valid(int i) const { return std::isfinite(values[i]); }
  double max_value() const;
};

// CSV dump: header "X,Y,z_sphere,u,quantity,p", one row per vertex in index
// order, floats with 17 significant digits.
void write_field_csv(std::ostream& out, const ScalarField& field);

}  // namespace lane_emden
