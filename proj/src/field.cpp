#include "lane_emden/field.hpp"

#include <cstdio>
#include <ostream>

namespace lane_emden {

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::u: return "u";
    case Quantity::v: return "v";
    case Quantity::log_u: return "log_u";
    case Quantity::eigenfunction: return "eigenfunction";
  }
  return "unknown";
}

double ScalarField::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < mesh->n_vertices(); ++i) {
    if (valid(i)) m = std::max(m, values[i]);
  }
  return m;
}

void write_field_csv(std::ostream& out, const ScalarField& field) {
  out << "X,Y,z_sphere,u,quantity,p\n";
  char buf[192];
  for (int i = 0; i < field.mesh->n_vertices(); ++i) {
    const PlanarPoint q = field.mesh->vertices[i];
    const SpherePoint s = stereo_lift(q);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%.17g\n", q.X,
                  q.Y, s.z, field.values[i], to_string(field.meta.quantity),
                  field.meta.p);
    out << buf;
  }
}

}  // namespace lane_emden
