#include "triplewell/grid.hpp"

#include <cmath>

#include "triplewell/errors.hpp"

namespace triplewell {

void GridSpec::validate() const {
  if (!std::isfinite(xi_min) || !std::isfinite(xi_max)) {
    throw ValidationError("grid", "grid bounds must be finite");
  }
  if (!(xi_min < xi_max)) throw ValidationError("grid.xi_min", "grid requires xi_min < xi_max");
  if (points < 3) throw ValidationError("grid.points", "grid requires at least 3 points");
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = at(i);
  return out;
}

}  // namespace triplewell
