#pragma once

#include <cstddef>
#include <vector>

namespace triplewell {

/// Uniform grid on [xi_min, xi_max] with `points` samples, ends included.
struct GridSpec {
  double xi_min = -10.0;
  double xi_max = 10.0;
  std::size_t points = 2001;

  /// Throws ValidationError unless points >= 3 and xi_min < xi_max.
  void validate() const;

  double spacing() const { return (xi_max - xi_min) / static_cast<double>(points - 1); }
  double at(std::size_t i) const {
    return i + 1 == points ? xi_max : xi_min + static_cast<double>(i) * spacing();
  }
  std::vector<double> nodes() const;
};

}  // namespace triplewell
