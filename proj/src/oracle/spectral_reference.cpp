#include <cmath>

#include "triplewell/errors.hpp"
#include "triplewell/oracle.hpp"

namespace triplewell::oracle {

namespace {

// Composite Simpson weights; an even point count closes with one trapezoid cell.
std::vector<double> simpson_weights(std::size_t n, double h) {
  std::vector<double> w(n, 0.0);
  const std::size_t m = n % 2 == 1 ? n : n - 1;
  for (std::size_t i = 0; i + 2 < m; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (m != n) {
    w[n - 2] += 0.5 * h;
    w[n - 1] += 0.5 * h;
  }
  return w;
}

}  // namespace

PacketState spectral_propagate_reference(const Model& model, const PacketState& packet, double T,
                                         int n_max) {
  if (n_max < 0 || n_max > kDefaultMaxLevel) throw DomainError("n_max must lie in [0, 64]");
  const GridSpec& grid = packet.grid;
  grid.validate();
  if (packet.amplitudes.size() != grid.points) throw ShapeError("packet does not match its grid");
  const std::size_t count = static_cast<std::size_t>(n_max) + 1;
  const std::vector<double> w = simpson_weights(grid.points, grid.spacing());
  std::vector<std::vector<double>> psi(grid.points, std::vector<double>(count));
  std::vector<complex> overlap(count, 0.0);
  for (std::size_t i = 0; i < grid.points; ++i) {
    model.wavefunctions(grid.at(i), psi[i]);
    for (std::size_t n = 0; n < count; ++n) overlap[n] += w[i] * psi[i][n] * packet.amplitudes[i];
  }
  for (std::size_t n = 0; n < count; ++n) {
    overlap[n] *= std::exp(complex(0.0, -model.eigenvalue(static_cast<int>(n)) * T));
  }
  PacketState out{grid, std::vector<complex>(grid.points, 0.0), packet.time + T};
  for (std::size_t i = 0; i < grid.points; ++i) {
    for (std::size_t n = 0; n < count; ++n) out.amplitudes[i] += overlap[n] * psi[i][n];
  }
  return out;
}

}  // namespace triplewell::oracle
