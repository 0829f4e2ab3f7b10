#include <algorithm>
#include <cmath>
#include <string>

#include "triplewell/errors.hpp"
#include "triplewell/oracle.hpp"

namespace triplewell::oracle {

namespace {

// Number of eigenvalues of tridiag(off, diag, off) below lambda.
std::size_t sturm_count(const std::vector<double>& diag, double off_sq, double lambda) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - lambda - (i == 0 ? 0.0 : off_sq / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> inverse_iteration(const std::vector<double>& diag, double off, double lambda) {
  const std::size_t n = diag.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + 0.1);
  const double shift = lambda + 1e-12 * std::max(1.0, std::abs(lambda));
  std::vector<double> c(n);
  std::vector<double> y(n);
  for (int iter = 0; iter < 3; ++iter) {
    // Thomas algorithm on (T - shift) y = x.
    double pivot = diag[0] - shift;
    if (pivot == 0.0) pivot = 1e-300;
    c[0] = off / pivot;
    y[0] = x[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
      pivot = diag[i] - shift - off * c[i - 1];
      if (pivot == 0.0) pivot = 1e-300;
      c[i] = off / pivot;
      y[i] = (x[i] - off * y[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    if (!std::isfinite(scale) || scale == 0.0) throw ConvergenceError("inverse iteration broke down");
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / scale;
  }
  return x;
}

}  // namespace

EigenPairs fd_eigensolve(const std::vector<double>& potential_samples, const GridSpec& grid, int k) {
  grid.validate();
  if (potential_samples.size() != grid.points) throw ShapeError("potential samples do not match the grid");
  if (k < 1 || k > 20) throw DomainError("fd_eigensolve: k must lie in [1, 20]");
  const double h = grid.spacing();
  const std::size_t n = grid.points - 2;
  if (n < static_cast<std::size_t>(k)) throw DomainError("fd_eigensolve: grid too small");
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = 1.0 / (h * h) + potential_samples[i + 1];
  const double off = -0.5 / (h * h);
  const double off_sq = off * off;
  const double lo0 = *std::min_element(diag.begin(), diag.end()) - 2.0 * std::abs(off);
  const double hi0 = *std::max_element(diag.begin(), diag.end()) + 2.0 * std::abs(off);

  EigenPairs out;
  for (int j = 0; j < k; ++j) {
    double lo = lo0;
    double hi = hi0;
    int iter = 0;
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(diag, off_sq, mid) > static_cast<std::size_t>(j)) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (++iter > 300) throw ConvergenceError("Sturm bisection did not converge");
    }
    const double lambda = 0.5 * (lo + hi);
    std::vector<double> interior = inverse_iteration(diag, off, lambda);
    double norm = 0.0;
    double sum = 0.0;
    for (double v : interior) {
      norm += v * v;
      sum += v;
    }
    const double s = (sum < 0.0 ? -1.0 : 1.0) / std::sqrt(norm * h);
    std::vector<double> full(grid.points, 0.0);
    for (std::size_t i = 0; i < n; ++i) full[i + 1] = s * interior[i];
    out.eigenvalues.push_back(lambda);
    out.eigenvectors.push_back(std::move(full));
  }
  return out;
}

ExtrapolatedSpectrum fd_eigensolve_extrapolated(const std::function<double(double)>& potential,
                                                const GridSpec& grid, int k) {
  grid.validate();
  GridSpec fine_grid = grid;
  fine_grid.points = 2 * grid.points - 1;
  auto sample = [&potential](const GridSpec& g) {
    std::vector<double> v(g.points);
    for (std::size_t i = 0; i < g.points; ++i) v[i] = potential(g.at(i));
    return v;
  };
  ExtrapolatedSpectrum out;
  out.coarse = fd_eigensolve(sample(grid), grid, k).eigenvalues;
  out.fine = fd_eigensolve(sample(fine_grid), fine_grid, k).eigenvalues;
  for (int j = 0; j < k; ++j) {
    out.extrapolated.push_back((4.0 * out.fine[static_cast<std::size_t>(j)] -
                                out.coarse[static_cast<std::size_t>(j)]) / 3.0);
  }
  return out;
}

}  // namespace triplewell::oracle
