#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "triplewell/errors.hpp"

namespace triplewell::detail {

namespace {

GaussRule build_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Cell integral over [x_j, x_{j+1}] from the cubic through four neighbours.
template <typename T>
T cell(std::span<const T> f, std::size_t j, double h) {
  const std::size_t n = f.size();
  if (n < 4) return 0.5 * h * (f[j] + f[j + 1]);
  if (j == 0) return h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
  if (j + 2 == n) {
    return h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]);
  }
  return h / 24.0 * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
  return it->second;
}

GaussRule composite_gauss(double a, double b, int panels, int order) {
  const GaussRule& base = gauss_legendre(order);
  GaussRule out;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      out.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
      out.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return out;
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

std::complex<double> trapezoid(std::span<const std::complex<double>> f, double h) {
  if (f.size() < 2) return 0.0;
  std::complex<double> s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

template <typename T>
std::vector<T> cumulative_from_left(std::span<const T> f, double h) {
  std::vector<T> out(f.size(), T{});
  for (std::size_t j = 0; j + 1 < f.size(); ++j) out[j + 1] = out[j] + cell(f, j, h);
  return out;
}

template <typename T>
std::vector<T> cumulative_from_right(std::span<const T> f, double h) {
  std::vector<T> out(f.size(), T{});
  for (std::size_t j = f.size() - 1; j-- > 0;) out[j] = out[j + 1] + cell(f, j, h);
  return out;
}

template <typename T>
T lagrange6(std::span<const T> f, double x0, double h, double x) {
  const std::size_t n = f.size();
  if (n < 6) throw ShapeError("six-point interpolation needs at least six samples");
  const double t = (x - x0) / h;
  auto base = static_cast<std::ptrdiff_t>(std::floor(t)) - 2;
  base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n) - 6);
  T sum{};
  for (int i = 0; i < 6; ++i) {
    double w = 1.0;
    for (int k = 0; k < 6; ++k) {
      if (k != i) w *= (t - static_cast<double>(base + k)) / static_cast<double>(i - k);
    }
    sum += w * f[static_cast<std::size_t>(base + i)];
  }
  return sum;
}

template std::vector<double> cumulative_from_left(std::span<const double>, double);
template std::vector<std::complex<double>> cumulative_from_left(std::span<const std::complex<double>>, double);
template std::vector<double> cumulative_from_right(std::span<const double>, double);
template std::vector<std::complex<double>> cumulative_from_right(std::span<const std::complex<double>>, double);
template double lagrange6(std::span<const double>, double, double, double);
template std::complex<double> lagrange6(std::span<const std::complex<double>>, double, double, double);

}  // namespace triplewell::detail
