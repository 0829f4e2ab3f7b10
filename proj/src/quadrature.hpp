#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace triplewell::detail {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre nodes/weights on [a, b] with `panels` equal panels.
GaussRule composite_gauss(double a, double b, int panels, int order);

double trapezoid(std::span<const double> f, double h);
std::complex<double> trapezoid(std::span<const std::complex<double>> f, double h);

/// Running integrals F_j = int_{x_0}^{x_j} f on a uniform grid, fourth order.
template <typename T>
std::vector<T> cumulative_from_left(std::span<const T> f, double h);

/// Running integrals G_j = int_{x_j}^{x_end} f, accumulated from the right end.
template <typename T>
std::vector<T> cumulative_from_right(std::span<const T> f, double h);

/// Six-point Lagrange interpolation of uniformly sampled data at x.
template <typename T>
T lagrange6(std::span<const T> f, double x0, double h, double x);

}  // namespace triplewell::detail
