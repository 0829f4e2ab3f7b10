#include "triplewell/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

constexpr double kNodeSpacing = 0.125;
constexpr int kMaxSeriesTerms = 400;
constexpr double kSeriesTolerance = 1e-18;

double anchor_for(double nu) { return std::max(12.0, 4.0 * std::sqrt(1.0 + std::abs(nu))); }

// One Taylor step of y'' = (z^2/4 - a) y from z0 to z0 + s.
// With z^2 = z0^2 + 2 z0 s + s^2 the coefficients obey
//   (k+2)(k+1) c_{k+2} = (z0^2/4 - a) c_k + (z0/2) c_{k-1} + c_{k-2}/4.
ValueDeriv taylor_step(double a, double z0, ValueDeriv y, double s) {
  if (s == 0.0) return y;
  const double p = 0.25 * z0 * z0 - a;
  const double q = 0.5 * z0;
  double c_km2 = 0.0;
  double c_km1 = 0.0;
  double c_k = y.value;
  double c_kp1 = y.deriv;
  double value = y.value + y.deriv * s;
  double deriv = y.deriv;
  double s_k = 1.0;  // s^k
  int quiet = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const double c_kp2 = (p * c_k + q * c_km1 + 0.25 * c_km2) / ((k + 2.0) * (k + 1.0));
    const double dterm = (k + 2.0) * c_kp2 * s_k * s;  // (k+2) c_{k+2} s^{k+1}
    const double term = dterm * s / (k + 2.0);
    value += term;
    deriv += dterm;
    if (std::abs(term) <= kSeriesTolerance * std::abs(value) &&
        std::abs(dterm) <= kSeriesTolerance * std::abs(deriv)) {
      if (++quiet == 3) return {value, deriv};
    } else {
      quiet = 0;
    }
    c_km2 = c_km1;
    c_km1 = c_k;
    c_k = c_kp1;
    c_kp1 = c_kp2;
    s_k *= s;
  }
  throw ConvergenceError("parabolic cylinder Taylor step did not converge at z0 = " +
                         std::to_string(z0));
}

void check_argument(double z) {
  if (!std::isfinite(z) || std::abs(z) > kPcfMaxArgument) {
    throw DomainError("parabolic cylinder argument " + std::to_string(z) +
                      " outside supported range |z| <= 40");
  }
}

}  // namespace

PcfOrder::PcfOrder(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || nu <= -30.0) {
    throw DomainError("parabolic cylinder order " + std::to_string(nu) +
                      " outside supported range (-30, inf)");
  }
}

bool PcfOrder::is_nonnegative_integer() const noexcept {
  return nu_ >= 0.0 && nu_ == std::floor(nu_);
}

double gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma of non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("gamma pole at x = " + std::to_string(x));
  }
  return std::tgamma(x);
}

void require_independent_pair(PcfOrder order) {
  if (order.is_nonnegative_integer()) {
    throw DomainError("D_nu(z) and D_nu(-z) are linearly dependent for integer order nu = " +
                      std::to_string(order.nu()));
  }
}

ParabolicCylinder::ParabolicCylinder(PcfOrder order, double z_min)
    : nu_(order.nu()),
      anchor_(anchor_for(order.nu())),
      z_min_(order.is_nonnegative_integer() ? 0.0 : std::max(z_min, -kPcfMaxArgument)),
      integer_order_(order.is_nonnegative_integer()) {
  const double a = nu_ + 0.5;
  nodes_.push_back(asymptotic(anchor_));
  double z = anchor_;
  while (z > z_min_) {
    nodes_.push_back(taylor_step(a, z, nodes_.back(), -kNodeSpacing));
    z -= kNodeSpacing;
  }
}

// D_nu(z) ~ z^nu e^{-z^2/4} sum_k (-1)^k (-nu)_{2k} / (k! (2 z^2)^k), z -> +inf.
ValueDeriv ParabolicCylinder::asymptotic(double z) const {
  const double u = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double sum = 1.0;
  double dsum = nu_ / z - 0.5 * z;
  double previous = std::abs(term);
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    term *= -(2.0 * k - nu_) * (2.0 * k + 1.0 - nu_) * u / (k + 1.0);
    const double dterm = term * ((nu_ - 2.0 * (k + 1)) / z - 0.5 * z);
    sum += term;
    dsum += dterm;
    if (std::abs(term) <= kSeriesTolerance * std::abs(sum)) {
      const double envelope = std::exp(nu_ * std::log(z) - 0.25 * z * z);
      return {envelope * sum, envelope * dsum};
    }
    if (std::abs(term) > previous && std::abs(term) > 1e-14 * std::abs(sum)) break;
    previous = std::abs(term);
  }
  throw ConvergenceError("asymptotic expansion of D_nu diverged at z = " + std::to_string(z));
}

ValueDeriv ParabolicCylinder::operator()(double z) const {
  check_argument(z);
  if (z < 0.0 && integer_order_) {
    // D_n(-z) = (-1)^n D_n(z); marching would follow the dominant solution.
    const ValueDeriv mirrored = (*this)(-z);
    const double sign = std::fmod(nu_, 2.0) == 0.0 ? 1.0 : -1.0;
    return {sign * mirrored.value, -sign * mirrored.deriv};
  }
  if (z >= anchor_) return asymptotic(z);
  if (z < z_min_ - 1e-12) {
    throw DomainError("argument " + std::to_string(z) + " below the tabulated range of this evaluator");
  }
  auto j = static_cast<std::size_t>(std::floor((anchor_ - z) / kNodeSpacing));
  j = std::min(j, nodes_.size() - 1);
  const double z_node = anchor_ - static_cast<double>(j) * kNodeSpacing;
  return taylor_step(nu_ + 0.5, z_node, nodes_[j], z - z_node);
}

double pcf_d(PcfOrder order, double z) {
  check_argument(z);
  return ParabolicCylinder(order, std::floor(z))(z).value;
}

double pcf_d_deriv(PcfOrder order, double z) {
  check_argument(z);
  return ParabolicCylinder(order, std::floor(z))(z).deriv;
}

void hermite_psi_all(double xi, std::span<double> values, std::span<double> derivs) {
  if (values.empty()) return;
  if (!derivs.empty() && derivs.size() != values.size()) {
    throw DomainError("hermite_psi_all: derivative buffer size mismatch");
  }
  const double ground = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
  values[0] = ground;
  if (values.size() > 1) values[1] = std::numbers::sqrt2 * xi * ground;
  for (std::size_t n = 1; n + 1 < values.size(); ++n) {
    const double k = static_cast<double>(n);
    values[n + 1] = std::sqrt(2.0 / (k + 1.0)) * xi * values[n] - std::sqrt(k / (k + 1.0)) * values[n - 1];
  }
  if (derivs.empty()) return;
  derivs[0] = -xi * values[0];
  for (std::size_t n = 1; n < values.size(); ++n) {
    derivs[n] = std::sqrt(2.0 * static_cast<double>(n)) * values[n - 1] - xi * values[n];
  }
}

ValueDeriv hermite_psi(int n, double xi, int max_level) {
  if (n < 0 || n > max_level) {
    throw DomainError("oscillator level " + std::to_string(n) + " outside [0, " +
                      std::to_string(max_level) + "]");
  }
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  std::vector<double> derivs(values.size());
  hermite_psi_all(xi, values, derivs);
  return {values.back(), derivs.back()};
}

}  // namespace triplewell
