#pragma once

#include <span>
#include <vector>

namespace triplewell {

struct ValueDeriv {
  double value = 0.0;
  double deriv = 0.0;
};

/// Order of the parabolic cylinder function D_nu.
class PcfOrder {
 public:
  /// Throws DomainError for non-finite orders or nu <= -30.
  explicit PcfOrder(double nu);

  double nu() const noexcept { return nu_; }
  bool is_nonnegative_integer() const noexcept;

 private:
  double nu_;
};

/// Largest |z| accepted by the D_nu kernels.
inline constexpr double kPcfMaxArgument = 40.0;

/// Default highest oscillator level handled by hermite_psi.
inline constexpr int kDefaultMaxLevel = 64;

/// Gamma function. Throws DomainError at the poles x = 0, -1, -2, ...
double gamma(double x);

/// Parabolic cylinder function D_nu(z) for real z, |z| <= kPcfMaxArgument.
double pcf_d(PcfOrder order, double z);

/// dD_nu/dz.
double pcf_d_deriv(PcfOrder order, double z);

/// Throws DomainError when D_nu(z) and D_nu(-z) are linearly dependent,
/// i.e. when nu is a non-negative integer (1/Gamma(-nu) = 0).
void require_independent_pair(PcfOrder order);

/// Evaluator of D_nu and its derivative for one fixed order.
///
/// The recessive behaviour at z -> +inf is anchored by the asymptotic
/// expansion at z_anchor >= 12. Below the anchor the Weber equation
/// y'' = (z^2/4 - nu - 1/2) y is continued leftwards with Taylor steps of
/// width 1/8 and the (D, D') pairs are tabulated. Leftward continuation only
/// ever follows a growing solution, so rounding errors are damped. A query
/// re-expands around the nearest node to its right. For non-negative integer
/// orders negative arguments use the reflection D_n(-z) = (-1)^n D_n(z).
class ParabolicCylinder {
 public:
  explicit ParabolicCylinder(PcfOrder order, double z_min = -kPcfMaxArgument);

  ValueDeriv operator()(double z) const;
  double value(double z) const { return (*this)(z).value; }

  double nu() const noexcept { return nu_; }
  double anchor() const noexcept { return anchor_; }

 private:
  ValueDeriv asymptotic(double z) const;

  double nu_;
  double anchor_;
  double z_min_;
  bool integer_order_;
  std::vector<ValueDeriv> nodes_;
};

/// Unit-normalised oscillator eigenfunction psi_n(xi) (omega = 1, xi units)
/// and its derivative. Throws DomainError for n < 0 or n > max_level.
ValueDeriv hermite_psi(int n, double xi, int max_level = kDefaultMaxLevel);

/// Fills psi_0..psi_{values.size()-1} at xi. `derivs` may be empty; otherwise
/// it must have the same size as `values`.
void hermite_psi_all(double xi, std::span<double> values, std::span<double> derivs = {});

}  // namespace triplewell
