#pragma once

#include <array>
#include <complex>

#include "triplewell/model.hpp"

namespace triplewell {

using complex = std::complex<double>;

inline constexpr double kDefaultCausticGuard = 1e-3;

/// Dimensionless time T = pi n + tau, 0 < tau < pi, kept away from caustics.
class TimePoint {
 public:
  /// Throws CausticError when |sin tau| < guard, DomainError for T < 0.
  static TimePoint at(double T, double guard = kDefaultCausticGuard);

  double T() const noexcept { return T_; }
  int n() const noexcept { return n_; }
  double tau() const noexcept { return tau_; }

 private:
  TimePoint(double T, int n, double tau) : T_(T), n_(n), tau_(tau) {}
  double T_;
  int n_;
  double tau_;
};

struct PropagatorSample {
  complex value;
  double xi = 0.0;
  double xi0 = 0.0;
  TimePoint at;
};

/// Oscillator kernel K0(xi, T; zeta, 0) in xi units.
complex k0(double xi, const TimePoint& at, double zeta);

/// Same kernel with the prefactor taken as the principal square root of
/// omega e^{-i pi (1/2 + n)} / (2 pi sin tau).
complex k0_principal_branch(double xi, const TimePoint& at, double zeta);

enum class SeedLevel { epsilon, epsilon1 };

/// Integral over zeta of K0(xi, T; zeta) g(zeta) and its first two
/// xi-derivatives, where g is the theta-weighted seed combination of the
/// requested level split at xi0.
std::array<complex, 3> half_line_transform(const Model& model, const TimePoint& at, double xi,
                                           double xi0, SeedLevel level);

/// (L~ L f)(xi) from f, f', f''. L annihilates phi_big.
complex intertwine(const Model& model, complex f_value, complex f_d1, complex f_d2, double xi);

/// Triple-well propagator K(xi, T; xi0, 0).
complex k_triple(const Model& model, const TimePoint& at, double xi, double xi0);

/// Truncated eigenfunction sum of the propagator, indices 0..n_max.
complex k_spectral_sum(const Model& model, double T, double xi, double xi0, int n_max);

}  // namespace triplewell
