#pragma once

#include <array>
#include <span>
#include <vector>

#include "triplewell/special_functions.hpp"

namespace triplewell {

/// Free parameters of one triple-well model. nu = eps/omega - 1/2 and
/// mu = eps1/omega - 1/2 fix the two inserted levels, Lambda and Lambda1
/// the asymmetry of the seed solutions.
struct ModelParams {
  double omega = 1.0;
  double nu = -0.02;
  double mu = -1.0;
  double Lambda = 1.0;
  double Lambda1 = 1.0;

  /// Throws ValidationError naming the violated constraint.
  void validate() const;
};

enum class StateKind { extra_ground, extra_first, oscillator_descendant };

struct EigenState {
  int index = 0;
  double energy = 0.0;
  StateKind kind = StateKind::extra_ground;
};

struct ChiPair {
  double chi1 = 0.0;
  double chi2 = 0.0;
};

/// W = W(phi_small, phi_big) with its first two logarithmic derivatives in xi.
struct WronskianCore {
  double w = 0.0;
  double dlog_w = 0.0;
  double d2log_w = 0.0;
};

struct WellPartition {
  std::array<double, 3> minima{};
  std::array<double, 2> barriers{};
};

/// Analytic inverse-square normalisation constants and their ratio to the
/// quadrature values of the unnormalised extra-level functions.
struct NormalizationConstants {
  double ground_inv_sq = 0.0;  // tilde N_{Lambda1}^{-2}
  double first_inv_sq = 0.0;   // N_Lambda^{-2}
  double ground_ratio = 0.0;   // analytic / numeric
  double first_ratio = 0.0;

  double N_tilde_L1() const;
  double N_L() const;
};

/// Largest |xi| at which a model can be evaluated.
inline constexpr double kMaxXi = 24.0;

/// Highest eigenstate index a model provides (oscillator levels 0..64).
inline constexpr int kMaxStateIndex = kDefaultMaxLevel + 2;

/// Wronskian of D_nu(sqrt(2) xi) and D_nu(-sqrt(2) xi) taken with respect to
/// x = xi / sqrt(omega), evaluated at xi.
double base_wronskian(PcfOrder order, double omega, double xi);

/// 2 sqrt(pi omega) / Gamma(-nu).
double base_wronskian_analytic(PcfOrder order, double omega);

/// Triple-well model obtained from the oscillator by inserting the levels
/// mu + 1/2 and nu + 1/2 below its ground state. Every quantity is in
/// dimensionless xi units. Immutable after construction.
class Model {
 public:
  explicit Model(const ModelParams& params);

  const ModelParams& params() const noexcept { return params_; }
  double eps_bar() const noexcept { return params_.nu + 0.5; }
  double eps1_bar() const noexcept { return params_.mu + 0.5; }

  /// D_nu(sqrt2 xi) + Lambda D_nu(-sqrt2 xi).
  ValueDeriv phi_big(double xi) const;
  /// D_mu(sqrt2 xi) - Lambda1 D_mu(-sqrt2 xi).
  ValueDeriv phi_small(double xi) const;
  ChiPair chi_pair(double xi) const;
  WronskianCore wronskian_core(double xi) const;
  /// Third logarithmic derivative of W.
  double d3log_wronskian(double xi) const;

  double potential(double xi) const;
  double potential_slope(double xi) const;

  double eigenvalue(int index) const;
  EigenState state(int index) const;

  /// Unit-normalised eigenfunction and its xi-derivative.
  ValueDeriv wavefunction(int index, double xi) const;
  /// States 0..values.size()-1 at xi; `derivs` is optional.
  void wavefunctions(double xi, std::span<double> values, std::span<double> derivs = {}) const;

  /// phi_big / W and phi_small / W with xi-derivatives (no normalisation).
  ValueDeriv ground_raw(double xi) const;
  ValueDeriv first_raw(double xi) const;

  /// Factor mapping the raw state (ground_raw, first_raw or the
  /// unnormalised descendant) onto the normalised eigenfunction.
  double state_scale(int index) const;

  const ParabolicCylinder& d_nu() const noexcept { return d_nu_; }
  const ParabolicCylinder& d_mu() const noexcept { return d_mu_; }

  NormalizationConstants normalization_constants() const noexcept { return norms_; }

  /// Lambda obtained from the Riccati integration constant lambda > -1.
  double lambda_to_Lambda(double lambda) const;

  /// Minima and barriers of the potential on [-scan_range, scan_range].
  /// Throws ShapeError unless there are exactly three minima.
  WellPartition well_partition(double scan_range = 8.0, int scan_points = 4001) const;

 private:
  struct Seeds {
    ValueDeriv phi;    // phi_big
    ValueDeriv vphi;   // phi_small
    double w;
  };
  Seeds seeds(double xi) const;
  void raw_states(double xi, std::span<double> values, std::span<double> derivs) const;

  ModelParams params_;
  ParabolicCylinder d_nu_;
  ParabolicCylinder d_mu_;
  std::vector<double> scale_;
  NormalizationConstants norms_;
};

}  // namespace triplewell
