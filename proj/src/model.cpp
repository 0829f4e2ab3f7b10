#include "triplewell/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "quadrature.hpp"
#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

constexpr double kNormRange = 16.0;
constexpr int kNormPanels = 64;
constexpr int kNormOrder = 20;
constexpr double kBisectionTolerance = 1e-8;
constexpr double kLambdaProbe = 20.0;

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

void check_xi(double xi) {
  if (!(std::abs(xi) <= kMaxXi)) {
    throw DomainError("xi = " + std::to_string(xi) + " outside supported range |xi| <= 24");
  }
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

void ModelParams::validate() const {
  require_finite(omega, "omega");
  require_finite(nu, "nu");
  require_finite(mu, "mu");
  require_finite(Lambda, "Lambda");
  require_finite(Lambda1, "Lambda1");
  if (!(omega > 0.0)) throw ValidationError("omega", "must be positive");
  if (!(nu > -0.5 && nu < 0.0)) throw ValidationError("nu", "must lie in (-1/2, 0)");
  if (!(mu < nu)) throw ValidationError("mu", "must be smaller than nu");
  if (nu - mu < 1e-6) throw ValidationError("mu", "|nu - mu| < 1e-6 makes the normalisation degenerate");
  if (!(mu > -30.0)) throw ValidationError("mu", "must exceed -30");
  if (!(Lambda > 0.0)) throw ValidationError("Lambda", "must be positive");
  if (!(Lambda1 > 0.0)) throw ValidationError("Lambda1", "must be positive");
}

double NormalizationConstants::N_tilde_L1() const { return 1.0 / std::sqrt(ground_inv_sq); }
double NormalizationConstants::N_L() const { return 1.0 / std::sqrt(first_inv_sq); }

double base_wronskian(PcfOrder order, double omega, double xi) {
  const ParabolicCylinder d(order, -std::numbers::sqrt2 * std::abs(xi) - 1.0);
  const double z = std::numbers::sqrt2 * xi;
  const ValueDeriv a = d(z);
  const ValueDeriv b = d(-z);
  // d/dxi D(+-sqrt2 xi) = +-sqrt2 D'; d/dx = sqrt(omega) d/dxi.
  const double w_xi = a.value * (-std::numbers::sqrt2 * b.deriv) - std::numbers::sqrt2 * a.deriv * b.value;
  return std::sqrt(omega) * w_xi;
}

double base_wronskian_analytic(PcfOrder order, double omega) {
  return 2.0 * std::sqrt(std::numbers::pi * omega) / gamma(-order.nu());
}

Model::Model(const ModelParams& params)
    : params_((params.validate(), params)),
      d_nu_(PcfOrder(params.nu), -std::numbers::sqrt2 * kMaxXi - 0.5),
      d_mu_(PcfOrder(params.mu), -std::numbers::sqrt2 * kMaxXi - 0.5) {
  const double w0 = seeds(0.0).w;
  const auto rule = detail::composite_gauss(-kNormRange, kNormRange, kNormPanels, kNormOrder);
  const std::size_t count = kMaxStateIndex + 1;
  std::vector<double> sums(count, 0.0);
  std::vector<double> values(count);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    raw_states(rule.nodes[j], values, {});
    for (std::size_t i = 0; i < count; ++i) sums[i] += rule.weights[j] * values[i] * values[i];
  }
  scale_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double sign = i < 2 ? sign_of(w0) : 1.0;
    scale_[i] = sign / std::sqrt(sums[i]);
  }

  const double gap = 4.0 * (params_.nu - params_.mu) * std::sqrt(std::numbers::pi * params_.omega);
  norms_.ground_inv_sq = params_.Lambda1 * gap / gamma(-params_.mu);
  norms_.first_inv_sq = params_.Lambda * gap / gamma(-params_.nu);
  norms_.ground_ratio = norms_.ground_inv_sq * sums[0];
  norms_.first_ratio = norms_.first_inv_sq * sums[1];
}

Model::Seeds Model::seeds(double xi) const {
  check_xi(xi);
  const double z = std::numbers::sqrt2 * xi;
  const ValueDeriv a = d_nu_(z);
  const ValueDeriv b = d_nu_(-z);
  const ValueDeriv c = d_mu_(z);
  const ValueDeriv d = d_mu_(-z);
  Seeds s;
  s.phi = {a.value + params_.Lambda * b.value,
           std::numbers::sqrt2 * (a.deriv - params_.Lambda * b.deriv)};
  s.vphi = {c.value - params_.Lambda1 * d.value,
            std::numbers::sqrt2 * (c.deriv + params_.Lambda1 * d.deriv)};
  s.w = s.vphi.value * s.phi.deriv - s.vphi.deriv * s.phi.value;
  if (!std::isfinite(s.w) || s.w == 0.0) {
    throw DegeneracyError("Wronskian W(phi_small, phi_big) degenerate at xi = " + std::to_string(xi));
  }
  return s;
}

ValueDeriv Model::phi_big(double xi) const { return seeds(xi).phi; }
ValueDeriv Model::phi_small(double xi) const { return seeds(xi).vphi; }

ChiPair Model::chi_pair(double xi) const {
  check_xi(xi);
  const Seeds s = seeds(xi);
  const double z = std::numbers::sqrt2 * xi;
  const ValueDeriv c = d_mu_(z);
  const ValueDeriv d = d_mu_(-z);
  const ValueDeriv f1{c.value, std::numbers::sqrt2 * c.deriv};
  const ValueDeriv f2{d.value, -std::numbers::sqrt2 * d.deriv};
  const double w1 = f1.value * s.phi.deriv - f1.deriv * s.phi.value;
  const double w2 = f2.value * s.phi.deriv - f2.deriv * s.phi.value;
  return {w1 / s.phi.value, -w2 / s.phi.value};
}

WronskianCore Model::wronskian_core(double xi) const {
  const Seeds s = seeds(xi);
  const double k = 2.0 * (eps1_bar() - eps_bar());
  const double dlog = k * s.vphi.value * s.phi.value / s.w;
  const double sym = s.vphi.deriv * s.phi.value + s.vphi.value * s.phi.deriv;
  return {s.w, dlog, k * sym / s.w - dlog * dlog};
}

double Model::d3log_wronskian(double xi) const {
  const Seeds s = seeds(xi);
  const double k = 2.0 * (eps1_bar() - eps_bar());
  const double prod = s.vphi.value * s.phi.value;
  const double dlog = k * prod / s.w;
  const double sym = s.vphi.deriv * s.phi.value + s.vphi.value * s.phi.deriv;
  const double d2log = k * sym / s.w - dlog * dlog;
  const double dsym =
      (2.0 * xi * xi - 2.0 * eps1_bar() - 2.0 * eps_bar()) * prod + 2.0 * s.vphi.deriv * s.phi.deriv;
  return k * (dsym / s.w - sym * dlog / s.w) - 2.0 * dlog * d2log;
}

double Model::potential(double xi) const { return 0.5 * xi * xi - wronskian_core(xi).d2log_w; }

double Model::potential_slope(double xi) const { return xi - d3log_wronskian(xi); }

double Model::eigenvalue(int index) const {
  if (index < 0 || index > kMaxStateIndex) {
    throw DomainError("state index " + std::to_string(index) + " outside [0, " +
                      std::to_string(kMaxStateIndex) + "]");
  }
  if (index == 0) return eps1_bar();
  if (index == 1) return eps_bar();
  return index - 2 + 0.5;
}

EigenState Model::state(int index) const {
  const double e = eigenvalue(index);
  const StateKind kind = index == 0   ? StateKind::extra_ground
                         : index == 1 ? StateKind::extra_first
                                      : StateKind::oscillator_descendant;
  return {index, e, kind};
}

ValueDeriv Model::ground_raw(double xi) const {
  const Seeds s = seeds(xi);
  const double dlog = 2.0 * (eps1_bar() - eps_bar()) * s.vphi.value * s.phi.value / s.w;
  return {s.phi.value / s.w, (s.phi.deriv - s.phi.value * dlog) / s.w};
}

ValueDeriv Model::first_raw(double xi) const {
  const Seeds s = seeds(xi);
  const double dlog = 2.0 * (eps1_bar() - eps_bar()) * s.vphi.value * s.phi.value / s.w;
  return {s.vphi.value / s.w, (s.vphi.deriv - s.vphi.value * dlog) / s.w};
}

void Model::raw_states(double xi, std::span<double> values, std::span<double> derivs) const {
  const std::size_t n = values.size();
  if (n == 0) return;
  if (n > static_cast<std::size_t>(kMaxStateIndex) + 1) {
    throw DomainError("at most " + std::to_string(kMaxStateIndex + 1) + " states are available");
  }
  const bool want_deriv = !derivs.empty();
  const Seeds s = seeds(xi);
  const double eb = eps_bar();
  const double e1 = eps1_bar();
  const double dlog = 2.0 * (e1 - eb) * s.vphi.value * s.phi.value / s.w;

  values[0] = s.phi.value / s.w;
  if (want_deriv) derivs[0] = (s.phi.deriv - s.phi.value * dlog) / s.w;
  if (n == 1) return;
  values[1] = s.vphi.value / s.w;
  if (want_deriv) derivs[1] = (s.vphi.deriv - s.vphi.value * dlog) / s.w;
  if (n == 2) return;

  const std::size_t levels = n - 2;
  std::vector<double> psi(levels);
  std::vector<double> dpsi(levels);
  hermite_psi_all(xi, psi, dpsi);
  for (std::size_t k = 0; k < levels; ++k) {
    const double e = static_cast<double>(k) + 0.5;
    const double amp = std::sqrt((e - eb) / (e - e1));
    const double mix = (eb - e1) / (e - eb);
    const double q = (psi[k] * s.phi.deriv - dpsi[k] * s.phi.value) / s.w;
    values[k + 2] = amp * (psi[k] + mix * s.vphi.value * q);
    if (want_deriv) {
      const double dq = 2.0 * (e - eb) * psi[k] * s.phi.value / s.w - q * dlog;
      derivs[k + 2] = amp * (dpsi[k] + mix * (s.vphi.deriv * q + s.vphi.value * dq));
    }
  }
}

void Model::wavefunctions(double xi, std::span<double> values, std::span<double> derivs) const {
  if (!derivs.empty() && derivs.size() != values.size()) {
    throw DomainError("wavefunctions: derivative buffer size mismatch");
  }
  raw_states(xi, values, derivs);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] *= scale_[i];
    if (!derivs.empty()) derivs[i] *= scale_[i];
  }
}

ValueDeriv Model::wavefunction(int index, double xi) const {
  eigenvalue(index);
  std::vector<double> values(static_cast<std::size_t>(index) + 1);
  std::vector<double> derivs(values.size());
  raw_states(xi, values, derivs);
  const double s = scale_[static_cast<std::size_t>(index)];
  return {values.back() * s, derivs.back() * s};
}

double Model::state_scale(int index) const {
  eigenvalue(index);
  return scale_[static_cast<std::size_t>(index)];
}

double Model::lambda_to_Lambda(double lambda) const {
  if (!(lambda > -1.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be a finite number greater than -1");
  }
  auto delta = [this](double xi) {
    const double z = std::numbers::sqrt2 * xi;
    const double f1 = d_nu_.value(z);
    const double f2 = d_nu_.value(-z);
    return (f1 - f2) / (f1 + f2);
  };
  const double plus = delta(kLambdaProbe);
  const double minus = delta(-kLambdaProbe);
  return (plus - lambda - (lambda + 1.0) * minus) / (plus + lambda - (lambda + 1.0) * minus);
}

WellPartition Model::well_partition(double scan_range, int scan_points) const {
  if (scan_points < 1000) throw DomainError("well_partition needs at least 1000 scan points");
  if (!(scan_range > 0.0 && scan_range <= kMaxXi)) {
    throw DomainError("well_partition scan range must lie in (0, 24]");
  }
  const double h = 2.0 * scan_range / (scan_points - 1);
  std::vector<double> xs(static_cast<std::size_t>(scan_points));
  std::vector<double> slope(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = -scan_range + static_cast<double>(i) * h;
    slope[i] = potential_slope(xs[i]);
  }
  auto refine = [this](double a, double b, double fa) {
    while (b - a > kBisectionTolerance) {
      const double m = 0.5 * (a + b);
      const double fm = potential_slope(m);
      if (fm == 0.0) return m;
      if (sign_of(fm) == sign_of(fa)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  std::vector<double> minima;
  std::vector<double> maxima;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const int s0 = sign_of(slope[i]);
    const int s1 = sign_of(slope[i + 1]);
    if (s0 * s1 < 0) {
      const double root = refine(xs[i], xs[i + 1], slope[i]);
      (s0 < 0 ? minima : maxima).push_back(root);
    } else if (s1 == 0 && i + 2 < xs.size()) {
      const int s2 = sign_of(slope[i + 2]);
      if (s0 * s2 < 0) (s0 < 0 ? minima : maxima).push_back(xs[i + 1]);
    }
  }
  if (minima.size() != 3) {
    throw ShapeError("potential has " + std::to_string(minima.size()) +
                     " local minima on the scan range, expected 3");
  }
  if (maxima.size() != 2 || !(minima[0] < maxima[0] && maxima[0] < minima[1] &&
                              minima[1] < maxima[1] && maxima[1] < minima[2])) {
    throw ShapeError("potential extrema do not interleave as a triple well");
  }
  WellPartition out;
  for (int i = 0; i < 3; ++i) out.minima[static_cast<std::size_t>(i)] = minima[static_cast<std::size_t>(i)];
  out.barriers = {maxima[0], maxima[1]};
  return out;
}

}  // namespace triplewell
