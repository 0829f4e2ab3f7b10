#include "triplewell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quadrature.hpp"
#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

constexpr double kCoverageWidths = 8.0;
constexpr double kCausticShift = 1e-2;

complex phase(double angle) { return std::polar(1.0, angle); }

void check_packet(const PacketState& packet) {
  packet.grid.validate();
  if (packet.amplitudes.size() != packet.grid.points) {
    throw ShapeError("packet amplitudes do not match the grid size");
  }
}

void check_n_max(int n_max) {
  if (n_max < 0 || n_max > kDefaultMaxLevel) {
    throw DomainError("n_max = " + std::to_string(n_max) + " outside [0, 64]");
  }
}

// Trapezoidal integral of the sampled density over [lo, hi] with linear
// interpolation inside the cells that the cut points split.
double density_integral(const std::vector<double>& rho, const GridSpec& grid, double lo, double hi) {
  const double h = grid.spacing();
  lo = std::max(lo, grid.xi_min);
  hi = std::min(hi, grid.xi_max);
  if (!(hi > lo)) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < grid.points; ++j) {
    const double x0 = grid.at(j);
    const double x1 = grid.at(j + 1);
    const double a = std::max(lo, x0);
    const double b = std::min(hi, x1);
    if (b <= a) continue;
    const double slope = (rho[j + 1] - rho[j]) / h;
    const double fa = rho[j] + slope * (a - x0);
    const double fb = rho[j] + slope * (b - x0);
    sum += 0.5 * (b - a) * (fa + fb);
  }
  return sum;
}

}  // namespace

double PacketSpec::width() const { return std::exp(-squeeze) / std::numbers::sqrt2; }

PacketSpec packet_in_well(const WellPartition& partition, Well well, double squeeze) {
  const std::size_t i = well == Well::left ? 0 : well == Well::central ? 1 : 2;
  return {partition.minima[i], squeeze};
}

double PacketState::norm() const {
  std::vector<double> rho(amplitudes.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(amplitudes[i]);
  return std::sqrt(detail::trapezoid(rho, grid.spacing()));
}

std::vector<double> PacketState::abs() const {
  std::vector<double> out(amplitudes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(amplitudes[i]);
  return out;
}

double ExpansionCoefficients::sum_squares(int up_to) const {
  double s = 0.0;
  for (std::size_t n = 0; n < c.size() && static_cast<int>(n) <= up_to; ++n) s += c[n] * c[n];
  return s;
}

PacketState initial_packet(const PacketSpec& spec, const GridSpec& grid) {
  grid.validate();
  if (!std::isfinite(spec.center) || !std::isfinite(spec.squeeze)) {
    throw ValidationError("packet", "center and squeeze must be finite");
  }
  const double reach = kCoverageWidths * spec.width();
  if (grid.xi_min > spec.center - reach || grid.xi_max < spec.center + reach) {
    throw ValidationError("grid", "grid must cover the packet centre +- 8 widths");
  }
  const double e2r = std::exp(2.0 * spec.squeeze);
  const double amp = std::pow(e2r / std::numbers::pi, 0.25);
  PacketState out{grid, std::vector<complex>(grid.points), 0.0};
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double d = grid.at(i) - spec.center;
    out.amplitudes[i] = amp * std::exp(-0.5 * d * d * e2r);
  }
  return out;
}

std::vector<std::vector<double>> sample_states(const Model& model, const GridSpec& grid, int n_max) {
  grid.validate();
  const std::size_t count = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::vector<double>> out(count, std::vector<double>(grid.points));
  std::vector<double> values(count);
  for (std::size_t i = 0; i < grid.points; ++i) {
    model.wavefunctions(grid.at(i), values);
    for (std::size_t n = 0; n < count; ++n) out[n][i] = values[n];
  }
  return out;
}

ExpansionCoefficients expand(const Model& model, const PacketState& packet, int n_max) {
  check_packet(packet);
  check_n_max(n_max);
  if (packet.time != 0.0) throw DomainError("expand requires a packet at time 0");
  const auto states = sample_states(model, packet.grid, n_max);
  ExpansionCoefficients out{std::vector<double>(states.size()), n_max};
  std::vector<double> integrand(packet.grid.points);
  for (std::size_t n = 0; n < states.size(); ++n) {
    for (std::size_t i = 0; i < integrand.size(); ++i) {
      integrand[i] = states[n][i] * packet.amplitudes[i].real();
    }
    out.c[n] = detail::trapezoid(integrand, packet.grid.spacing());
  }
  return out;
}

PacketState evolve_spectral(const Model& model, const ExpansionCoefficients& coeffs, double T,
                            const GridSpec& grid) {
  check_n_max(static_cast<int>(coeffs.c.size()) - 1);
  const auto states = sample_states(model, grid, static_cast<int>(coeffs.c.size()) - 1);
  PacketState out{grid, std::vector<complex>(grid.points, 0.0), T};
  for (std::size_t n = 0; n < coeffs.c.size(); ++n) {
    const complex w = coeffs.c[n] * phase(-model.eigenvalue(static_cast<int>(n)) * T);
    for (std::size_t i = 0; i < grid.points; ++i) out.amplitudes[i] += w * states[n][i];
  }
  return out;
}

PacketState evolve_propagator(const Model& model, const PacketState& packet, const TimePoint& at) {
  check_packet(packet);
  const GridSpec& grid = packet.grid;
  const std::size_t n = grid.points;
  const double hg = grid.spacing();
  const ModelParams& p = model.params();

  std::vector<double> u0(n), u1(n), f1(n), f2(n), a1(n), a2(n);
  std::vector<complex> g0(n), g1(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double zeta = grid.at(j);
    const double z = std::numbers::sqrt2 * zeta;
    u0[j] = model.ground_raw(zeta).value;
    u1[j] = model.first_raw(zeta).value;
    f1[j] = model.d_nu().value(z);
    f2[j] = model.d_nu().value(-z);
    a1[j] = model.d_mu().value(z);
    a2[j] = model.d_mu().value(-z);
    g0[j] = u0[j] * packet.amplitudes[j];
    g1[j] = u1[j] * packet.amplitudes[j];
  }
  const auto left0 = detail::cumulative_from_left<complex>(g0, hg);
  const auto right0 = detail::cumulative_from_right<complex>(g0, hg);
  const auto left1 = detail::cumulative_from_left<complex>(g1, hg);
  const auto right1 = detail::cumulative_from_right<complex>(g1, hg);

  std::vector<complex> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    h[j] = -(p.Lambda * f2[j] * right1[j] - f1[j] * left1[j] + p.Lambda1 * a2[j] * right0[j] +
             a1[j] * left0[j]);
  }

  const double T = at.T();
  const double s = std::sin(T);
  const double c = std::cos(T);
  const double cot = c / s;
  const double reach = std::max(std::abs(grid.xi_min), std::abs(grid.xi_max));
  const double omega_max = reach * std::abs(cot) + reach / std::abs(s);
  const int refine = std::max(1, static_cast<int>(std::ceil(omega_max * hg / (0.5 * std::numbers::pi))));

  const std::size_t m = (n - 1) * static_cast<std::size_t>(refine) + 1;
  const double hz = hg / refine;
  std::vector<double> z(m);
  std::vector<complex> q(m);
  for (std::size_t k = 0; k < m; ++k) {
    z[k] = k + 1 == m ? grid.xi_max : grid.xi_min + static_cast<double>(k) * hz;
    const complex hk = refine == 1 ? h[k] : detail::lagrange6<complex>(h, grid.xi_min, hg, z[k]);
    const double w = (k == 0 || k + 1 == m) ? 0.5 * hz : hz;
    q[k] = w * hk * phase(0.5 * z[k] * z[k] * cot);
  }

  const complex pre = k0(0.0, at, 0.0);
  const double s1 = model.state_scale(1);
  const double s0 = model.state_scale(0);
  const complex extra1 = s1 * s1 * left1[n - 1] * phase(-model.eps_bar() * T);
  const complex extra0 = s0 * s0 * left0[n - 1] * phase(-model.eps1_bar() * T);
  const complex i(0.0, 1.0);

  PacketState out{grid, std::vector<complex>(n), packet.time + T};
  for (std::size_t o = 0; o < n; ++o) {
    const double xi = grid.at(o);
    complex m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const complex t = q[k] * phase(-xi * z[k] / s);
      m0 += t;
      m1 += t * z[k];
      m2 += t * z[k] * z[k];
    }
    const complex base = pre * phase(0.5 * xi * xi * cot);
    const complex v0 = base * m0;
    const complex v1 = i * base * (xi * cot * m0 - m1 / s);
    const complex v2 = base * (complex(-xi * xi * cot * cot, cot) * m0 + 2.0 * xi * c / (s * s) * m1 -
                               m2 / (s * s));
    out.amplitudes[o] = intertwine(model, v0, v1, v2, xi) + u1[o] * extra1 + u0[o] * extra0;
  }
  return out;
}

WellProbabilities well_probabilities(const PacketState& packet, const WellPartition& partition) {
  check_packet(packet);
  std::vector<double> rho(packet.amplitudes.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(packet.amplitudes[i]);
  const double b0 = partition.barriers[0];
  const double b1 = partition.barriers[1];
  const GridSpec& g = packet.grid;
  return {density_integral(rho, g, g.xi_min, b0), density_integral(rho, g, b0, b1),
          density_integral(rho, g, b1, g.xi_max)};
}

TransportReport transport_diagnostics(const Model& model, const PacketState& packet, double horizon,
                                      double step, int n_max) {
  check_packet(packet);
  if (!(horizon > 0.0) || !(step > 0.0)) throw DomainError("horizon and step must be positive");
  const ExpansionCoefficients coeffs = expand(model, packet, n_max);
  const auto states = sample_states(model, packet.grid, n_max);
  const WellPartition partition = model.well_partition();
  const std::size_t count = coeffs.c.size();

  TransportReport report;
  const auto steps = static_cast<std::size_t>(std::floor(horizon / step + 1e-9));
  PacketState current{packet.grid, std::vector<complex>(packet.grid.points), 0.0};
  for (std::size_t s = 0; s <= steps; ++s) {
    double T = static_cast<double>(s) * step;
    if (T > 0.0 && std::abs(std::sin(T)) < kDefaultCausticGuard) T += kCausticShift;
    std::vector<complex> w(count);
    complex auto_overlap = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      w[k] = coeffs.c[k] * phase(-model.eigenvalue(static_cast<int>(k)) * T);
      auto_overlap += coeffs.c[k] * w[k];
    }
    std::fill(current.amplitudes.begin(), current.amplitudes.end(), complex(0.0));
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t i = 0; i < current.amplitudes.size(); ++i) current.amplitudes[i] += w[k] * states[k][i];
    }
    current.time = T;
    report.samples.push_back({T, well_probabilities(current, partition), std::norm(auto_overlap)});
  }

  const double threshold = horizon / 10.0;
  std::size_t best = report.samples.size();
  for (std::size_t s = 0; s < report.samples.size(); ++s) {
    if (report.samples[s].T <= threshold) continue;
    if (best == report.samples.size() ||
        report.samples[s].autocorrelation > report.samples[best].autocorrelation) {
      best = s;
    }
  }
  if (best < report.samples.size()) {
    double t_star = report.samples[best].T;
    double a_star = report.samples[best].autocorrelation;
    if (best > 0 && best + 1 < report.samples.size() && report.samples[best - 1].T > threshold) {
      const double x0 = report.samples[best - 1].T, x1 = report.samples[best].T, x2 = report.samples[best + 1].T;
      const double y0 = report.samples[best - 1].autocorrelation, y1 = a_star,
                   y2 = report.samples[best + 1].autocorrelation;
      const double d1 = (y1 - y0) / (x1 - x0);
      const double d2 = (y2 - y1) / (x2 - x1);
      const double curv = (d2 - d1) / (x2 - x0);
      if (curv < 0.0) {
        const double vertex = 0.5 * (x0 + x1) - d1 / (2.0 * curv);
        if (vertex > x0 && vertex < x2) {
          t_star = vertex;
          a_star = y1 + d1 * (vertex - x1) + curv * (vertex - x0) * (vertex - x1);
        }
      }
    }
    report.revival_time = t_star;
    report.revival_autocorrelation = a_star;
  }
  return report;
}

}  // namespace triplewell
