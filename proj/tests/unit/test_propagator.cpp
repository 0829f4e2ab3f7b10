#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "triplewell/errors.hpp"
#include "triplewell/propagator.hpp"
#include "triplewell/special_functions.hpp"

using namespace triplewell;

namespace {

const ModelParams kSymmetric{1.0, -0.02, -1.0, 1.0, 1.0};
const ModelParams kAsymmetric{1.0, -0.02, -0.03, 0.05, 1.0};

// Composite Simpson nodes and weights on [a, b].
void simpson(double a, double b, int intervals, std::vector<double>& x, std::vector<double>& w) {
  const double h = (b - a) / intervals;
  x.resize(intervals + 1);
  w.resize(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    x[i] = a + i * h;
    w[i] = h / 3.0 * (i == 0 || i == intervals ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
}

complex oscillator_action(const TimePoint& at, double xi, int n, bool principal) {
  std::vector<double> x, w;
  simpson(-12.0, 12.0, 24000, x, w);
  complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const complex k = principal ? k0_principal_branch(xi, at, x[i]) : k0(xi, at, x[i]);
    s += w[i] * k * hermite_psi(n, x[i]).value;
  }
  return s;
}

double gaussian(double x, double c, double s) { return std::exp(-(x - c) * (x - c) / (2 * s * s)); }

}  // namespace

TEST_CASE("time points") {
  const TimePoint a = TimePoint::at(3.0 * std::numbers::pi + 0.5);
  CHECK(a.n() == 3);
  CHECK(a.tau() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(TimePoint::at(0.7).n() == 0);
  CHECK_THROWS_AS(TimePoint::at(std::numbers::pi), CausticError);
  CHECK_THROWS_AS(TimePoint::at(0.0), CausticError);
  CHECK_THROWS_AS(TimePoint::at(2.0 * std::numbers::pi + 5e-4), CausticError);
  CHECK_NOTHROW(TimePoint::at(2.0 * std::numbers::pi + 5e-4, 1e-4));
  CHECK_THROWS_AS(TimePoint::at(-1.0), DomainError);
  CHECK_THROWS_AS(TimePoint::at(std::nan("")), DomainError);
}

TEST_CASE("oscillator kernel modulus") {
  for (double T : {0.3, 2.0, 4.4, 10.1}) {
    const TimePoint at = TimePoint::at(T);
    const double expected = 1.0 / (2.0 * std::numbers::pi * std::abs(std::sin(T)));
    CHECK(std::norm(k0(0.4, at, -1.3)) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("oscillator kernel evolves eigenfunctions") {
  for (double T : {0.7, std::numbers::pi / 2 + 0.2, 4.0, 3.0 * std::numbers::pi + 0.5}) {
    const TimePoint at = TimePoint::at(T);
    for (int n : {0, 1, 4}) {
      for (double xi : {-1.1, 0.6}) {
        const complex expected = std::exp(complex(0.0, -(n + 0.5) * T)) * hermite_psi(n, xi).value;
        CHECK(std::abs(oscillator_action(at, xi, n, false) - expected) < 1e-8);
      }
    }
  }
}

TEST_CASE("principal branch prefactor flips sign for n = 1, 2 mod 4") {
  for (int n = 0; n < 8; ++n) {
    const TimePoint at = TimePoint::at(n * std::numbers::pi + 0.9);
    const double sign = (n % 4 == 1 || n % 4 == 2) ? -1.0 : 1.0;
    CHECK(std::abs(k0_principal_branch(0.2, at, 1.0) - sign * k0(0.2, at, 1.0)) < 1e-14);
  }
  const TimePoint odd = TimePoint::at(std::numbers::pi + 0.9);
  const complex expected = std::exp(complex(0.0, -0.5 * odd.T())) * hermite_psi(0, 0.3).value;
  CHECK(std::abs(oscillator_action(odd, 0.3, 0, true) + expected) < 1e-8);
}

TEST_CASE("half-line transforms: xi-derivatives") {
  const Model m(kAsymmetric);
  const TimePoint at = TimePoint::at(1.1);
  const double h = 1e-3;
  for (SeedLevel level : {SeedLevel::epsilon, SeedLevel::epsilon1}) {
    const auto c = half_line_transform(m, at, 0.8, -0.5, level);
    const auto p = half_line_transform(m, at, 0.8 + h, -0.5, level);
    const auto q = half_line_transform(m, at, 0.8 - h, -0.5, level);
    CHECK(std::abs((p[0] - q[0]) / (2 * h) - c[1]) < 1e-5 * std::max(1.0, std::abs(c[1])));
    CHECK(std::abs((p[1] - q[1]) / (2 * h) - c[2]) < 1e-5 * std::max(1.0, std::abs(c[2])));
  }
}

TEST_CASE("intertwining operator") {
  const Model m(kSymmetric);
  for (double xi : {-2.0, 0.3, 1.7}) {
    const ValueDeriv phi = m.phi_big(xi);
    const double d2 = (xi * xi - 2.0 * m.eps_bar()) * phi.value;
    CHECK(std::abs(intertwine(m, phi.value, phi.deriv, d2, xi)) < 1e-10 * std::abs(phi.value));
    const complex a = intertwine(m, 1.0, 2.0, 3.0, xi);
    const complex b = intertwine(m, complex(0.0, 2.0), complex(0.0, 4.0), complex(0.0, 6.0), xi);
    CHECK(std::abs(b - complex(0.0, 2.0) * a) < 1e-12 * std::abs(a));
  }
}

TEST_CASE("triple-well kernel is symmetric") {
  const Model m(kAsymmetric);
  const TimePoint at = TimePoint::at(2.3);
  const complex a = k_triple(m, at, -1.4, 0.9);
  const complex b = k_triple(m, at, 0.9, -1.4);
  CHECK(std::abs(a - b) < 1e-7 * std::abs(a));
}

TEST_CASE("triple-well kernel evolves eigenfunctions") {
  const Model m(kAsymmetric);
  std::vector<double> x, w;
  simpson(-10.0, 10.0, 400, x, w);
  for (double T : {0.7, 3.0 * std::numbers::pi + 0.5}) {
    const TimePoint at = TimePoint::at(T);
    const double xi = -0.7;
    std::vector<complex> k(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) k[i] = k_triple(m, at, xi, x[i]);
    for (int n : {0, 1, 2, 5}) {
      complex s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * k[i] * m.wavefunction(n, x[i]).value;
      const complex expected = std::exp(complex(0.0, -m.eigenvalue(n) * T)) * m.wavefunction(n, xi).value;
      CHECK(std::abs(s - expected) < 1e-6);
    }
  }
}

TEST_CASE("smeared kernel matches the eigenfunction sum") {
  const Model m(kAsymmetric);
  const TimePoint at = TimePoint::at(1.9);
  std::vector<double> xl, wl, xr, wr;
  simpson(-4.5, 1.5, 48, xl, wl);
  simpson(-1.0, 4.0, 40, xr, wr);
  complex direct = 0.0;
  for (std::size_t i = 0; i < xl.size(); ++i) {
    for (std::size_t j = 0; j < xr.size(); ++j) {
      direct += wl[i] * wr[j] * gaussian(xl[i], -1.5, 0.5) * gaussian(xr[j], 1.5, 0.4) *
                k_triple(m, at, xl[i], xr[j]);
    }
  }
  std::vector<double> xs, ws;
  simpson(-10.0, 10.0, 4000, xs, ws);
  std::vector<double> psi(41);
  std::vector<double> g(41), f(41);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    m.wavefunctions(xs[i], psi);
    for (int n = 0; n <= 40; ++n) {
      g[n] += ws[i] * psi[n] * gaussian(xs[i], -1.5, 0.5);
      f[n] += ws[i] * psi[n] * gaussian(xs[i], 1.5, 0.4);
    }
  }
  complex spectral = 0.0;
  for (int n = 0; n <= 40; ++n) spectral += g[n] * f[n] * std::exp(complex(0.0, -m.eigenvalue(n) * at.T()));
  CHECK(std::abs(direct - spectral) < 1e-5 * std::abs(spectral) + 1e-7);
}

TEST_CASE("spectral kernel sum") {
  const Model m(kSymmetric);
  const complex k = k_spectral_sum(m, 0.0, 0.4, 1.1, 0);
  CHECK(k.real() == doctest::Approx(m.wavefunction(0, 0.4).value * m.wavefunction(0, 1.1).value));
  CHECK(std::abs(k_spectral_sum(m, 1.3, -0.4, 2.0, 30) - k_spectral_sum(m, 1.3, 2.0, -0.4, 30)) < 1e-14);
  CHECK_THROWS_AS(k_spectral_sum(m, 1.0, 0.0, 0.0, kMaxStateIndex + 1), DomainError);
}
