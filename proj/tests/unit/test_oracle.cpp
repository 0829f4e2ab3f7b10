#include <cmath>
#include <numbers>

#include "doctest.h"
#include "triplewell/dynamics.hpp"
#include "triplewell/errors.hpp"
#include "triplewell/oracle.hpp"

using namespace triplewell;

TEST_CASE("series reference closed forms") {
  CHECK(std::abs(oracle::pcf_series_reference(PcfOrder(0.0), 2.0) - std::exp(-1.0)) < 1e-14);
  const double nu = -0.02;
  const double at_zero = std::pow(2.0, nu / 2.0) * std::sqrt(std::numbers::pi) / triplewell::gamma((1.0 - nu) / 2.0);
  CHECK(oracle::pcf_series_reference(PcfOrder(nu), 0.0) == doctest::Approx(at_zero).epsilon(1e-13));
}

TEST_CASE("series reference is stable in the requested digits") {
  for (double z : {-11.5, -3.0, 0.5, 7.0, 12.0}) {
    const double a = oracle::pcf_series_reference(PcfOrder(-0.45), z, 20);
    const double b = oracle::pcf_series_reference(PcfOrder(-0.45), z, 40);
    CHECK(std::abs(a - b) <= 1e-15 * std::abs(b));
  }
}

TEST_CASE("series reference limits") {
  CHECK_THROWS_AS(oracle::pcf_series_reference(PcfOrder(-0.3), 12.5), DomainError);
  CHECK_THROWS_AS(oracle::pcf_series_reference(PcfOrder(-0.3), 1.0, 41), DomainError);
  CHECK_THROWS_AS(oracle::gamma_reference(-2.0), DomainError);
}

TEST_CASE("finite-difference spectrum of the pure oscillator") {
  const GridSpec grid{-10.0, 10.0, 4001};
  std::vector<double> v(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) v[i] = 0.5 * grid.at(i) * grid.at(i);
  const auto pairs = oracle::fd_eigensolve(v, grid, 10);
  CHECK(std::abs(pairs.eigenvalues[0] - 0.5) < 1e-6);
  for (int k = 0; k < 10; ++k) {
    // Three-point discretisation error grows like h^2 E^2.
    CHECK(std::abs(pairs.eigenvalues[k] - (k + 0.5)) < 1e-6 + 2e-6 * (k + 0.5) * (k + 0.5));
  }
  const auto extrapolated = oracle::fd_eigensolve_extrapolated(
      [](double x) { return 0.5 * x * x; }, grid, 10);
  for (int k = 0; k < 10; ++k) CHECK(std::abs(extrapolated.extrapolated[k] - (k + 0.5)) < 1e-6);
}

TEST_CASE("finite-difference ground state is nodeless and normalised") {
  const GridSpec grid{-10.0, 10.0, 2001};
  std::vector<double> v(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) v[i] = 0.5 * grid.at(i) * grid.at(i);
  const auto pairs = oracle::fd_eigensolve(v, grid, 3);
  const auto& g = pairs.eigenvectors[0];
  double max = 0.0, norm = 0.0;
  for (double x : g) {
    max = std::max(max, std::abs(x));
    norm += x * x * grid.spacing();
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (std::abs(g[i]) > 1e-8 * max) CHECK(g[i] > 0.0);
  }
  CHECK_THROWS_AS(oracle::fd_eigensolve(v, grid, 21), DomainError);
}

TEST_CASE("finite-difference spectrum of the symmetric triple well") {
  const Model model(ModelParams{1.0, -0.02, -1.0, 1.0, 1.0});
  const auto spectrum = oracle::fd_eigensolve_extrapolated(
      [&](double x) { return model.potential(x); }, GridSpec{-10.0, 10.0, 4001}, 2);
  CHECK(std::abs(spectrum.extrapolated[0] + 0.5) < 1e-5);
  CHECK(std::abs(spectrum.extrapolated[1] - 0.48) < 1e-5);
  CHECK(std::abs(spectrum.coarse[0] + 0.5) < 1e-4);
}

TEST_CASE("finite-difference eigenvalues refine like h^2") {
  const Model model(ModelParams{1.0, -0.02, -0.03, 1.0, 1.0});
  double previous = 1.0;
  double previous_ratio = 0.0;
  for (std::size_t points : {1001u, 2001u, 4001u}) {
    const GridSpec grid{-10.0, 10.0, points};
    std::vector<double> v(points);
    for (std::size_t i = 0; i < points; ++i) v[i] = model.potential(grid.at(i));
    const double error = std::abs(oracle::fd_eigensolve(v, grid, 6).eigenvalues[5] - 3.5);
    CHECK(error < previous);
    previous_ratio = previous / error;
    previous = error;
  }
  CHECK(previous_ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("spectral reference propagation") {
  const Model model(ModelParams{1.0, -0.02, -0.03, 1.0, 1.0});
  const GridSpec grid{-10.0, 10.0, 2001};
  PacketState stationary{grid, std::vector<complex>(grid.points), 0.0};
  for (std::size_t i = 0; i < grid.points; ++i) stationary.amplitudes[i] = model.wavefunction(3, grid.at(i)).value;
  const auto evolved = oracle::spectral_propagate_reference(model, stationary, 2.3, 20);
  double worst = 0.0;
  const complex ph = std::exp(complex(0.0, -model.eigenvalue(3) * 2.3));
  for (std::size_t i = 0; i < grid.points; ++i) worst = std::max(worst, std::abs(evolved.amplitudes[i] - ph * stationary.amplitudes[i]));
  CHECK(worst < 1e-8);

  const auto partition = model.well_partition();
  const auto packet = initial_packet(packet_in_well(partition, Well::left, 1.0), grid);
  const auto projected = oracle::spectral_propagate_reference(model, packet, 0.0, 40);
  const auto coeffs = expand(model, packet, 40);
  CHECK(projected.norm() * projected.norm() == doctest::Approx(coeffs.sum_squares(40)).epsilon(1e-6));
  CHECK(projected.norm() < 1.0);
}
