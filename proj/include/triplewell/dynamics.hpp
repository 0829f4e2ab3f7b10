#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "triplewell/grid.hpp"
#include "triplewell/model.hpp"
#include "triplewell/propagator.hpp"

namespace triplewell {

enum class Well { left, central, right };

/// Gaussian packet (e^{2R}/pi)^{1/4} exp(-(xi - center)^2 e^{2R} / 2).
struct PacketSpec {
  double center = 0.0;
  double squeeze = 0.0;

  double width() const;  // standard deviation e^{-R}/sqrt(2)
};

/// Packet centred on the requested well minimum.
PacketSpec packet_in_well(const WellPartition& partition, Well well, double squeeze);

struct PacketState {
  GridSpec grid;
  std::vector<complex> amplitudes;
  double time = 0.0;

  double norm() const;  // trapezoidal L2 norm
  std::vector<double> abs() const;
};

struct ExpansionCoefficients {
  std::vector<double> c;
  int n_max = 0;

  double sum_squares(int up_to) const;
};

/// Throws ValidationError when the grid does not cover center +- 8 widths.
PacketState initial_packet(const PacketSpec& spec, const GridSpec& grid);

/// c_n = <Psi_n|Phi> by the trapezoidal rule, n = 0..n_max.
ExpansionCoefficients expand(const Model& model, const PacketState& packet, int n_max);

/// Psi_n(xi) for n = 0..n_max sampled on the grid, row-major [n][i].
std::vector<std::vector<double>> sample_states(const Model& model, const GridSpec& grid, int n_max);

/// Exact propagation with the triple-well kernel. The xi0 integral is done
/// first through running integrals of the seed overlaps, leaving a single
/// zeta quadrature per output point.
PacketState evolve_propagator(const Model& model, const PacketState& packet, const TimePoint& at);

/// sum_n c_n Psi_n e^{-i E_n T} on the grid.
PacketState evolve_spectral(const Model& model, const ExpansionCoefficients& coeffs, double T,
                            const GridSpec& grid);

struct WellProbabilities {
  double pl = 0.0;
  double pc = 0.0;
  double pr = 0.0;
};

/// Occupations of (-inf, b0], [b0, b1], [b1, inf) for the barriers b0, b1.
WellProbabilities well_probabilities(const PacketState& packet, const WellPartition& partition);

struct TransportSample {
  double T = 0.0;
  WellProbabilities wells;
  double autocorrelation = 0.0;  // |<Phi(0)|Phi(T)>|^2
};

struct TransportReport {
  std::vector<TransportSample> samples;
  std::optional<double> revival_time;
  double revival_autocorrelation = 0.0;
};

/// Spectral-path time series on [0, horizon] with the given step. Sample
/// times within the caustic guard of a multiple of pi are shifted by 1e-2.
TransportReport transport_diagnostics(const Model& model, const PacketState& packet, double horizon,
                                      double step, int n_max = 40);

}  // namespace triplewell
