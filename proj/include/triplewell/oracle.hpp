#pragma once

#include <functional>
#include <vector>

#include "triplewell/dynamics.hpp"
#include "triplewell/grid.hpp"
#include "triplewell/model.hpp"
#include "triplewell/special_functions.hpp"

namespace triplewell::oracle {

/// D_nu(z) from the even/odd Kummer series summed in ~110-digit arithmetic.
/// Requires |z| <= 12 and digits <= 40.
double pcf_series_reference(PcfOrder order, double z, int digits = 30);

/// Gamma(x) in 50-digit arithmetic, rounded to double.
double gamma_reference(double x);

struct EigenPairs {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // full-grid, zero at both ends
};

/// Lowest k eigenpairs of -1/2 (three-point Laplacian) + diag(V) with
/// Dirichlet ends, by Sturm bisection and inverse iteration.
EigenPairs fd_eigensolve(const std::vector<double>& potential_samples, const GridSpec& grid, int k);

struct ExtrapolatedSpectrum {
  std::vector<double> coarse;        // on `grid`
  std::vector<double> fine;          // on the doubled grid
  std::vector<double> extrapolated;  // (4 fine - coarse) / 3
};

/// fd_eigensolve on `grid` and on the grid with halved spacing, combined
/// by one Richardson step.
ExtrapolatedSpectrum fd_eigensolve_extrapolated(const std::function<double(double)>& potential,
                                                const GridSpec& grid, int k);

/// sum_n <Psi_n|Phi> Psi_n e^{-i E_n T} with overlaps by Simpson's rule.
PacketState spectral_propagate_reference(const Model& model, const PacketState& packet, double T,
                                         int n_max);

}  // namespace triplewell::oracle
