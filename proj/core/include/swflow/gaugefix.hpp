#pragma once

#include "swflow/fields.hpp"

namespace swflow {

struct GaugeFixReport {
  ScalarField zeta;                  // Coulomb phase that was applied
  std::array<int, kDim> winding{};   // k removed by component fixing (applied transform has winding -k)
  double residual = 0.0;             // ||d* a'|| after fixing
  std::array<double, kDim> harmonic{};  // mean of a'_mu

  /// The gauge transform that maps the input onto the fixed configuration.
  GaugeTransform applied() const;
};

/// Solves laplacian0 zeta = -d* a and applies exp(i zeta); the result has d* a' = 0.
std::pair<Configuration, GaugeFixReport> coulomb_fix(const Configuration& cfg,
                                                     const PoissonOptions& opts = {});

/// Removes k_mu = floor(hbar_mu L_mu / 2pi + 1/2) windings so each harmonic
/// component lands in [-pi/L_mu, pi/L_mu).
std::pair<Configuration, GaugeFixReport> component_fix(const Configuration& cfg);

/// coulomb_fix followed by component_fix.
std::pair<Configuration, GaugeFixReport> full_gauge_fix(const Configuration& cfg,
                                                        const PoissonOptions& opts = {});

/// Distance between gauge orbits: fix both, align the constant phase so that
/// Re <phi1, phi2>_{1,2} is maximal, and sum the L^{1,2} distances of a and phi.
double gauge_distance(const Configuration& c1, const Configuration& c2);

/// Constants of the Hodge bound ||a||_{1,2} <= C (||d a|| + ||d* a||) + C'
/// valid for flux-free a whose harmonic part lies in the fundamental domain.
struct HodgeBoundConstants {
  double gap = 0.0;      // smallest nonzero eigenvalue of the 1-form Hodge Laplacian
  double C = 0.0;        // sqrt(1 + 1/gap)
  double C_prime = 0.0;  // sqrt(volume * sum_mu (pi/L_mu)^2)

  double bound(double curvature_norm, double codiff_norm) const {
    return C * (curvature_norm + codiff_norm) + C_prime;
  }
};

/// Spectral gap from a dense eigen-decomposition of d0 d* + d* d1 on 1-forms.
double hodge_gap_dense(const Lattice& lat);
/// Spectral gap from the 1D periodic Laplacians (the 1-form Hodge Laplacian is
/// the scalar Laplacian componentwise, a Kronecker sum of 1D operators).
double hodge_gap_separable(const Lattice& lat);

/// Cached per lattice; dense route when 4 * sites <= 2048.
HodgeBoundConstants hodge_bound_constants(const Lattice& lat);

}  // namespace swflow
