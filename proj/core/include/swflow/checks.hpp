#pragma once

#include "swflow/functional.hpp"
#include "swflow/gaugefix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swflow {

/// Outcome of one invariant check: a measured value against a tolerance.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // true when the measured value must be >= tolerance
  std::string detail;
};

/// "PASS name  measured=... <= tol=...  detail"
std::string format_check(const CheckResult& r);

/// Folds several results into one line: passes iff all pass; reports the
/// worst member.
CheckResult combine(const std::string& name, const std::vector<CheckResult>& parts);

// Generators shared by the checks, tests and benchmarks.
GaugeTransform random_gauge_transform(const Lattice& lat, std::uint64_t seed, double zeta_amp = 3.0,
                                      int max_winding = 2);
ScalarField random_scalar(const Lattice& lat, std::uint64_t seed, double amp = 1.0);
TwoForm random_two_form(const Lattice& lat, std::uint64_t seed, double amp = 1.0);
SpinorFieldMinus random_spinor_minus(const Lattice& lat, std::uint64_t seed, double amp = 1.0);
/// Smooth fields on an N^4 lattice of side L: a few low Fourier modes, with a
/// sampled at link midpoints.
Configuration smooth_configuration(int n, double side, double amp_a, double amp_phi);
/// A table that violates the Clifford relations, for negative controls.
CliffordTable corrupted_table();

/// N^4 lattice with unit spacing.
Lattice cube(int n, double spacing = 1.0);

CheckResult check_clifford_relations(const CliffordTable& tbl, double tol = 1e-14);
CheckResult check_quadratic_form(const CliffordTable& tbl, int samples, std::uint64_t seed, double tol = 1e-12);
CheckResult check_exterior_nilpotent(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-12);
CheckResult check_adjoint_d0(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-12);
CheckResult check_adjoint_d1(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-12);
CheckResult check_adjoint_covariant(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-12);
CheckResult check_adjoint_dirac(const Lattice& lat, const CliffordTable& tbl, int samples, std::uint64_t seed,
                                double tol = 1e-12);
CheckResult check_gauge_invariance(const Lattice& lat, const CliffordTable& tbl, int samples, std::uint64_t seed,
                                   double tol = 1e-10);
CheckResult check_gradient(const Lattice& lat, int directions, std::uint64_t seed, double tol = 1e-5);

CheckResult check_coulomb_residual(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-8);
CheckResult check_harmonic_domain(const Lattice& lat, int samples, std::uint64_t seed);
CheckResult check_gaugefix_idempotent(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-10);
CheckResult check_pure_gauge(const Lattice& lat, int samples, std::uint64_t seed, double tol = 1e-10);
/// ||a||_{1,2} <= C ||F|| + C' on random gauge-fixed flux-free fields;
/// measured is the largest lhs / rhs ratio.
CheckResult check_coercivity(const Lattice& lat, int samples, std::uint64_t seed);
/// Each (mu, nu) plane slice of the curvature of an n_{12} = n background plus
/// a random a integrates to 2 pi n.
CheckResult check_flux_quantization(const Lattice& lat, int n, std::uint64_t seed, double tol = 1e-10);
/// |energy_first_order - energy_weitzenbock| at N^4 over the same at (2N)^4
/// on the same torus.
CheckResult check_weitzenbock_refinement(int coarse, double side, double min_factor = 1.5);

enum class CheckLevel { fast, full };

/// The invariant suite behind `swflow check`. fast keeps to lattices of at
/// most 3^4 sites and skips the refinement study.
std::vector<CheckResult> run_checks(CheckLevel level, const CliffordTable& tbl = standard_table());

}  // namespace swflow
