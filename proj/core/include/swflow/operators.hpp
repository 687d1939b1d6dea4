#pragma once

#include "swflow/fields.hpp"

namespace swflow {

/// Spinors couple to the link field a with unit charge, so the curvature of
/// the determinant line is twice the curvature of a.
inline constexpr double kLineCharge = 2.0;

/// Forward covariant differences, one W+ spinor per direction and site.
struct CovariantDerivative {
  std::vector<std::array<SpinorPlus, kDim>> values;

  std::array<SpinorPlus, kDim>& operator[](std::size_t site) { return values[site]; }
  const std::array<SpinorPlus, kDim>& operator[](std::size_t site) const { return values[site]; }
};

/// Parallel transporter U_mu(x) = exp(i (h a(x,mu) + background angle)).
cplx link(const Configuration& cfg, std::size_t site, int mu);

/// (nabla_mu phi)(x) = (U_mu(x) phi(x + mu) - phi(x)) / h.
CovariantDerivative covariant_diff(const Configuration& cfg, const SpinorField& phi);
CovariantDerivative covariant_diff(const Configuration& cfg);
/// Exact L2 adjoint of covariant_diff.
SpinorField covariant_diff_adjoint(const Configuration& cfg, const CovariantDerivative& psi);

/// h^4 sum |nabla phi|^2.
double l2_norm2(const Lattice& lat, const CovariantDerivative& psi);
cplx l2_inner(const Lattice& lat, const CovariantDerivative& u, const CovariantDerivative& v);

SpinorFieldMinus dirac(const Configuration& cfg, const SpinorField& phi,
                       const CliffordTable& tbl = standard_table());
SpinorFieldMinus dirac(const Configuration& cfg, const CliffordTable& tbl = standard_table());
SpinorField dirac_adjoint(const Configuration& cfg, const SpinorFieldMinus& psi,
                          const CliffordTable& tbl = standard_table());

/// Delta_A = -(nabla^A)^* nabla^A, negative semidefinite.
SpinorField covariant_laplacian(const Configuration& cfg, const SpinorField& phi);

/// d1(a) plus the flux background; gauge invariant.
TwoForm curvature(const Configuration& cfg);
/// Curvature averaged over the four plaquettes touching each site, per plane.
TwoForm curvature_at_sites(const Configuration& cfg);
/// Self-dual part of curvature_at_sites.
TwoForm fplus_at_sites(const Configuration& cfg);

/// D*D phi - (-Delta_A phi + (i/2) F_A . phi) with F_A the site-averaged line
/// curvature acting through both dual halves. Vanishes only in the continuum limit.
SpinorField weitzenbock_defect(const Configuration& cfg, const CliffordTable& tbl = standard_table());

}  // namespace swflow
