#pragma once

#include "swflow/operators.hpp"

#include <utility>

namespace swflow {

/// Cotangent vector at a configuration. Paired with a tangent (da', dphi') by
/// <da, da'> + 2 Re <dphi, dphi'>, both in L2.
struct Gradient {
  OneForm da;
  SpinorField dphi;
};

/// The real pairing of a gradient with a tangent direction of the same shape.
double pairing(const Lattice& lat, const Gradient& g, const Gradient& dir);
/// sqrt(pairing(g, g)); gauge invariant.
double norm(const Lattice& lat, const Gradient& g);

/// h^4 sum [ |nabla_A phi|^2 + |F_A^+|^2 + s/4 |phi|^2 + |phi|^4 / 8 ] with
/// F_A^+ taken at plaquette resolution.
double energy_weitzenbock(const Configuration& cfg);

/// ||D_A phi||^2 + ||F_A^+ - sigma(phi)||^2 with F_A^+ averaged to sites.
double energy_first_order(const Configuration& cfg, const CliffordTable& tbl = standard_table());

/// (||D_A phi||^2, ||F_A^+ - sigma(phi)||^2). Sums to energy_first_order.
std::pair<double, double> sw_equation_residual(const Configuration& cfg,
                                               const CliffordTable& tbl = standard_table());

/// Exact gradient of energy_weitzenbock:
///   dphi = -Delta_A phi + s/4 phi + |phi|^2 phi / 4
///   da   = 2 d*F_A^+ (line normalization) + 2 Im <nabla_mu phi, phi>
Gradient gradient(const Configuration& cfg);

/// Returns x + t * dir.
Configuration displace(const Configuration& cfg, const Gradient& dir, double t);

/// Largest relative error between the analytic pairing and a central
/// difference of energy_weitzenbock along random unit directions.
double fd_gradient_check(const Configuration& cfg, double step, int n_directions, std::uint64_t seed);

/// Pointwise lower bound -(h^4/8) sum min(s,0)^2, attained by |phi|^2 = -s, a = 0.
double energy_lower_bound(const Configuration& cfg);

/// Diagnostics of the set where |phi| exceeds the maximum-principle bound.
struct ExcessReport {
  double threshold = 0.0;       // max{-min s, 0}
  double excess_measure = 0.0;  // volume of {|phi| > threshold}
  double radial_excess = 0.0;   // integral over that set of sum_mu (Re <nabla_mu phi, nu>)^2
  double eta_norm = 0.0;        // ||eta||_{1,2}, eta = (|phi| - threshold) nu on the set
};

ExcessReport excess_report(const Configuration& cfg);

}  // namespace swflow
