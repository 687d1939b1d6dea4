#include "swflow/checks.hpp"

#include <cstdio>
#include <numbers>
#include <random>

namespace swflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CheckResult upper(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, false, std::move(detail)};
}

CheckResult lower(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured >= tol, measured, tol, true, std::move(detail)};
}

/// |<Lu, v> - <u, L*v>| relative to the size of either side.
double adjoint_error(cplx lhs, cplx rhs, double scale) {
  if (scale == 0.0) return std::abs(lhs - rhs);
  return std::abs(lhs - rhs) / scale;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

FluxMatrix unit_flux(const Lattice& lat) {
  FluxMatrix f{};
  // Keep the background within the plaquette-angle bound on tiny lattices.
  if (kTwoPi / (lat.dim(0) * lat.dim(1)) < std::numbers::pi) {
    f[0][1] = 1;
    f[1][0] = -1;
  }
  return f;
}

CovariantDerivative random_covariant(const Lattice& lat, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CovariantDerivative d{std::vector<std::array<SpinorPlus, kDim>>(lat.sites())};
  for (auto& site : d.values)
    for (auto& s : site)
      for (int c = 0; c < 2; ++c) s[c] = cplx(u(rng), u(rng));
  return d;
}

}  // namespace

std::string format_check(const CheckResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %-28s measured=%-12.4g %s tol=%.4g", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.lower_bound ? ">=" : "<=", r.tolerance);
  std::string s = buf;
  if (!r.detail.empty()) s += "  " + r.detail;
  return s;
}

CheckResult combine(const std::string& name, const std::vector<CheckResult>& parts) {
  if (parts.empty()) throw std::invalid_argument("combine: nothing to combine");
  CheckResult out{name, true, 0.0, 0.0, false, {}};
  const CheckResult* worst = nullptr;
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (const CheckResult& p : parts) {
    out.passed = out.passed && p.passed;
    // Margin in units of the tolerance; larger is worse.
    double margin;
    if (p.lower_bound) margin = p.measured > 0.0 ? p.tolerance / p.measured : std::numeric_limits<double>::infinity();
    else margin = p.tolerance > 0.0 ? p.measured / p.tolerance : p.measured;
    if (!std::isfinite(p.measured)) margin = std::numeric_limits<double>::infinity();
    if (!p.passed) margin += 1e300;
    if (!worst || margin > worst_margin) {
      worst = &p;
      worst_margin = margin;
    }
  }
  out.measured = worst->measured;
  out.tolerance = worst->tolerance;
  out.lower_bound = worst->lower_bound;
  out.detail = "worst: " + worst->name;
  for (const CheckResult& p : parts)
    if (!p.passed) out.detail += "; failed: " + p.name;
  return out;
}

GaugeTransform random_gauge_transform(const Lattice& lat, std::uint64_t seed, double zeta_amp, int max_winding) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-max_winding, max_winding);
  GaugeTransform g = GaugeTransform::identity(lat);
  for (double& v : g.zeta.values()) v = zeta_amp * u(rng);
  for (int& w : g.winding) w = k(rng);
  return g;
}

ScalarField random_scalar(const Lattice& lat, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  ScalarField f(lat);
  for (double& v : f.values()) v = u(rng);
  return f;
}

TwoForm random_two_form(const Lattice& lat, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  TwoForm f(lat);
  for (double& v : f.values()) v = u(rng);
  return f;
}

SpinorFieldMinus random_spinor_minus(const Lattice& lat, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  SpinorFieldMinus f(lat);
  for (SpinorMinus& s : f.values())
    for (int c = 0; c < 2; ++c) s[c] = cplx(u(rng), u(rng));
  return f;
}

Configuration smooth_configuration(int n, double side, double amp_a, double amp_phi) {
  if (n < 2 || !(side > 0.0)) throw std::invalid_argument("smooth_configuration: need n >= 2 and side > 0");
  const Lattice lat({n, n, n, n}, side / n);
  Configuration cfg(lat);
  const double h = lat.spacing();
  const double k = kTwoPi / side;
  for (std::size_t s = 0; s < lat.sites(); ++s) {
    const Coord c = lat.coord(s);
    std::array<double, kDim> x{};
    for (int m = 0; m < kDim; ++m) x[m] = c[m] * h;
    for (int mu = 0; mu < kDim; ++mu) {
      std::array<double, kDim> y = x;
      y[mu] += 0.5 * h;
      cfg.a()(s, mu) = amp_a * (std::sin(k * y[(mu + 1) % kDim] + 0.3 * mu) +
                                0.5 * std::cos(k * y[(mu + 2) % kDim] - 0.7));
    }
    cfg.phi()[s][0] = amp_phi * cplx(1.0 + 0.3 * std::cos(k * x[0]), 0.2 * std::sin(k * (x[1] + x[2])));
    cfg.phi()[s][1] = amp_phi * cplx(0.4 * std::sin(k * x[3]), 0.5 * std::cos(k * (x[0] - x[3])));
  }
  return cfg;
}

CliffordTable corrupted_table() {
  std::array<Mat2, kDim> s;
  for (int mu = 0; mu < kDim; ++mu) s[mu] = standard_table().sigma(mu);
  s[1] = s[0];
  return CliffordTable(s);
}

Lattice cube(int n, double spacing) { return Lattice({n, n, n, n}, spacing); }

CheckResult check_clifford_relations(const CliffordTable& tbl, double tol) {
  const double d = std::max(tbl.clifford_defect(), tbl.unitarity_defect());
  return upper("clifford_relations", d, tol);
}

CheckResult check_quadratic_form(const CliffordTable& tbl, int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    SpinorPlus phi;
    for (int c = 0; c < 2; ++c) phi[c] = cplx(n01(rng), n01(rng));
    const PlaneFiber q = quadratic_form(tbl, phi);
    const PlaneFiber qp = selfdual_fiber(q);
    double n2 = 0.0;
    double asd = 0.0;
    for (int p = 0; p < kPlanes; ++p) {
      n2 += q[p] * q[p];
      asd += (q[p] - qp[p]) * (q[p] - qp[p]);
    }
    const double target = phi.norm2() * phi.norm2() / 8.0;
    worst = std::max(worst, std::abs(n2 - target) / target);
    worst = std::max(worst, std::sqrt(asd / target));
  }
  return upper("quadratic_form", worst, tol, "|sigma|^2 = |phi|^4/8, self-dual");
}

CheckResult check_exterior_nilpotent(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  const double h2 = lat.spacing() * lat.spacing();
  for (int i = 0; i < samples; ++i) {
    const ScalarField f = random_scalar(lat, seed + i);
    const TwoForm dd = d1(lat, d0(lat, f));
    double m = 0.0;
    for (double v : dd.values()) m = std::max(m, std::abs(v));
    worst = std::max(worst, m * h2 / linf_norm(lat, f));
  }
  return upper("d1_d0_zero", worst, tol);
}

CheckResult check_adjoint_d0(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const ScalarField f = random_scalar(lat, seed + 2 * i);
    const Configuration c = random_configuration(lat, seed + 2 * i + 1, {1.0, 0.0});
    const OneForm& a = c.a();
    const OneForm df = d0(lat, f);
    const ScalarField da = codiff1(lat, a);
    const double scale = l2_norm(lat, df) * l2_norm(lat, a) + l2_norm(lat, f) * l2_norm(lat, da);
    worst = std::max(worst, adjoint_error(l2_inner(lat, df, a), l2_inner(lat, f, da), scale));
  }
  return upper("adjoint_d0_codiff1", worst, tol);
}

CheckResult check_adjoint_d1(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Configuration c = random_configuration(lat, seed + 2 * i, {1.0, 0.0});
    const TwoForm F = random_two_form(lat, seed + 2 * i + 1);
    const TwoForm da = d1(lat, c.a());
    const OneForm dF = codiff2(lat, F);
    const double scale = l2_norm(lat, da) * l2_norm(lat, F) + l2_norm(lat, c.a()) * l2_norm(lat, dF);
    worst = std::max(worst, adjoint_error(l2_inner(lat, da, F), l2_inner(lat, c.a(), dF), scale));
  }
  return upper("adjoint_d1_codiff2", worst, tol);
}

CheckResult check_adjoint_covariant(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  const FluxMatrix flux = unit_flux(lat);
  for (int i = 0; i < samples; ++i) {
    const Configuration c = random_configuration(lat, seed + 2 * i, {1.0, 1.0}, flux);
    const CovariantDerivative psi = random_covariant(lat, seed + 2 * i + 1);
    const CovariantDerivative nphi = covariant_diff(c);
    const SpinorField adj = covariant_diff_adjoint(c, psi);
    const double scale = std::sqrt(l2_norm2(lat, nphi) * l2_norm2(lat, psi)) +
                         l2_norm(lat, c.phi()) * l2_norm(lat, adj);
    worst = std::max(worst, adjoint_error(l2_inner(lat, nphi, psi), l2_inner(lat, c.phi(), adj), scale));
  }
  return upper("adjoint_covariant_diff", worst, tol);
}

CheckResult check_adjoint_dirac(const Lattice& lat, const CliffordTable& tbl, int samples, std::uint64_t seed,
                                double tol) {
  double worst = 0.0;
  const FluxMatrix flux = unit_flux(lat);
  for (int i = 0; i < samples; ++i) {
    const Configuration c = random_configuration(lat, seed + 2 * i, {1.0, 1.0}, flux);
    const SpinorFieldMinus psi = random_spinor_minus(lat, seed + 2 * i + 1);
    const SpinorFieldMinus Dphi = dirac(c, tbl);
    const SpinorField adj = dirac_adjoint(c, psi, tbl);
    const double scale = l2_norm(lat, Dphi) * l2_norm(lat, psi) + l2_norm(lat, c.phi()) * l2_norm(lat, adj);
    worst = std::max(worst, adjoint_error(l2_inner(lat, Dphi, psi), l2_inner(lat, c.phi(), adj), scale));
  }
  return upper("adjoint_dirac", worst, tol);
}

CheckResult check_gauge_invariance(const Lattice& lat, const CliffordTable& tbl, int samples, std::uint64_t seed,
                                   double tol) {
  const FluxMatrix flux = unit_flux(lat);
  Configuration c = random_configuration(lat, seed, {0.5, 1.0}, flux);
  c.s() = random_scalar(lat, seed + 1);
  const double ew = energy_weitzenbock(c);
  const double ef = energy_first_order(c, tbl);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Configuration g = apply_gauge(random_gauge_transform(lat, seed + 10 + i), c);
    worst = std::max(worst, std::abs(energy_weitzenbock(g) - ew) / std::abs(ew));
    worst = std::max(worst, std::abs(energy_first_order(g, tbl) - ef) / std::abs(ef));
  }
  return upper("gauge_invariance", worst, tol, "both energy forms, with winding");
}

CheckResult check_gradient(const Lattice& lat, int directions, std::uint64_t seed, double tol) {
  Configuration c = random_configuration(lat, seed, {0.5, 1.0}, unit_flux(lat));
  c.s() = random_scalar(lat, seed + 1);
  const double err = fd_gradient_check(c, 1e-5, directions, seed + 2);
  return upper("gradient_fd", err, tol, "central differences, step 1e-5");
}

CheckResult check_coulomb_residual(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Configuration c = random_configuration(lat, seed + i, {2.0, 1.0});
    worst = std::max(worst, full_gauge_fix(c).second.residual);
  }
  return upper("coulomb_residual", worst, tol);
}

CheckResult check_harmonic_domain(const Lattice& lat, int samples, std::uint64_t seed) {
  // Largest |hbar_mu| L_mu / pi over the samples, with the upper end of the
  // half-open interval counted as outside.
  double worst = 0.0;
  bool inside = true;
  for (int i = 0; i < samples; ++i) {
    Configuration c = random_configuration(lat, seed + i, {0.5, 1.0});
    const GaugeTransform g = random_gauge_transform(lat, seed + 1000 + i, 0.0, 3);
    for (std::size_t x = 0; x < lat.sites(); ++x)
      for (int mu = 0; mu < kDim; ++mu) c.a()(x, mu) += 0.37 * (mu + 1);
    const auto rep = full_gauge_fix(apply_gauge(g, c)).second;
    for (int mu = 0; mu < kDim; ++mu) {
      const double bound = std::numbers::pi / lat.length(mu);
      inside = inside && rep.harmonic[mu] >= -bound && rep.harmonic[mu] < bound;
      worst = std::max(worst, std::abs(rep.harmonic[mu]) / bound);
    }
  }
  CheckResult r = upper("harmonic_domain", worst, 1.0, "|hbar| L / pi");
  r.passed = inside;
  return r;
}

CheckResult check_gaugefix_idempotent(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Configuration c = random_configuration(lat, seed + i, {2.0, 1.0});
    const Configuration once = full_gauge_fix(c).first;
    const auto [twice, rep] = full_gauge_fix(once);
    for (int w : rep.winding)
      if (w != 0) worst = std::max(worst, 1.0);
    worst = std::max(worst, linf_norm(lat, twice.a() - once.a()));
    worst = std::max(worst, linf_norm(lat, twice.phi() - once.phi()));
  }
  return upper("gaugefix_idempotent", worst, tol);
}

CheckResult check_pure_gauge(const Lattice& lat, int samples, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Configuration zero(lat);
    const Configuration pure = apply_gauge(random_gauge_transform(lat, seed + i), zero);
    worst = std::max(worst, linf_norm(lat, full_gauge_fix(pure).first.a()));
  }
  return upper("pure_gauge_to_zero", worst, tol, "max |a| after fixing");
}

CheckResult check_coercivity(const Lattice& lat, int samples, std::uint64_t seed) {
  const HodgeBoundConstants k = hodge_bound_constants(lat);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(-3.0, 1.0);
  double worst = 0.0;
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    // Amplitudes over four decades plus a constant part, so both terms of the
    // bound get exercised.
    Configuration c = random_configuration(lat, seed + i, {std::pow(10.0, scale(rng)), 0.0});
    const double shift = 5.0 * scale(rng);
    for (std::size_t x = 0; x < lat.sites(); ++x) c.a()(x, i % kDim) += shift;
    const Configuration f = full_gauge_fix(c).first;
    const double lhs = sobolev12_norm(lat, f.a());
    const double rhs = k.bound(l2_norm(lat, d1(lat, f.a())), l2_norm(lat, codiff1(lat, f.a())));
    if (lhs > rhs) ++violations;
    worst = std::max(worst, lhs / rhs);
  }
  CheckResult r = upper("coercivity", worst, 1.0,
                        "violations=" + std::to_string(violations) + fmt(" C=%.4f", k.C) + fmt(" C'=%.4f", k.C_prime));
  r.passed = violations == 0;
  return r;
}

CheckResult check_flux_quantization(const Lattice& lat, int n, std::uint64_t seed, double tol) {
  FluxMatrix flux{};
  flux[0][1] = n;
  flux[1][0] = -n;
  const Configuration c = random_configuration(lat, seed, {1.0, 0.0}, flux);
  const TwoForm F = curvature(c);
  const double h2 = lat.spacing() * lat.spacing();
  double worst = 0.0;
  for (int p = 0; p < kPlanes; ++p) {
    const int mu = kPlaneDirs[p][0];
    const int nu = kPlaneDirs[p][1];
    const double target = kTwoPi * flux[mu][nu];
    // Sum over each slice at fixed transverse coordinates.
    std::vector<double> slice(lat.sites(), 0.0);
    for (std::size_t x = 0; x < lat.sites(); ++x) {
      Coord key = lat.coord(x);
      key[mu] = 0;
      key[nu] = 0;
      slice[lat.index(key)] += h2 * F(x, p);
    }
    for (std::size_t x = 0; x < lat.sites(); ++x) {
      const Coord c0 = lat.coord(x);
      if (c0[mu] == 0 && c0[nu] == 0) worst = std::max(worst, std::abs(slice[x] - target));
    }
  }
  return upper("flux_quantization", worst, tol, "n12=" + std::to_string(n));
}

CheckResult check_weitzenbock_refinement(int coarse, double side, double min_factor) {
  const Configuration c1 = smooth_configuration(coarse, side, 0.3, 1.0);
  const Configuration c2 = smooth_configuration(2 * coarse, side, 0.3, 1.0);
  const double e1 = std::abs(energy_first_order(c1) - energy_weitzenbock(c1));
  const double e2 = std::abs(energy_first_order(c2) - energy_weitzenbock(c2));
  const double factor = e2 > 0.0 ? e1 / e2 : std::numeric_limits<double>::infinity();
  return lower("weitzenbock_refinement", factor, min_factor,
               fmt("gap %.4g", e1) + fmt(" -> %.4g", e2));
}

std::vector<CheckResult> run_checks(CheckLevel level, const CliffordTable& tbl) {
  const bool full = level == CheckLevel::full;
  const Lattice l3 = cube(3, 0.8);
  const Lattice l4 = cube(4);
  const int n = full ? 100 : 20;
  std::vector<CheckResult> out;
  out.push_back(check_clifford_relations(tbl));
  out.push_back(check_quadratic_form(tbl, n, 1));
  out.push_back(check_exterior_nilpotent(l3, n, 2));
  out.push_back(check_adjoint_d0(l3, n, 3));
  out.push_back(check_adjoint_d1(l3, n, 4));
  out.push_back(check_adjoint_covariant(l3, n, 5));
  out.push_back(check_adjoint_dirac(l3, tbl, n, 6));
  out.push_back(check_gauge_invariance(full ? l4 : l3, tbl, full ? 50 : 10, 7));
  out.push_back(check_gradient(l3, full ? 50 : 10, 8));
  out.push_back(check_coulomb_residual(full ? l4 : l3, 10, 9));
  out.push_back(check_harmonic_domain(full ? l4 : l3, 10, 10));
  out.push_back(check_gaugefix_idempotent(full ? l4 : l3, 10, 11));
  out.push_back(check_pure_gauge(full ? l4 : l3, 10, 12));
  out.push_back(check_coercivity(l3, n, 13));
  out.back().name += "_3^4";
  if (full) {
    out.push_back(check_coercivity(l4, n, 14));
    out.back().name += "_4^4";
  }
  out.push_back(check_flux_quantization(full ? l4 : l3, 1, 15));
  if (full) out.push_back(check_weitzenbock_refinement(4, 4.0));
  return out;
}

}  // namespace swflow
