#include "swflow/functional.hpp"

#include <random>

namespace swflow {

double pairing(const Lattice& lat, const Gradient& g, const Gradient& dir) {
  return l2_inner(lat, g.da, dir.da) + 2.0 * l2_inner(lat, g.dphi, dir.dphi).real();
}

double norm(const Lattice& lat, const Gradient& g) { return std::sqrt(pairing(lat, g, g)); }

double energy_weitzenbock(const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  const CovariantDerivative nabla = covariant_diff(cfg);
  const TwoForm Fp = selfdual_project(curvature(cfg));
  const double c2 = kLineCharge * kLineCharge;
  // Extended accumulator: line searches near a minimum compare energies that
  // differ in the 13th digit.
  long double sum = 0.0L;
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    double site = 0.0;
    for (int mu = 0; mu < kDim; ++mu) site += nabla[x][mu].norm2();
    site += c2 * fiber_norm2(Fp, x);
    const double r2 = cfg.phi()[x].norm2();
    site += 0.25 * cfg.s()(x) * r2 + 0.125 * r2 * r2;
    sum += site;
  }
  return lat.cell_volume() * static_cast<double>(sum);
}

std::pair<double, double> sw_equation_residual(const Configuration& cfg, const CliffordTable& tbl) {
  const Lattice& lat = cfg.lattice();
  const SpinorFieldMinus Dphi = dirac(cfg, tbl);
  const double dirac_part = l2_inner(lat, Dphi, Dphi).real();
  const TwoForm Fp = fplus_at_sites(cfg);
  double curv = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    const PlaneFiber q = quadratic_form(tbl, cfg.phi()[x]);
    for (int p = 0; p < kPlanes; ++p) {
      const double d = kLineCharge * Fp(x, p) - q[p];
      curv += d * d;
    }
  }
  return {dirac_part, lat.cell_volume() * curv};
}

double energy_first_order(const Configuration& cfg, const CliffordTable& tbl) {
  const auto [d, c] = sw_equation_residual(cfg, tbl);
  return d + c;
}

Gradient gradient(const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  const CovariantDerivative nabla = covariant_diff(cfg);
  Gradient g{OneForm(lat), covariant_diff_adjoint(cfg, nabla)};

  for (std::size_t x = 0; x < lat.sites(); ++x) {
    const SpinorPlus& p = cfg.phi()[x];
    const double r2 = p.norm2();
    g.dphi[x] += cplx(0.25 * cfg.s()(x) + 0.25 * r2) * p;
    for (int mu = 0; mu < kDim; ++mu) g.da(x, mu) = 2.0 * inner(nabla[x][mu], p).imag();
  }

  const TwoForm Fp = selfdual_project(curvature(cfg));
  g.da.axpy(2.0 * kLineCharge * kLineCharge, codiff2(lat, Fp));
  return g;
}

Configuration displace(const Configuration& cfg, const Gradient& dir, double t) {
  Configuration out = cfg;
  out.a().axpy(t, dir.da);
  out.phi().axpy(t, dir.dphi);
  return out;
}

double fd_gradient_check(const Configuration& cfg, double step, int n_directions, std::uint64_t seed) {
  if (!(step > 0.0)) throw std::invalid_argument("fd_gradient_check: step must be positive");
  const Lattice& lat = cfg.lattice();
  const Gradient g = gradient(cfg);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;

  double worst = 0.0;
  for (int k = 0; k < n_directions; ++k) {
    Gradient dir{OneForm(lat), SpinorField(lat)};
    double len2 = 0.0;
    for (double& v : dir.da.values()) {
      v = n01(rng);
      len2 += v * v;
    }
    for (SpinorPlus& s : dir.dphi.values())
      for (int c = 0; c < 2; ++c) {
        const double re = n01(rng);
        const double im = n01(rng);
        s[c] = cplx(re, im);
        len2 += re * re + im * im;
      }
    const double inv = 1.0 / std::sqrt(len2);
    dir.da *= inv;
    dir.dphi *= inv;

    const double fd = (energy_weitzenbock(displace(cfg, dir, step)) -
                       energy_weitzenbock(displace(cfg, dir, -step))) / (2.0 * step);
    const double an = pairing(lat, g, dir);
    const double scale = std::max(std::abs(fd), std::abs(an));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(fd - an) / scale);
  }
  return worst;
}

double energy_lower_bound(const Configuration& cfg) {
  double s2 = 0.0;
  for (double s : cfg.s().values())
    if (s < 0.0) s2 += s * s;
  return -cfg.lattice().cell_volume() * s2 / 8.0;
}

ExcessReport excess_report(const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  ExcessReport rep;
  double s0 = cfg.s()(0);
  for (double s : cfg.s().values()) s0 = std::min(s0, s);
  rep.threshold = std::max(-s0, 0.0);

  const CovariantDerivative nabla = covariant_diff(cfg);
  SpinorField eta(lat);
  std::size_t count = 0;
  double radial = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    const double r = std::sqrt(cfg.phi()[x].norm2());
    if (!(r > rep.threshold) || r < 1e-12 * rep.threshold || r == 0.0) continue;
    ++count;
    const SpinorPlus nu = cplx(1.0 / r) * cfg.phi()[x];
    for (int mu = 0; mu < kDim; ++mu) {
      const double proj = inner(nabla[x][mu], nu).real();
      radial += proj * proj;
    }
    eta[x] = cplx(r - rep.threshold) * nu;
  }
  rep.excess_measure = lat.cell_volume() * static_cast<double>(count);
  rep.radial_excess = lat.cell_volume() * radial;
  rep.eta_norm = sobolev12_norm(lat, eta);
  return rep;
}

}  // namespace swflow
