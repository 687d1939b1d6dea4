#include "swflow/operators.hpp"

namespace swflow {

cplx link(const Configuration& cfg, std::size_t site, int mu) {
  const double h = cfg.lattice().spacing();
  return std::polar(1.0, h * cfg.a()(site, mu) + cfg.background().link_phase(site, mu));
}

CovariantDerivative covariant_diff(const Configuration& cfg, const SpinorField& phi) {
  const Lattice& lat = cfg.lattice();
  if (phi.sites() != lat.sites()) throw std::invalid_argument("covariant_diff: spinor size mismatch");
  const double inv_h = 1.0 / lat.spacing();
  CovariantDerivative out{std::vector<std::array<SpinorPlus, kDim>>(lat.sites())};
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) {
      SpinorPlus v = link(cfg, x, mu) * phi[lat.fwd(x, mu)];
      v -= phi[x];
      out[x][mu] = cplx(inv_h) * v;
    }
  return out;
}

CovariantDerivative covariant_diff(const Configuration& cfg) { return covariant_diff(cfg, cfg.phi()); }

SpinorField covariant_diff_adjoint(const Configuration& cfg, const CovariantDerivative& psi) {
  const Lattice& lat = cfg.lattice();
  const double inv_h = 1.0 / lat.spacing();
  SpinorField out(lat);
  for (std::size_t y = 0; y < lat.sites(); ++y) {
    SpinorPlus acc;
    for (int mu = 0; mu < kDim; ++mu) {
      const std::size_t x = lat.bwd(y, mu);
      acc += std::conj(link(cfg, x, mu)) * psi[x][mu];
      acc -= psi[y][mu];
    }
    out[y] = cplx(inv_h) * acc;
  }
  return out;
}

double l2_norm2(const Lattice& lat, const CovariantDerivative& psi) {
  double s = 0.0;
  for (const auto& site : psi.values)
    for (const SpinorPlus& v : site) s += v.norm2();
  return lat.cell_volume() * s;
}

cplx l2_inner(const Lattice& lat, const CovariantDerivative& u, const CovariantDerivative& v) {
  cplx s = 0.0;
  for (std::size_t x = 0; x < u.values.size(); ++x)
    for (int mu = 0; mu < kDim; ++mu) s += inner(u[x][mu], v[x][mu]);
  return lat.cell_volume() * s;
}

SpinorFieldMinus dirac(const Configuration& cfg, const SpinorField& phi, const CliffordTable& tbl) {
  const CovariantDerivative nabla = covariant_diff(cfg, phi);
  SpinorFieldMinus out(cfg.lattice());
  for (std::size_t x = 0; x < out.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) out[x] += clifford_mult(tbl, mu, nabla[x][mu]);
  return out;
}

SpinorFieldMinus dirac(const Configuration& cfg, const CliffordTable& tbl) {
  return dirac(cfg, cfg.phi(), tbl);
}

SpinorField dirac_adjoint(const Configuration& cfg, const SpinorFieldMinus& psi, const CliffordTable& tbl) {
  const Lattice& lat = cfg.lattice();
  if (psi.sites() != lat.sites()) throw std::invalid_argument("dirac_adjoint: spinor size mismatch");
  CovariantDerivative lifted{std::vector<std::array<SpinorPlus, kDim>>(lat.sites())};
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) lifted[x][mu] = clifford_mult_adjoint(tbl, mu, psi[x]);
  return covariant_diff_adjoint(cfg, lifted);
}

SpinorField covariant_laplacian(const Configuration& cfg, const SpinorField& phi) {
  SpinorField out = covariant_diff_adjoint(cfg, covariant_diff(cfg, phi));
  out *= -1.0;
  return out;
}

TwoForm curvature(const Configuration& cfg) {
  return d1(cfg.lattice(), cfg.a()) + cfg.background().curvature;
}

TwoForm curvature_at_sites(const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  const TwoForm F = curvature(cfg);
  TwoForm out(lat);
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int p = 0; p < kPlanes; ++p) {
      const int mu = kPlaneDirs[p][0];
      const int nu = kPlaneDirs[p][1];
      const std::size_t xm = lat.bwd(x, mu);
      const std::size_t xn = lat.bwd(x, nu);
      const std::size_t xmn = lat.bwd(xm, nu);
      out(x, p) = 0.25 * (F(x, p) + F(xm, p) + F(xn, p) + F(xmn, p));
    }
  return out;
}

TwoForm fplus_at_sites(const Configuration& cfg) { return selfdual_project(curvature_at_sites(cfg)); }

SpinorField weitzenbock_defect(const Configuration& cfg, const CliffordTable& tbl) {
  const SpinorField& phi = cfg.phi();
  SpinorField out = dirac_adjoint(cfg, dirac(cfg, phi, tbl), tbl);
  out.axpy(1.0, covariant_laplacian(cfg, phi));
  const TwoForm F = curvature_at_sites(cfg);
  const cplx half_i{0.0, 0.5};
  for (std::size_t x = 0; x < out.sites(); ++x) {
    PlaneFiber w{};
    for (int p = 0; p < kPlanes; ++p) w[p] = kLineCharge * F(x, p);
    out[x] -= half_i * two_form_action(tbl, w, phi[x]);
  }
  return out;
}

}  // namespace swflow
