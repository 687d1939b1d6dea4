#include "swflow/gaugefix.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <numbers>

namespace swflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<double, kDim> harmonic_part(const Lattice& lat, const OneForm& a) {
  std::array<double, kDim> m{};
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) m[mu] += a(x, mu);
  for (double& v : m) v /= static_cast<double>(lat.sites());
  return m;
}

double smallest_nonzero(const Eigen::VectorXd& ev) {
  const double top = ev.cwiseAbs().maxCoeff();
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > 1e-9 * top) gap = std::min(gap, ev[i]);
  return gap;
}

}  // namespace

GaugeTransform GaugeFixReport::applied() const {
  GaugeTransform g{zeta, {}};
  for (int mu = 0; mu < kDim; ++mu) g.winding[mu] = -winding[mu];
  return g;
}

std::pair<Configuration, GaugeFixReport> coulomb_fix(const Configuration& cfg, const PoissonOptions& opts) {
  const Lattice& lat = cfg.lattice();
  GaugeFixReport rep;
  // d* a has zero mean exactly; drop the roundoff before the solve.
  ScalarField rho = codiff1(lat, cfg.a());
  const double m = mean(rho);
  for (double& v : rho.values()) v -= m;
  rep.zeta = poisson_solve(lat, rho, opts);
  rep.zeta *= -1.0;
  Configuration out = apply_gauge(GaugeTransform{rep.zeta, {}}, cfg);
  rep.residual = l2_norm(lat, codiff1(lat, out.a()));
  rep.harmonic = harmonic_part(lat, out.a());
  return {std::move(out), std::move(rep)};
}

std::pair<Configuration, GaugeFixReport> component_fix(const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  GaugeFixReport rep;
  rep.zeta = ScalarField(lat);
  const auto hbar = harmonic_part(lat, cfg.a());
  for (int mu = 0; mu < kDim; ++mu) {
    const double t = hbar[mu] * lat.length(mu) / kTwoPi;
    double k = std::floor(t + 0.5);
    // The lattice mean of an exact +pi/L lands a few ulps short of the tie.
    if (t - k >= 0.5 - 1e-12) k += 1.0;
    rep.winding[mu] = static_cast<int>(k);
  }
  Configuration out = apply_gauge(rep.applied(), cfg);
  rep.residual = l2_norm(lat, codiff1(lat, out.a()));
  rep.harmonic = harmonic_part(lat, out.a());
  return {std::move(out), std::move(rep)};
}

std::pair<Configuration, GaugeFixReport> full_gauge_fix(const Configuration& cfg, const PoissonOptions& opts) {
  auto [coulomb, first] = coulomb_fix(cfg, opts);
  auto [fixed, second] = component_fix(coulomb);
  second.zeta = std::move(first.zeta);
  return {std::move(fixed), std::move(second)};
}

double gauge_distance(const Configuration& c1, const Configuration& c2) {
  require_same_lattice(c1, c2);
  if (c1.flux() != c2.flux()) throw std::invalid_argument("gauge_distance: flux sectors differ");
  const Lattice& lat = c1.lattice();
  auto f1 = full_gauge_fix(c1).first;
  const auto f2 = full_gauge_fix(c2).first;

  const cplx z = sobolev12_inner(lat, f1.phi(), f2.phi());
  if (std::abs(z) > 0.0) f1.phi() *= std::polar(1.0, -std::arg(z));

  return sobolev12_norm(lat, f1.a() - f2.a()) + sobolev12_norm(lat, f1.phi() - f2.phi());
}

double hodge_gap_dense(const Lattice& lat) {
  const std::size_t n = kDim * lat.sites();
  Eigen::MatrixXd M(n, n);
  OneForm e(lat);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const OneForm col = d0(lat, codiff1(lat, e)) + codiff2(lat, d1(lat, e));
    for (std::size_t i = 0; i < n; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return smallest_nonzero(es.eigenvalues());
}

double hodge_gap_separable(const Lattice& lat) {
  const double h2 = lat.spacing() * lat.spacing();
  double gap = std::numeric_limits<double>::infinity();
  for (int mu = 0; mu < kDim; ++mu) {
    const int n = lat.dim(mu);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      L(i, i) += 2.0 / h2;
      L(i, (i + 1) % n) -= 1.0 / h2;
      L(i, (i + n - 1) % n) -= 1.0 / h2;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
    gap = std::min(gap, smallest_nonzero(es.eigenvalues()));
  }
  return gap;
}

HodgeBoundConstants hodge_bound_constants(const Lattice& lat) {
  static std::mutex mutex;
  static std::map<std::pair<Coord, double>, HodgeBoundConstants> cache;
  const auto key = std::make_pair(lat.dims(), lat.spacing());
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  HodgeBoundConstants c;
  c.gap = kDim * lat.sites() <= 2048 ? hodge_gap_dense(lat) : hodge_gap_separable(lat);
  c.C = std::sqrt(1.0 + 1.0 / c.gap);
  double harmonic = 0.0;
  for (int mu = 0; mu < kDim; ++mu) {
    const double m = std::numbers::pi / lat.length(mu);
    harmonic += m * m;
  }
  c.C_prime = std::sqrt(lat.volume() * harmonic);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, c);
  return c;
}

}  // namespace swflow
