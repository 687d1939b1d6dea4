#include "swflow/lattice.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>

namespace swflow {

int plane_index(int mu, int nu) {
  if (mu == nu || mu < 0 || nu < 0 || mu >= kDim || nu >= kDim)
    throw std::invalid_argument("plane needs two distinct directions");
  if (mu > nu) std::swap(mu, nu);
  for (int p = 0; p < kPlanes; ++p)
    if (kPlaneDirs[p][0] == mu && kPlaneDirs[p][1] == nu) return p;
  return -1;  // unreachable
}

int plane_sign(int mu, int nu) { return mu < nu ? 1 : -1; }

Lattice::Lattice(Coord dims, double spacing) : dims_(dims), spacing_(spacing) {
  for (int n : dims_)
    if (n < 2) throw std::invalid_argument("every lattice extent must be >= 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("lattice spacing must be positive");
  cell_volume_ = spacing * spacing * spacing * spacing;
  sites_ = 1;
  for (int n : dims_) sites_ *= static_cast<std::size_t>(n);

  fwd_.resize(sites_ * kDim);
  bwd_.resize(sites_ * kDim);
  for (std::size_t s = 0; s < sites_; ++s) {
    const Coord x = coord(s);
    for (int mu = 0; mu < kDim; ++mu) {
      Coord y = x;
      y[mu] = (x[mu] + 1) % dims_[mu];
      fwd_[s * kDim + mu] = index(y);
      y[mu] = (x[mu] + dims_[mu] - 1) % dims_[mu];
      bwd_[s * kDim + mu] = index(y);
    }
  }
}

double Lattice::volume() const { return static_cast<double>(sites_) * cell_volume_; }

std::size_t Lattice::index(const Coord& x) const {
  std::size_t i = 0;
  for (int mu = kDim - 1; mu >= 0; --mu) {
    const int xm = ((x[mu] % dims_[mu]) + dims_[mu]) % dims_[mu];
    i = i * static_cast<std::size_t>(dims_[mu]) + static_cast<std::size_t>(xm);
  }
  return i;
}

Coord Lattice::coord(std::size_t site) const {
  Coord x{};
  for (int mu = 0; mu < kDim; ++mu) {
    x[mu] = static_cast<int>(site % static_cast<std::size_t>(dims_[mu]));
    site /= static_cast<std::size_t>(dims_[mu]);
  }
  return x;
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return f.size() ? s / static_cast<double>(f.size()) : 0.0;
}

OneForm d0(const Lattice& lat, const ScalarField& f) {
  require_on(lat, f);
  const double inv_h = 1.0 / lat.spacing();
  OneForm out(lat);
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) out(x, mu) = (f(lat.fwd(x, mu)) - f(x)) * inv_h;
  return out;
}

TwoForm d1(const Lattice& lat, const OneForm& a) {
  require_on(lat, a);
  const double inv_h = 1.0 / lat.spacing();
  TwoForm out(lat);
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int p = 0; p < kPlanes; ++p) {
      const int mu = kPlaneDirs[p][0];
      const int nu = kPlaneDirs[p][1];
      out(x, p) = (a(lat.fwd(x, mu), nu) - a(x, nu) - a(lat.fwd(x, nu), mu) + a(x, mu)) * inv_h;
    }
  return out;
}

ScalarField codiff1(const Lattice& lat, const OneForm& a) {
  require_on(lat, a);
  const double inv_h = 1.0 / lat.spacing();
  ScalarField out(lat);
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    double s = 0.0;
    for (int mu = 0; mu < kDim; ++mu) s += a(x, mu) - a(lat.bwd(x, mu), mu);
    out(x) = -s * inv_h;
  }
  return out;
}

OneForm codiff2(const Lattice& lat, const TwoForm& F) {
  require_on(lat, F);
  const double inv_h = 1.0 / lat.spacing();
  OneForm out(lat);
  for (std::size_t y = 0; y < lat.sites(); ++y)
    for (int nu = 0; nu < kDim; ++nu) {
      double s = 0.0;
      for (int mu = 0; mu < kDim; ++mu) {
        if (mu == nu) continue;
        const int p = plane_index(mu, nu);
        const double sg = plane_sign(mu, nu);
        s += sg * (F(lat.bwd(y, mu), p) - F(y, p));
      }
      out(y, nu) = s * inv_h;
    }
  return out;
}

ScalarField laplacian0(const Lattice& lat, const ScalarField& f) { return codiff1(lat, d0(lat, f)); }

std::array<double, kPlanes> star_fiber(const std::array<double, kPlanes>& w) {
  // planes: 0:(12) 1:(13) 2:(14) 3:(23) 4:(24) 5:(34)
  return {w[5], -w[4], w[3], w[2], -w[1], w[0]};
}

std::array<double, kPlanes> selfdual_fiber(const std::array<double, kPlanes>& w) {
  const auto s = star_fiber(w);
  std::array<double, kPlanes> out{};
  for (int p = 0; p < kPlanes; ++p) out[p] = 0.5 * (w[p] + s[p]);
  return out;
}

namespace {

template <class Fn>
TwoForm map_fibers(const TwoForm& F, Fn&& fn) {
  TwoForm out = F;
  for (std::size_t x = 0; x < F.sites(); ++x) {
    std::array<double, kPlanes> w{};
    for (int p = 0; p < kPlanes; ++p) w[p] = F(x, p);
    const auto r = fn(w);
    for (int p = 0; p < kPlanes; ++p) out(x, p) = r[p];
  }
  return out;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double l2_raw(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s);
}

ScalarField solve_spectral(const Lattice& lat, const ScalarField& rho) {
  const auto& n = lat.dims();
  // FFTW is row-major (last index fastest); our x1 runs fastest.
  const int shape[kDim] = {n[3], n[2], n[1], n[0]};
  const int half = n[0] / 2 + 1;
  const std::size_t nc = lat.sites() / static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(half);

  std::vector<double> real(rho.values().begin(), rho.values().end());
  auto* spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc));
  fftw_plan fwd;
  fftw_plan bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c(kDim, shape, real.data(), spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r(kDim, shape, spec, real.data(), FFTW_ESTIMATE);
  }
  fftw_execute(fwd);

  const double h2 = lat.spacing() * lat.spacing();
  std::array<std::vector<double>, kDim> sym;
  for (int mu = 0; mu < kDim; ++mu) {
    sym[mu].resize(static_cast<std::size_t>(n[mu]));
    for (int k = 0; k < n[mu]; ++k) {
      const double s = std::sin(std::numbers::pi * k / n[mu]);
      sym[mu][static_cast<std::size_t>(k)] = 4.0 * s * s / h2;
    }
  }
  std::size_t i = 0;
  for (int k4 = 0; k4 < n[3]; ++k4)
    for (int k3 = 0; k3 < n[2]; ++k3)
      for (int k2 = 0; k2 < n[1]; ++k2)
        for (int k1 = 0; k1 < half; ++k1, ++i) {
          const double lam = sym[0][k1] + sym[1][k2] + sym[2][k3] + sym[3][k4];
          const double scale = lam > 0.0 ? 1.0 / (lam * static_cast<double>(lat.sites())) : 0.0;
          spec[i][0] *= scale;
          spec[i][1] *= scale;
        }
  fftw_execute(bwd);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(spec);
  return ScalarField(lat, std::move(real));
}

ScalarField solve_cg(const Lattice& lat, const ScalarField& rho, double tol, std::size_t max_iter) {
  ScalarField x(lat);
  ScalarField r = rho;
  ScalarField p = r;
  const double target = tol * l2_raw(rho);
  double rr = 0.0;
  for (double v : r.values()) rr += v * v;
  for (std::size_t it = 0; it < max_iter && std::sqrt(rr) > target; ++it) {
    const ScalarField Ap = laplacian0(lat, p);
    double pAp = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) pAp += p[i] * Ap[i];
    if (!(pAp > 0.0)) break;
    const double alpha = rr / pAp;
    x.axpy(alpha, p);
    r.axpy(-alpha, Ap);
    double rr_new = 0.0;
    for (double v : r.values()) rr_new += v * v;
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
  }
  return x;
}

}  // namespace

TwoForm hodge_star2(const TwoForm& F) { return map_fibers(F, star_fiber); }
TwoForm selfdual_project(const TwoForm& F) { return map_fibers(F, selfdual_fiber); }
TwoForm antiselfdual_project(const TwoForm& F) {
  return map_fibers(F, [](const std::array<double, kPlanes>& w) {
    const auto s = star_fiber(w);
    std::array<double, kPlanes> out{};
    for (int p = 0; p < kPlanes; ++p) out[p] = 0.5 * (w[p] - s[p]);
    return out;
  });
}

ScalarField poisson_solve(const Lattice& lat, const ScalarField& rho, const PoissonOptions& opts) {
  require_on(lat, rho);
  const double norm = l2_raw(rho);
  if (norm == 0.0) return ScalarField(lat);
  const double m = mean(rho);
  const double mean_part = std::abs(m) * std::sqrt(static_cast<double>(lat.sites()));
  if (mean_part > 1e-10 * norm)
    throw std::invalid_argument("poisson_solve: source has nonzero mean " + std::to_string(m));

  ScalarField src = rho;
  for (double& v : src.values()) v -= m;

  const std::size_t max_iter = opts.max_iterations ? opts.max_iterations : 10 * lat.sites();
  ScalarField f = opts.method == PoissonMethod::spectral ? solve_spectral(lat, src)
                                                         : solve_cg(lat, src, opts.tolerance, max_iter);
  const double fm = mean(f);
  for (double& v : f.values()) v -= fm;

  const ScalarField r = laplacian0(lat, f) - src;
  const double rel = l2_raw(r) / norm;
  if (!(rel <= opts.tolerance))
    throw PoissonError("poisson_solve: residual " + std::to_string(rel) + " above tolerance", rel);
  return f;
}

}  // namespace swflow
