#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swflow {

using cplx = std::complex<double>;

inline constexpr int kDim = 4;
inline constexpr int kPlanes = 6;

/// Ordered planes (mu, nu) with mu < nu, in storage order.
inline constexpr std::array<std::array<int, 2>, kPlanes> kPlaneDirs = {{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Storage index of the plane spanned by mu != nu, and the orientation sign
/// (+1 if mu < nu).
int plane_index(int mu, int nu);
int plane_sign(int mu, int nu);

using Coord = std::array<int, kDim>;

/// Periodic hypercubic lattice. Site index runs with x1 fastest.
class Lattice {
public:
  Lattice(Coord dims, double spacing);

  const Coord& dims() const { return dims_; }
  int dim(int mu) const { return dims_[mu]; }
  double spacing() const { return spacing_; }
  double length(int mu) const { return dims_[mu] * spacing_; }
  double volume() const;
  /// h^4, the measure of one cell.
  double cell_volume() const { return cell_volume_; }
  std::size_t sites() const { return sites_; }

  std::size_t index(const Coord& x) const;
  Coord coord(std::size_t site) const;
  std::size_t fwd(std::size_t site, int mu) const { return fwd_[site * kDim + mu]; }
  std::size_t bwd(std::size_t site, int mu) const { return bwd_[site * kDim + mu]; }

  bool operator==(const Lattice& other) const {
    return dims_ == other.dims_ && spacing_ == other.spacing_;
  }

private:
  Coord dims_;
  double spacing_;
  double cell_volume_;
  std::size_t sites_;
  std::vector<std::size_t> fwd_;
  std::vector<std::size_t> bwd_;
};

/// Real field with a fixed number of components per site, stored site-major.
template <int Components>
class RealForm {
public:
  static constexpr int components = Components;

  RealForm() = default;
  explicit RealForm(const Lattice& lat) : values_(lat.sites() * Components, 0.0) {}
  RealForm(const Lattice& lat, std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() != lat.sites() * Components)
      throw std::invalid_argument("field length does not match lattice");
  }

  std::size_t sites() const { return values_.size() / Components; }
  std::size_t size() const { return values_.size(); }
  double& operator()(std::size_t site, int c = 0) { return values_[site * Components + c]; }
  double operator()(std::size_t site, int c = 0) const { return values_[site * Components + c]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  RealForm& operator+=(const RealForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  RealForm& operator-=(const RealForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  RealForm& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }
  /// this += s * o
  void axpy(double s, const RealForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
  }
  friend RealForm operator+(RealForm a, const RealForm& b) { return a += b; }
  friend RealForm operator-(RealForm a, const RealForm& b) { return a -= b; }
  friend RealForm operator*(double s, RealForm a) { return a *= s; }
  bool operator==(const RealForm&) const = default;

private:
  void check_same(const RealForm& o) const {
    if (o.values_.size() != values_.size()) throw std::invalid_argument("field size mismatch");
  }
  std::vector<double> values_;
};

using ScalarField = RealForm<1>;
using OneForm = RealForm<kDim>;
using TwoForm = RealForm<kPlanes>;

/// Throws std::invalid_argument unless f lives on lat.
template <int C>
void require_on(const Lattice& lat, const RealForm<C>& f) {
  if (f.size() != lat.sites() * C) throw std::invalid_argument("field does not live on this lattice");
}

// Discrete exterior calculus. Forward differences for d, exact L2 adjoints
// (backward differences) for the codifferentials.
OneForm d0(const Lattice& lat, const ScalarField& f);
TwoForm d1(const Lattice& lat, const OneForm& a);
ScalarField codiff1(const Lattice& lat, const OneForm& a);
OneForm codiff2(const Lattice& lat, const TwoForm& F);
ScalarField laplacian0(const Lattice& lat, const ScalarField& f);

/// Flat-metric Hodge star on 2-forms, sitewise.
TwoForm hodge_star2(const TwoForm& F);
TwoForm selfdual_project(const TwoForm& F);
TwoForm antiselfdual_project(const TwoForm& F);

/// Fiber versions acting on the 6 plane components of one site.
std::array<double, kPlanes> star_fiber(const std::array<double, kPlanes>& w);
std::array<double, kPlanes> selfdual_fiber(const std::array<double, kPlanes>& w);

enum class PoissonMethod { spectral, conjugate_gradient };

struct PoissonOptions {
  PoissonMethod method = PoissonMethod::spectral;
  double tolerance = 1e-10;  // relative residual
  std::size_t max_iterations = 0;  // 0 means 10 * site count
};

/// Thrown when the residual contract cannot be met.
class PoissonError : public std::runtime_error {
public:
  PoissonError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Zero-mean solution of laplacian0 f = rho. rho must have zero mean.
ScalarField poisson_solve(const Lattice& lat, const ScalarField& rho, const PoissonOptions& opts = {});

// Discrete L2 structure: <u, v> = h^4 sum_x u(x) v(x), forms summed over
// their stored components (planes mu < nu only).
template <int C>
double l2_inner(const Lattice& lat, const RealForm<C>& u, const RealForm<C>& v) {
  require_on(lat, u);
  require_on(lat, v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return lat.cell_volume() * s;
}

template <int C>
double l2_norm(const Lattice& lat, const RealForm<C>& u) {
  return std::sqrt(l2_inner(lat, u, u));
}

template <int C>
double fiber_norm2(const RealForm<C>& u, std::size_t site) {
  double s = 0.0;
  for (int c = 0; c < C; ++c) s += u(site, c) * u(site, c);
  return s;
}

template <int C>
double l4_norm(const Lattice& lat, const RealForm<C>& u) {
  require_on(lat, u);
  double s = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    const double n2 = fiber_norm2(u, x);
    s += n2 * n2;
  }
  return std::pow(lat.cell_volume() * s, 0.25);
}

template <int C>
double linf_norm(const Lattice& lat, const RealForm<C>& u) {
  require_on(lat, u);
  double m = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x) m = std::max(m, fiber_norm2(u, x));
  return std::sqrt(m);
}

/// ||u||_{1,2}^2 = ||u||^2 + sum over components of ||d0 u_c||^2 (plain differences).
template <int C>
double sobolev12_norm(const Lattice& lat, const RealForm<C>& u) {
  require_on(lat, u);
  const double h = lat.spacing();
  double grad = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) {
      const std::size_t y = lat.fwd(x, mu);
      for (int c = 0; c < C; ++c) {
        const double d = (u(y, c) - u(x, c)) / h;
        grad += d * d;
      }
    }
  return std::sqrt(l2_inner(lat, u, u) + lat.cell_volume() * grad);
}

/// Mean value over the lattice.
double mean(const ScalarField& f);

}  // namespace swflow
