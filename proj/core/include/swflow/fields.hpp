#pragma once

#include "swflow/clifford.hpp"
#include "swflow/lattice.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>

namespace swflow {

/// One spinor per site.
template <class S>
class SpinorFieldT {
public:
  SpinorFieldT() = default;
  explicit SpinorFieldT(const Lattice& lat) : values_(lat.sites()) {}
  explicit SpinorFieldT(std::vector<S> values) : values_(std::move(values)) {}

  std::size_t sites() const { return values_.size(); }
  S& operator[](std::size_t site) { return values_[site]; }
  const S& operator[](std::size_t site) const { return values_[site]; }
  std::span<S> values() { return values_; }
  std::span<const S> values() const { return values_; }

  /// this += s * o
  void axpy(cplx s, const SpinorFieldT& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
  }
  SpinorFieldT& operator*=(cplx s) {
    for (S& v : values_) v *= s;
    return *this;
  }
  friend SpinorFieldT operator-(SpinorFieldT a, const SpinorFieldT& b) {
    a.axpy(-1.0, b);
    return a;
  }
  friend SpinorFieldT operator+(SpinorFieldT a, const SpinorFieldT& b) {
    a.axpy(1.0, b);
    return a;
  }
  bool operator==(const SpinorFieldT&) const = default;

private:
  void check_same(const SpinorFieldT& o) const {
    if (o.values_.size() != values_.size()) throw std::invalid_argument("spinor field size mismatch");
  }
  std::vector<S> values_;
};

using SpinorField = SpinorFieldT<SpinorPlus>;
using SpinorFieldMinus = SpinorFieldT<SpinorMinus>;

/// Hermitian L2 product h^4 sum_x <u(x), v(x)>.
template <class S>
cplx l2_inner(const Lattice& lat, const SpinorFieldT<S>& u, const SpinorFieldT<S>& v) {
  if (u.sites() != lat.sites() || v.sites() != lat.sites())
    throw std::invalid_argument("spinor field does not live on this lattice");
  cplx s = 0.0;
  for (std::size_t x = 0; x < u.sites(); ++x) s += inner(u[x], v[x]);
  return lat.cell_volume() * s;
}

template <class S>
double l2_norm(const Lattice& lat, const SpinorFieldT<S>& u) {
  return std::sqrt(l2_inner(lat, u, u).real());
}

template <class S>
double l4_norm(const Lattice& lat, const SpinorFieldT<S>& u) {
  double s = 0.0;
  for (const S& v : u.values()) s += v.norm2() * v.norm2();
  return std::pow(lat.cell_volume() * s, 0.25);
}

template <class S>
double linf_norm(const Lattice&, const SpinorFieldT<S>& u) {
  double m = 0.0;
  for (const S& v : u.values()) m = std::max(m, v.norm2());
  return std::sqrt(m);
}

/// L^{1,2} norm with plain (non-covariant) forward differences.
template <class S>
double sobolev12_norm(const Lattice& lat, const SpinorFieldT<S>& u) {
  const double h = lat.spacing();
  double grad = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) grad += (u[lat.fwd(x, mu)] - u[x]).norm2() / (h * h);
  return std::sqrt(l2_inner(lat, u, u).real() + lat.cell_volume() * grad);
}

/// Sesquilinear L^{1,2} product matching sobolev12_norm.
cplx sobolev12_inner(const Lattice& lat, const SpinorField& u, const SpinorField& v);

/// Antisymmetric integer flux matrix n_{mu nu}.
using FluxMatrix = std::array<std::array<int, kDim>, kDim>;

/// Twisted-boundary background realizing a flux sector: link angles
/// (dimensionless) and their uniform plaquette curvature (1/length^2).
struct FluxBackground {
  OneForm link_phase;
  TwoForm curvature;
};

FluxBackground build_flux_background(const Lattice& lat, const FluxMatrix& flux);

/// A - A0 as a real link field plus the bundle's flux sector.
struct GaugeField {
  OneForm a;
  FluxMatrix flux{};
};

/// g(x) = exp(i (zeta(x) + 2 pi sum_mu k_mu x_mu / N_mu)).
struct GaugeTransform {
  ScalarField zeta;
  std::array<int, kDim> winding{};

  static GaugeTransform identity(const Lattice& lat) { return {ScalarField(lat), {}}; }
  /// theta(x), the phase of g at a site.
  double phase(const Lattice& lat, std::size_t site) const;
  GaugeTransform inverse() const;
  friend GaugeTransform compose(const GaugeTransform& g1, const GaugeTransform& g2);
};

GaugeTransform compose(const GaugeTransform& g1, const GaugeTransform& g2);

/// The pair (A, phi) together with the scalar-curvature background s(x).
class Configuration {
public:
  explicit Configuration(const Lattice& lat, const FluxMatrix& flux = {});
  Configuration(std::shared_ptr<const Lattice> lat, const FluxMatrix& flux = {});

  const Lattice& lattice() const { return *lat_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lat_; }

  const GaugeField& gauge() const { return gauge_; }
  OneForm& a() { return gauge_.a; }
  const OneForm& a() const { return gauge_.a; }
  const FluxMatrix& flux() const { return gauge_.flux; }
  const FluxBackground& background() const { return *background_; }

  SpinorField& phi() { return phi_; }
  const SpinorField& phi() const { return phi_; }
  ScalarField& s() { return s_; }
  const ScalarField& s() const { return s_; }

  std::optional<std::uint64_t> seed;

private:
  std::shared_ptr<const Lattice> lat_;
  GaugeField gauge_;
  std::shared_ptr<const FluxBackground> background_;
  SpinorField phi_;
  ScalarField s_;
};

/// Throws std::invalid_argument if the two configurations live on different
/// lattices.
void require_same_lattice(const Configuration& c1, const Configuration& c2);

/// (A, phi) -> (A + g^{-1} dg, g^{-1} phi). The winding enters a as the
/// constant 2 pi k_mu / L_mu; the flux sector is unchanged.
Configuration apply_gauge(const GaugeTransform& g, const Configuration& cfg);

struct Amplitudes {
  double a = 0.0;
  double phi = 0.0;
};

/// Uniform link values in [-A, A] and spinor components with real and
/// imaginary parts uniform in [-P, P]. Deterministic for a given seed and build.
Configuration random_configuration(const Lattice& lat, std::uint64_t seed, Amplitudes amp,
                                   const FluxMatrix& flux = {});

/// Thrown by load() for malformed, mismatched, or unsupported files.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFileVersion = 1;

std::string to_json(const Configuration& cfg);
Configuration from_json(const std::string& text);
void save(const Configuration& cfg, const std::filesystem::path& path);
Configuration load(const std::filesystem::path& path);

}  // namespace swflow
