#pragma once

#include "swflow/lattice.hpp"

#include <array>
#include <complex>

namespace swflow {

/// Two-component Weyl spinor; the tag distinguishes the fibers of W+ and W-.
template <class Tag>
struct Weyl {
  std::array<cplx, 2> c{};

  cplx& operator[](int i) { return c[i]; }
  const cplx& operator[](int i) const { return c[i]; }
  double norm2() const { return std::norm(c[0]) + std::norm(c[1]); }

  Weyl& operator+=(const Weyl& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
  }
  Weyl& operator-=(const Weyl& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
  }
  Weyl& operator*=(cplx s) {
    c[0] *= s;
    c[1] *= s;
    return *this;
  }
  friend Weyl operator+(Weyl a, const Weyl& b) { return a += b; }
  friend Weyl operator-(Weyl a, const Weyl& b) { return a -= b; }
  friend Weyl operator*(cplx s, Weyl a) { return a *= s; }
  bool operator==(const Weyl&) const = default;
};

struct PlusTag {};
struct MinusTag {};
using SpinorPlus = Weyl<PlusTag>;
using SpinorMinus = Weyl<MinusTag>;

/// Hermitian fiber product, conjugate-linear in the second slot.
template <class Tag>
cplx inner(const Weyl<Tag>& u, const Weyl<Tag>& v) {
  return u.c[0] * std::conj(v.c[0]) + u.c[1] * std::conj(v.c[1]);
}

/// Row-major complex 2x2 matrix.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx operator()(int r, int c) const { return m[2 * r + c]; }
  cplx& operator()(int r, int c) { return m[2 * r + c]; }
  Mat2 adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }

  static Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend Mat2 operator*(cplx s, const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
    return r;
  }
  /// Max-entry distance.
  double distance(const Mat2& o) const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
    return d;
  }

  template <class In, class Out = In>
  Out apply(const In& v) const {
    Out r;
    r.c[0] = m[0] * v.c[0] + m[1] * v.c[1];
    r.c[1] = m[2] * v.c[0] + m[3] * v.c[1];
    return r;
  }
};

/// Clifford multiplication data: sigma_mu maps W+ to W-, and the bivectors
/// B_{mu nu} = -sigma_mu^dag sigma_nu act on W+.
class CliffordTable {
public:
  explicit CliffordTable(const std::array<Mat2, kDim>& sigma);

  const Mat2& sigma(int mu) const { return sigma_[mu]; }
  const Mat2& bivector(int mu, int nu) const { return bivector_[mu * kDim + nu]; }
  /// Bivector of stored plane p (mu < nu).
  const Mat2& plane_bivector(int p) const {
    return bivector(kPlaneDirs[p][0], kPlaneDirs[p][1]);
  }

  /// Largest entry deviation from the Clifford relations
  /// s_mu^dag s_nu + s_nu^dag s_mu = 2 delta and s_mu s_nu^dag + s_nu s_mu^dag = 2 delta.
  double clifford_defect() const;
  double unitarity_defect() const;

private:
  std::array<Mat2, kDim> sigma_;
  std::array<Mat2, kDim * kDim> bivector_;
};

/// sigma_4 = Id, sigma_k = -i tau_k with tau the Pauli matrices. With this
/// orientation W+ carries the self-dual bivectors.
const CliffordTable& standard_table();

/// The three Pauli matrices tau_1, tau_2, tau_3.
std::array<Mat2, 3> pauli();

SpinorMinus clifford_mult(const CliffordTable& tbl, int mu, const SpinorPlus& phi);
/// sigma_mu^dag psi, the W- to W+ adjoint of clifford_mult.
SpinorPlus clifford_mult_adjoint(const CliffordTable& tbl, int mu, const SpinorMinus& psi);

using PlaneFiber = std::array<double, kPlanes>;

/// sigma(phi)_{mu nu} = (i/4) <B_{mu nu} phi, phi>, mu < nu. Always self-dual.
PlaneFiber quadratic_form(const CliffordTable& tbl, const SpinorPlus& phi);

/// sum_{mu<nu} w_{mu nu} B_{mu nu} phi for an arbitrary 2-form fiber.
SpinorPlus two_form_action(const CliffordTable& tbl, const PlaneFiber& w, const SpinorPlus& phi);

/// Same as two_form_action but rejects w whose anti-self-dual part exceeds
/// 1e-10 of its norm.
SpinorPlus selfdual_action(const CliffordTable& tbl, const PlaneFiber& w, const SpinorPlus& phi);

}  // namespace swflow
