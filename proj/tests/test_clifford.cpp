#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace swflow;
using swflow::testing::random_spinor;

namespace {

const cplx I(0.0, 1.0);

double fiber_norm2(const PlaneFiber& w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return s;
}

bool skew_hermitian(const Mat2& m, double tol) {
  const Mat2 s = m + m.adjoint();
  return s.distance(Mat2{}) <= tol;
}

}  // namespace

TEST(Pauli, ProductRule) {
  const auto t = pauli();
  EXPECT_LE((t[0] * t[1]).distance(I * t[2]), 1e-16);
  EXPECT_LE((t[1] * t[2]).distance(I * t[0]), 1e-16);
  for (const Mat2& m : t) EXPECT_LE((m * m).distance(Mat2::identity()), 1e-16);
}

TEST(StandardTable, SatisfiesCliffordRelations) {
  const CliffordTable& tbl = standard_table();
  EXPECT_LE(tbl.clifford_defect(), 1e-15);
  EXPECT_LE(tbl.unitarity_defect(), 1e-15);
  EXPECT_LE(tbl.sigma(3).distance(Mat2::identity()), 0.0);
}

TEST(StandardTable, GeneratorsSquareToMinusOne) {
  // e_mu = [[0, -s^dag], [s, 0]] squares to diag(-s^dag s, -s s^dag).
  const CliffordTable& tbl = standard_table();
  for (int mu = 0; mu < kDim; ++mu) {
    const Mat2& s = tbl.sigma(mu);
    EXPECT_LE((cplx(-1.0) * (s.adjoint() * s)).distance(cplx(-1.0) * Mat2::identity()), 1e-15);
    EXPECT_LE((cplx(-1.0) * (s * s.adjoint())).distance(cplx(-1.0) * Mat2::identity()), 1e-15);
  }
}

TEST(StandardTable, BivectorsAreSkewHermitianAndSelfDual) {
  const CliffordTable& tbl = standard_table();
  for (int mu = 0; mu < kDim; ++mu)
    for (int nu = 0; nu < kDim; ++nu) {
      if (mu == nu) continue;
      EXPECT_TRUE(skew_hermitian(tbl.bivector(mu, nu), 1e-15));
    }
  // W+ only sees self-dual planes: B_12 = B_34, B_13 = -B_24, B_14 = B_23.
  EXPECT_LE(tbl.bivector(0, 1).distance(tbl.bivector(2, 3)), 1e-15);
  EXPECT_LE(tbl.bivector(0, 2).distance(cplx(-1.0) * tbl.bivector(1, 3)), 1e-15);
  EXPECT_LE(tbl.bivector(0, 3).distance(tbl.bivector(1, 2)), 1e-15);
}

TEST(StandardTable, CommutingSelfDualPair) {
  const CliffordTable& tbl = standard_table();
  const Mat2& b12 = tbl.bivector(0, 1);
  const Mat2& b34 = tbl.bivector(2, 3);
  EXPECT_LE((b12 * b34).distance(b34 * b12), 1e-15);
}

TEST(CliffordMult, ZeroAndNormPreservation) {
  const CliffordTable& tbl = standard_table();
  for (int mu = 0; mu < kDim; ++mu) EXPECT_EQ(clifford_mult(tbl, mu, SpinorPlus{}).norm2(), 0.0);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const SpinorPlus phi = random_spinor(rng);
    for (int mu = 0; mu < kDim; ++mu) EXPECT_NEAR(clifford_mult(tbl, mu, phi).norm2(), phi.norm2(), 1e-13);
  }
}

TEST(CliffordMult, AnticommutatorOfInnerProducts) {
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const SpinorPlus phi = random_spinor(rng);
    for (int mu = 0; mu < kDim; ++mu)
      for (int nu = 0; nu < kDim; ++nu) {
        const SpinorMinus a = clifford_mult(tbl, mu, phi);
        const SpinorMinus b = clifford_mult(tbl, nu, phi);
        const cplx s = inner(a, b) + inner(b, a);
        EXPECT_NEAR(std::abs(s - cplx(mu == nu ? 2.0 * phi.norm2() : 0.0)), 0.0, 1e-13);
      }
  }
}

TEST(CliffordMult, AdjointPairing) {
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const SpinorPlus phi = random_spinor(rng);
    const SpinorPlus t = random_spinor(rng);
    SpinorMinus psi;
    psi.c = t.c;
    for (int mu = 0; mu < kDim; ++mu)
      EXPECT_NEAR(std::abs(inner(clifford_mult(tbl, mu, phi), psi) - inner(phi, clifford_mult_adjoint(tbl, mu, psi))),
                  0.0, 1e-13);
  }
}

TEST(CliffordMult, DirectionOutOfRangeThrows) {
  EXPECT_THROW(clifford_mult(standard_table(), 4, SpinorPlus{}), std::out_of_range);
  EXPECT_THROW(clifford_mult(standard_table(), -1, SpinorPlus{}), std::out_of_range);
  EXPECT_THROW(clifford_mult_adjoint(standard_table(), 4, SpinorMinus{}), std::out_of_range);
}

TEST(QuadraticForm, ZeroSpinor) {
  for (double v : quadratic_form(standard_table(), SpinorPlus{})) EXPECT_EQ(v, 0.0);
}

TEST(QuadraticForm, NormIsQuarticOverEight) {
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const SpinorPlus phi = random_spinor(rng);
    const double target = phi.norm2() * phi.norm2() / 8.0;
    EXPECT_NEAR(fiber_norm2(quadratic_form(tbl, phi)), target, 1e-12 * target);
  }
}

TEST(QuadraticForm, SelfDual) {
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const SpinorPlus phi = random_spinor(rng);
    const PlaneFiber q = quadratic_form(tbl, phi);
    const PlaneFiber s = star_fiber(q);
    for (int p = 0; p < kPlanes; ++p) EXPECT_LE(std::abs(q[p] - s[p]), 1e-14 * phi.norm2());
  }
}

TEST(QuadraticForm, ScalesWithModulusSquared) {
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(6);
  const SpinorPlus phi = random_spinor(rng);
  const cplx lambda(0.7, -1.3);
  const PlaneFiber a = quadratic_form(tbl, lambda * phi);
  const PlaneFiber b = quadratic_form(tbl, phi);
  for (int p = 0; p < kPlanes; ++p) EXPECT_NEAR(a[p], std::norm(lambda) * b[p], 1e-13);
}

TEST(SelfDualAction, ZeroForm) {
  std::mt19937_64 rng(7);
  const SpinorPlus r = selfdual_action(standard_table(), PlaneFiber{}, random_spinor(rng));
  EXPECT_EQ(r.norm2(), 0.0);
}

TEST(SelfDualAction, TimesIIsHermitian) {
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 20; ++k) {
    PlaneFiber w;
    for (double& v : w) v = n01(rng);
    w = selfdual_fiber(w);
    const SpinorPlus phi = random_spinor(rng);
    const SpinorPlus psi = random_spinor(rng);
    const cplx lhs = inner(I * selfdual_action(tbl, w, phi), psi);
    const cplx rhs = inner(phi, I * selfdual_action(tbl, w, psi));
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-13);
    EXPECT_NEAR(inner(I * selfdual_action(tbl, w, phi), phi).imag(), 0.0, 1e-13);
  }
}

TEST(SelfDualAction, PairingWithQuadraticForm) {
  // i <sum sigma_{mu nu} B_{mu nu} phi, phi> = 4 |sigma|^2 = |phi|^4 / 2
  const CliffordTable& tbl = standard_table();
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const SpinorPlus phi = random_spinor(rng);
    const PlaneFiber q = quadratic_form(tbl, phi);
    const cplx v = I * inner(selfdual_action(tbl, q, phi), phi);
    const double r4 = phi.norm2() * phi.norm2();
    EXPECT_NEAR(v.real(), 4.0 * fiber_norm2(q), 1e-12 * r4);
    EXPECT_NEAR(v.real(), r4 / 2.0, 1e-12 * r4);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12 * r4);
  }
}

TEST(SelfDualAction, RejectsAntiSelfDualInput) {
  PlaneFiber w{};
  w[plane_index(0, 1)] = 1.0;
  w[plane_index(2, 3)] = -1.0;
  std::mt19937_64 rng(10);
  EXPECT_THROW(selfdual_action(standard_table(), w, random_spinor(rng)), std::invalid_argument);
  EXPECT_NO_THROW(two_form_action(standard_table(), w, random_spinor(rng)));
}

TEST(SelfDualAction, AntiSelfDualPartActsTrivially) {
  PlaneFiber w{};
  w[plane_index(0, 2)] = 1.0;
  w[plane_index(1, 3)] = 1.0;
  std::mt19937_64 rng(11);
  EXPECT_LE(two_form_action(standard_table(), w, random_spinor(rng)).norm2(), 1e-28);
}

TEST(CliffordTable, RotatedTableGivesSameEnergies) {
  // sigma'_mu = V sigma_mu with V unitary satisfies the same relations and
  // leaves every bivector unchanged.
  const auto t = pauli();
  const double a = 0.4;
  const Mat2 V = cplx(std::cos(a)) * Mat2::identity() + cplx(0.0, std::sin(a)) * t[1];
  std::array<Mat2, kDim> s;
  for (int mu = 0; mu < kDim; ++mu) s[mu] = V * standard_table().sigma(mu);
  const CliffordTable rotated(s);
  EXPECT_LE(rotated.clifford_defect(), 1e-15);

  const Lattice lat = cube(3);
  const Configuration cfg = random_configuration(lat, 12, {0.5, 1.0});
  const double e0 = energy_first_order(cfg);
  EXPECT_NEAR(energy_first_order(cfg, rotated), e0, 1e-12 * e0);
}

TEST(CliffordTable, CorruptedTableIsDetected) {
  EXPECT_GT(corrupted_table().clifford_defect(), 1.0);
  EXPECT_FALSE(check_clifford_relations(corrupted_table()).passed);
}
