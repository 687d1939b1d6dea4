#include "helpers.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace swflow;
using swflow::testing::max_abs;
using swflow::testing::max_diff;

namespace {

const double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * kPi;

FluxMatrix flux12(int n) {
  FluxMatrix f{};
  f[0][1] = n;
  f[1][0] = -n;
  return f;
}

Configuration with_constant_link(const Lattice& lat, int mu, double value) {
  Configuration c = random_configuration(lat, 1, {0.0, 1.0});
  for (std::size_t x = 0; x < lat.sites(); ++x) c.a()(x, mu) = value;
  return c;
}

}  // namespace

TEST(ComponentFix, RemovesWholeWinding) {
  const Lattice lat({4, 3, 3, 3}, 0.5);
  const double unit = kTwoPi / lat.length(0);
  auto [fixed, rep] = component_fix(with_constant_link(lat, 0, unit));
  EXPECT_EQ(rep.winding[0], 1);
  EXPECT_NEAR(rep.harmonic[0], 0.0, 1e-13);
  EXPECT_LE(max_abs(fixed.a()), 1e-13);
}

TEST(ComponentFix, RoundsToNearestWinding) {
  const Lattice lat({4, 3, 3, 3}, 0.5);
  const double unit = kTwoPi / lat.length(0);
  auto [fixed, rep] = component_fix(with_constant_link(lat, 0, 3.7 * unit));
  EXPECT_EQ(rep.winding[0], 4);
  EXPECT_NEAR(rep.harmonic[0], -0.3 * unit, 1e-12);
  for (int mu = 1; mu < kDim; ++mu) EXPECT_EQ(rep.winding[mu], 0);
  auto [neg, nrep] = component_fix(with_constant_link(lat, 2, -1.2 * kTwoPi / lat.length(2)));
  EXPECT_EQ(nrep.winding[2], -1);
  EXPECT_NEAR(nrep.harmonic[2], -0.2 * kTwoPi / lat.length(2), 1e-12);
}

TEST(ComponentFix, HalfOpenDomainAtTies) {
  // pi / L maps to -pi / L; -pi / L stays.
  const Lattice lat = cube(4);
  const double half = kPi / lat.length(1);
  auto [up, rup] = component_fix(with_constant_link(lat, 1, half));
  EXPECT_EQ(rup.winding[1], 1);
  EXPECT_NEAR(rup.harmonic[1], -half, 1e-13);
  auto [down, rdown] = component_fix(with_constant_link(lat, 1, -half));
  EXPECT_EQ(rdown.winding[1], 0);
  EXPECT_NEAR(rdown.harmonic[1], -half, 1e-13);
}

TEST(ComponentFix, SpinorFollowsTheWinding) {
  const Lattice lat = cube(3);
  const Configuration c = with_constant_link(lat, 3, 2.0 * kTwoPi / lat.length(3));
  auto [fixed, rep] = component_fix(c);
  EXPECT_NEAR(energy_weitzenbock(fixed), energy_weitzenbock(c), 1e-10);
  const Configuration again = apply_gauge(rep.applied(), c);
  EXPECT_LE(max_diff(again.phi(), fixed.phi()), 1e-14);
}

TEST(CoulombFix, ResidualAndHarmonicDomain) {
  for (int n : {3, 4}) {
    const Lattice lat = cube(n, 0.8);
    EXPECT_TRUE(check_coulomb_residual(lat, 4, 2).passed);
    EXPECT_TRUE(check_harmonic_domain(lat, 4, 3).passed);
  }
}

TEST(CoulombFix, KeepsHarmonicPartAndCurvature) {
  const Lattice lat({3, 4, 3, 2}, 0.7);
  const Configuration c = random_configuration(lat, 4, {2.0, 1.0}, flux12(1));
  auto [fixed, rep] = coulomb_fix(c);
  EXPECT_LE(rep.residual, 1e-8);
  EXPECT_NEAR(mean(rep.zeta), 0.0, 1e-12);
  for (int mu = 0; mu < kDim; ++mu) {
    double m = 0.0;
    for (std::size_t x = 0; x < lat.sites(); ++x) m += c.a()(x, mu);
    EXPECT_NEAR(rep.harmonic[mu], m / lat.sites(), 1e-12);
  }
  const TwoForm F0 = curvature(c);
  const TwoForm F1 = curvature(fixed);
  for (std::size_t i = 0; i < F0.size(); ++i) EXPECT_NEAR(F0[i], F1[i], 1e-11);
}

TEST(CoulombFix, SolverChoiceAgrees) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 5, {1.0, 1.0});
  const auto a = coulomb_fix(c, {PoissonMethod::spectral}).first;
  const auto b = coulomb_fix(c, {PoissonMethod::conjugate_gradient, 1e-12}).first;
  for (std::size_t i = 0; i < a.a().size(); ++i) EXPECT_NEAR(a.a()[i], b.a()[i], 1e-9);
}

TEST(FullGaugeFix, PureGaugeGoesToZero) {
  const Lattice lat = cube(4, 0.6);
  Configuration vac(lat, flux12(1));
  for (SpinorPlus& s : vac.phi().values()) s = SpinorPlus{{cplx(1.0, 0.0), cplx(0.0, 0.0)}};
  const GaugeTransform g = random_gauge_transform(lat, 6);
  auto [fixed, rep] = full_gauge_fix(apply_gauge(g, vac));
  EXPECT_LE(max_abs(fixed.a()), 1e-10);
  // What remains of g is a constant phase.
  const cplx p0 = fixed.phi()[0][0];
  EXPECT_NEAR(std::abs(p0), 1.0, 1e-12);
  for (std::size_t x = 0; x < lat.sites(); ++x) EXPECT_NEAR(std::abs(fixed.phi()[x][0] - p0), 0.0, 1e-10);
  EXPECT_TRUE(check_pure_gauge(cube(3), 4, 7).passed);
}

TEST(FullGaugeFix, Idempotent) {
  const Lattice lat = cube(3, 0.9);
  const Configuration c = random_configuration(lat, 8, {3.0, 1.0}, flux12(1));
  auto [once, r1] = full_gauge_fix(c);
  auto [twice, r2] = full_gauge_fix(once);
  for (std::size_t i = 0; i < once.a().size(); ++i) EXPECT_NEAR(once.a()[i], twice.a()[i], 1e-11);
  EXPECT_LE(max_diff(once.phi(), twice.phi()), 1e-11);
  EXPECT_EQ(r2.winding, (std::array<int, kDim>{}));
  EXPECT_TRUE(check_gaugefix_idempotent(lat, 3, 9).passed);
}

TEST(FullGaugeFix, AppliedTransformReproducesResult) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 10, {4.0, 1.0});
  auto [fixed, rep] = full_gauge_fix(c);
  const Configuration again = apply_gauge(rep.applied(), c);
  for (std::size_t i = 0; i < fixed.a().size(); ++i) EXPECT_NEAR(again.a()[i], fixed.a()[i], 1e-12);
  EXPECT_LE(max_diff(again.phi(), fixed.phi()), 1e-12);
  EXPECT_NEAR(energy_weitzenbock(fixed), energy_weitzenbock(c), 1e-10 * energy_weitzenbock(c));
  for (int mu = 0; mu < kDim; ++mu) {
    EXPECT_GE(rep.harmonic[mu], -kPi / lat.length(mu) - 1e-12);
    EXPECT_LT(rep.harmonic[mu], kPi / lat.length(mu));
  }
}

TEST(GaugeDistance, VanishesOnOrbits) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 11, {1.0, 1.0}, flux12(1));
  EXPECT_NEAR(gauge_distance(c, c), 0.0, 1e-12);
  for (std::uint64_t seed = 12; seed < 15; ++seed)
    EXPECT_NEAR(gauge_distance(c, apply_gauge(random_gauge_transform(lat, seed), c)), 0.0, 1e-9);
  Configuration rotated = c;
  rotated.phi() *= std::polar(1.0, 2.1);
  EXPECT_NEAR(gauge_distance(c, rotated), 0.0, 1e-10);
}

TEST(GaugeDistance, PseudometricAxioms) {
  const Lattice lat = cube(3);
  std::vector<Configuration> cs;
  for (std::uint64_t seed = 20; seed < 24; ++seed) cs.push_back(random_configuration(lat, seed, {0.5, 1.0}));
  for (const auto& x : cs)
    for (const auto& y : cs) {
      const double dxy = gauge_distance(x, y);
      EXPECT_GE(dxy, 0.0);
      EXPECT_NEAR(dxy, gauge_distance(y, x), 1e-10 * std::max(1.0, dxy));
      for (const auto& z : cs) EXPECT_LE(gauge_distance(x, z), dxy + gauge_distance(y, z) + 1e-10);
    }
  EXPECT_GT(gauge_distance(cs[0], cs[1]), 1.0);
}

TEST(GaugeDistance, ConnectionShiftClosedForm) {
  // Two configurations differing by a constant link shift eps in one
  // direction, inside the fundamental domain: the distance is ||eps||_{1,2}.
  const Lattice lat = cube(4);
  Configuration c1(lat);
  Configuration c2(lat);
  for (std::size_t x = 0; x < lat.sites(); ++x) c2.a()(x, 1) = 0.1;
  EXPECT_NEAR(gauge_distance(c1, c2), 0.1 * std::sqrt(lat.volume()), 1e-12);
}

TEST(GaugeDistance, RejectsMismatchedInputs) {
  EXPECT_THROW(gauge_distance(Configuration(cube(3)), Configuration(cube(4))), std::invalid_argument);
  EXPECT_THROW(gauge_distance(Configuration(cube(4)), Configuration(cube(4), flux12(1))), std::invalid_argument);
}

TEST(HodgeConstants, DenseMatchesSeparable) {
  for (const Lattice& lat : {cube(2), cube(3, 0.8), Lattice({3, 4, 2, 3}, 0.5)})
    EXPECT_NEAR(hodge_gap_dense(lat), hodge_gap_separable(lat), 1e-10 * hodge_gap_separable(lat));
}

TEST(HodgeConstants, ClosedFormOnCubes) {
  const HodgeBoundConstants c3 = hodge_bound_constants(cube(3, 0.8));
  EXPECT_NEAR(c3.gap, 3.0 / 0.64, 1e-10);
  EXPECT_NEAR(c3.C, std::sqrt(1.0 + 0.64 / 3.0), 1e-10);
  EXPECT_NEAR(c3.C_prime, std::sqrt(std::pow(2.4, 4) * 4.0 * std::pow(kPi / 2.4, 2)), 1e-10);
  const HodgeBoundConstants c4 = hodge_bound_constants(cube(4));
  EXPECT_NEAR(c4.gap, 2.0, 1e-10);
  EXPECT_NEAR(c4.C, std::sqrt(1.5), 1e-10);
  EXPECT_NEAR(c4.C_prime, std::sqrt(256.0 * 4.0 * std::pow(kPi / 4.0, 2)), 1e-10);
  EXPECT_NEAR(c4.bound(1.0, 2.0), 3.0 * c4.C + c4.C_prime, 1e-12);
}

TEST(HodgeConstants, CoercivityOnSmallTori) {
  for (const Lattice& lat : {cube(3, 0.8), cube(4)}) {
    const CheckResult r = check_coercivity(lat, 8, 30);
    EXPECT_TRUE(r.passed) << format_check(r);
    EXPECT_LE(r.measured, 1.0);
  }
}
