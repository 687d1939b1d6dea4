#include "helpers.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>

using namespace swflow;
using swflow::testing::max_diff;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

FluxMatrix flux12(int n) {
  FluxMatrix f{};
  f[0][1] = n;
  f[1][0] = -n;
  return f;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("swflow_test_" + name);
}

void expect_same(const Configuration& a, const Configuration& b) {
  EXPECT_TRUE(a.lattice() == b.lattice());
  EXPECT_EQ(a.flux(), b.flux());
  EXPECT_EQ(a.a(), b.a());
  EXPECT_EQ(a.phi(), b.phi());
  EXPECT_EQ(a.s(), b.s());
  EXPECT_EQ(a.seed, b.seed);
}

}  // namespace

TEST(ApplyGauge, IdentityLeavesConfigurationUnchanged) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 1, {1.0, 1.0}, flux12(1));
  expect_same(apply_gauge(GaugeTransform::identity(lat), c), c);
}

TEST(ApplyGauge, PureWindingShiftsByConstant) {
  const Lattice lat({4, 3, 3, 3}, 0.6);
  const Configuration c = random_configuration(lat, 2, {1.0, 1.0});
  GaugeTransform g = GaugeTransform::identity(lat);
  g.winding = {1, 0, 0, 0};
  const Configuration d = apply_gauge(g, c);
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    EXPECT_NEAR(d.a()(x, 0) - c.a()(x, 0), kTwoPi / (4 * 0.6), 1e-14);
    for (int mu = 1; mu < kDim; ++mu) EXPECT_EQ(d.a()(x, mu), c.a()(x, mu));
    EXPECT_NEAR(d.phi()[x].norm2(), c.phi()[x].norm2(), 1e-14);
  }
}

TEST(ApplyGauge, CompositionAddsPhasesAndWindings) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 3, {1.0, 1.0}, flux12(1));
  const GaugeTransform g1 = random_gauge_transform(lat, 31);
  const GaugeTransform g2 = random_gauge_transform(lat, 32);
  const Configuration lhs = apply_gauge(g2, apply_gauge(g1, c));
  const Configuration rhs = apply_gauge(compose(g1, g2), c);
  for (std::size_t i = 0; i < lhs.a().size(); ++i) EXPECT_NEAR(lhs.a()[i], rhs.a()[i], 1e-12);
  EXPECT_LE(max_diff(lhs.phi(), rhs.phi()), 1e-12);
}

TEST(ApplyGauge, GroupLaws) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 4, {1.0, 1.0});
  for (int k = 0; k < 5; ++k) {
    const GaugeTransform g1 = random_gauge_transform(lat, 40 + 3 * k);
    const GaugeTransform g2 = random_gauge_transform(lat, 41 + 3 * k);
    const GaugeTransform g3 = random_gauge_transform(lat, 42 + 3 * k);
    const Configuration l = apply_gauge(compose(compose(g1, g2), g3), c);
    const Configuration r = apply_gauge(compose(g1, compose(g2, g3)), c);
    for (std::size_t i = 0; i < l.a().size(); ++i) EXPECT_NEAR(l.a()[i], r.a()[i], 1e-12);
    EXPECT_LE(max_diff(l.phi(), r.phi()), 1e-12);
    const Configuration back = apply_gauge(g1.inverse(), apply_gauge(g1, c));
    for (std::size_t i = 0; i < back.a().size(); ++i) EXPECT_NEAR(back.a()[i], c.a()[i], 1e-12);
    EXPECT_LE(max_diff(back.phi(), c.phi()), 1e-12);
  }
}

TEST(ApplyGauge, PreservesModulusCurvatureAndFlux) {
  const Lattice lat = cube(4);
  const Configuration c = random_configuration(lat, 5, {1.0, 1.0}, flux12(1));
  const Configuration d = apply_gauge(random_gauge_transform(lat, 50), c);
  EXPECT_EQ(d.flux(), c.flux());
  for (std::size_t x = 0; x < lat.sites(); ++x) EXPECT_NEAR(d.phi()[x].norm2(), c.phi()[x].norm2(), 1e-13);
  const TwoForm F0 = d1(lat, c.a());
  const TwoForm F1 = d1(lat, d.a());
  for (std::size_t i = 0; i < F0.size(); ++i) EXPECT_NEAR(F0[i], F1[i], 1e-12);
}

TEST(ApplyGauge, RejectsTransformFromOtherLattice) {
  const Configuration c(cube(3));
  EXPECT_THROW(apply_gauge(GaugeTransform::identity(cube(2)), c), std::invalid_argument);
}

TEST(FluxBackground, ZeroFluxHasNoBackground) {
  const Lattice lat = cube(3);
  const FluxBackground bg = build_flux_background(lat, FluxMatrix{});
  for (double v : bg.link_phase.values()) EXPECT_EQ(v, 0.0);
  for (double v : bg.curvature.values()) EXPECT_EQ(v, 0.0);
}

TEST(FluxBackground, UnitFluxSumsToTwoPiPerSlice) {
  const Lattice lat = cube(4);
  const FluxBackground bg = build_flux_background(lat, flux12(1));
  const int p = plane_index(0, 1);
  for (int x3 = 0; x3 < 4; ++x3)
    for (int x4 = 0; x4 < 4; ++x4) {
      double sum = 0.0;
      for (int x1 = 0; x1 < 4; ++x1)
        for (int x2 = 0; x2 < 4; ++x2) sum += bg.curvature(lat.index({x1, x2, x3, x4}), p);
      EXPECT_NEAR(sum * lat.spacing() * lat.spacing(), kTwoPi, 1e-10);
    }
}

TEST(FluxBackground, CurvatureIsUniform) {
  const Lattice lat({4, 3, 2, 2}, 0.5);
  const FluxBackground bg = build_flux_background(lat, flux12(1));
  const double expected = kTwoPi / (4 * 3 * 0.25);
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int p = 0; p < kPlanes; ++p)
      EXPECT_NEAR(bg.curvature(x, p), p == plane_index(0, 1) ? expected : 0.0, 1e-12);
}

TEST(FluxBackground, HigherFluxAndOtherPlanes) {
  const Lattice lat = cube(4);
  EXPECT_TRUE(check_flux_quantization(lat, 3, 1).passed);
  FluxMatrix f{};
  f[1][3] = -2;
  f[3][1] = 2;
  const FluxBackground bg = build_flux_background(lat, f);
  for (std::size_t x = 0; x < lat.sites(); ++x)
    EXPECT_NEAR(bg.curvature(x, plane_index(1, 3)), -2 * kTwoPi / 16, 1e-12);
}

TEST(FluxBackground, RejectsInvalidMatrices) {
  const Lattice lat = cube(4);
  FluxMatrix bad{};
  bad[0][1] = 1;
  EXPECT_THROW(build_flux_background(lat, bad), std::invalid_argument);
  FluxMatrix diag{};
  diag[2][2] = 1;
  EXPECT_THROW(build_flux_background(lat, diag), std::invalid_argument);
  EXPECT_THROW(build_flux_background(cube(2), flux12(2)), std::invalid_argument);
}

TEST(RandomConfiguration, ZeroAmplitudesGiveZeroFields) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 9, {0.0, 0.0});
  for (double v : c.a().values()) EXPECT_EQ(v, 0.0);
  for (const SpinorPlus& s : c.phi().values()) EXPECT_EQ(s.norm2(), 0.0);
}

TEST(RandomConfiguration, DeterministicPerSeed) {
  const Lattice lat = cube(3);
  expect_same(random_configuration(lat, 77, {0.3, 2.0}), random_configuration(lat, 77, {0.3, 2.0}));
  EXPECT_NE(random_configuration(lat, 77, {0.3, 2.0}).a(), random_configuration(lat, 78, {0.3, 2.0}).a());
}

TEST(RandomConfiguration, RespectsAmplitudes) {
  const Lattice lat = cube(3);
  const Configuration c = random_configuration(lat, 8, {0.25, 0.5});
  for (double v : c.a().values()) EXPECT_LE(std::abs(v), 0.25);
  for (const SpinorPlus& s : c.phi().values())
    for (int k = 0; k < 2; ++k) {
      EXPECT_LE(std::abs(s[k].real()), 0.5);
      EXPECT_LE(std::abs(s[k].imag()), 0.5);
    }
  EXPECT_THROW(random_configuration(lat, 1, {-1.0, 0.0}), std::invalid_argument);
}

TEST(Serialization, RoundTripIsExact) {
  const Lattice lat({3, 2, 4, 2}, 0.37);
  FluxMatrix f{};
  f[0][2] = 1;
  f[2][0] = -1;
  Configuration c = random_configuration(lat, 123, {1.7, 0.9}, f);
  c.s() = random_scalar(lat, 5, 3.0);
  const auto path = temp_file("roundtrip.json");
  save(c, path);
  expect_same(load(path), c);
  std::filesystem::remove(path);

  Configuration no_seed(lat);
  expect_same(from_json(to_json(no_seed)), no_seed);
}

TEST(Serialization, DocumentLayout) {
  const Lattice lat = cube(2);
  Configuration c(lat);
  c.a()(1, 2) = 0.5;
  c.phi()[3][1] = cplx(0.25, -0.75);
  const nlohmann::json j = nlohmann::json::parse(to_json(c));
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["a"].size(), 4 * lat.sites());
  EXPECT_EQ(j["a"][4 * 1 + 2], 0.5);
  EXPECT_EQ(j["phi_re"][2 * 3 + 1], 0.25);
  EXPECT_EQ(j["phi_im"][2 * 3 + 1], -0.75);
  EXPECT_EQ(j["s"].size(), lat.sites());
  EXPECT_TRUE(j["seed"].is_null());
}

TEST(Serialization, RejectsBadDocuments) {
  EXPECT_THROW(from_json("not json"), FormatError);
  EXPECT_THROW(from_json("[1,2]"), FormatError);
  const Lattice lat = cube(2);
  nlohmann::json j = nlohmann::json::parse(to_json(Configuration(lat)));
  auto broken = j;
  broken["version"] = 2;
  EXPECT_THROW(from_json(broken.dump()), FormatError);
  broken = j;
  broken["a"].erase(0);
  EXPECT_THROW(from_json(broken.dump()), FormatError);
  broken = j;
  broken["dims"] = {2, 2, 2};
  EXPECT_THROW(from_json(broken.dump()), FormatError);
  broken = j;
  broken["flux"][0][1] = 1;
  EXPECT_THROW(from_json(broken.dump()), FormatError);
  broken = j;
  broken["spacing"] = -1.0;
  EXPECT_THROW(from_json(broken.dump()), FormatError);
  EXPECT_THROW(load(temp_file("does_not_exist.json")), std::runtime_error);
}

TEST(SpinorNorms, SobolevInnerMatchesNorm) {
  const Lattice lat = cube(3, 0.8);
  const Configuration c = random_configuration(lat, 10, {0.0, 1.0});
  const cplx z = sobolev12_inner(lat, c.phi(), c.phi());
  EXPECT_NEAR(z.real(), std::pow(sobolev12_norm(lat, c.phi()), 2), 1e-12);
  EXPECT_NEAR(z.imag(), 0.0, 1e-12);
  SpinorField w = c.phi();
  w *= cplx(0.0, 2.0);
  const cplx y = sobolev12_inner(lat, w, c.phi());
  EXPECT_NEAR(std::abs(y - cplx(0.0, 2.0) * z), 0.0, 1e-11);
}

TEST(SpinorNorms, ConstantSpinor) {
  const Lattice lat = cube(3, 0.5);
  SpinorField u(lat);
  for (SpinorPlus& s : u.values()) s[0] = cplx(0.6, 0.8);
  const double vol = lat.volume();
  EXPECT_NEAR(l2_norm(lat, u), std::sqrt(vol), 1e-13);
  EXPECT_NEAR(l4_norm(lat, u), std::pow(vol, 0.25), 1e-13);
  EXPECT_NEAR(linf_norm(lat, u), 1.0, 1e-15);
  EXPECT_NEAR(sobolev12_norm(lat, u), std::sqrt(vol), 1e-13);
}
