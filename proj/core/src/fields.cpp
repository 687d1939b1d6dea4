#include "swflow/fields.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace swflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  // (-pi, pi]
  t = std::remainder(t, kTwoPi);
  if (t <= -std::numbers::pi) t += kTwoPi;
  return t;
}

void validate_flux(const Lattice& lat, const FluxMatrix& flux) {
  for (int mu = 0; mu < kDim; ++mu) {
    if (flux[mu][mu] != 0) throw std::invalid_argument("flux matrix must have zero diagonal");
    for (int nu = 0; nu < kDim; ++nu)
      if (flux[mu][nu] != -flux[nu][mu]) throw std::invalid_argument("flux matrix must be antisymmetric");
  }
  for (const auto& [mu, nu] : kPlaneDirs) {
    const double per_plaquette = kTwoPi * flux[mu][nu] / (lat.dim(mu) * lat.dim(nu));
    if (std::abs(per_plaquette) >= std::numbers::pi)
      throw std::invalid_argument("flux too large for the lattice: plaquette angle reaches pi");
  }
}

}  // namespace

cplx sobolev12_inner(const Lattice& lat, const SpinorField& u, const SpinorField& v) {
  const double h = lat.spacing();
  cplx grad = 0.0;
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int mu = 0; mu < kDim; ++mu) {
      const std::size_t y = lat.fwd(x, mu);
      grad += inner(u[y] - u[x], v[y] - v[x]) / (h * h);
    }
  return l2_inner(lat, u, v) + lat.cell_volume() * grad;
}

FluxBackground build_flux_background(const Lattice& lat, const FluxMatrix& flux) {
  validate_flux(lat, flux);
  FluxBackground bg{OneForm(lat), TwoForm(lat)};
  for (std::size_t x = 0; x < lat.sites(); ++x) {
    const Coord c = lat.coord(x);
    for (const auto& [mu, nu] : kPlaneDirs) {
      const int n = flux[mu][nu];
      if (n == 0) continue;
      const double nm = lat.dim(mu);
      const double nn = lat.dim(nu);
      // Uniform field in the bulk; the jump on the wrapping mu-link closes
      // the twisted boundary condition.
      bg.link_phase(x, nu) += kTwoPi * n * c[mu] / (nm * nn);
      if (c[mu] == lat.dim(mu) - 1) bg.link_phase(x, mu) -= kTwoPi * n * c[nu] / nn;
    }
  }
  const double inv_h2 = 1.0 / (lat.spacing() * lat.spacing());
  const OneForm& t = bg.link_phase;
  for (std::size_t x = 0; x < lat.sites(); ++x)
    for (int p = 0; p < kPlanes; ++p) {
      const int mu = kPlaneDirs[p][0];
      const int nu = kPlaneDirs[p][1];
      const double angle = t(x, mu) + t(lat.fwd(x, mu), nu) - t(lat.fwd(x, nu), mu) - t(x, nu);
      bg.curvature(x, p) = wrap_angle(angle) * inv_h2;
    }
  return bg;
}

double GaugeTransform::phase(const Lattice& lat, std::size_t site) const {
  const Coord c = lat.coord(site);
  double t = zeta(site);
  for (int mu = 0; mu < kDim; ++mu) t += kTwoPi * winding[mu] * c[mu] / lat.dim(mu);
  return t;
}

GaugeTransform GaugeTransform::inverse() const {
  GaugeTransform g{zeta, {}};
  g.zeta *= -1.0;
  for (int mu = 0; mu < kDim; ++mu) g.winding[mu] = -winding[mu];
  return g;
}

GaugeTransform compose(const GaugeTransform& g1, const GaugeTransform& g2) {
  GaugeTransform g{g1.zeta + g2.zeta, {}};
  for (int mu = 0; mu < kDim; ++mu) g.winding[mu] = g1.winding[mu] + g2.winding[mu];
  return g;
}

Configuration::Configuration(const Lattice& lat, const FluxMatrix& flux)
    : Configuration(std::make_shared<const Lattice>(lat), flux) {}

Configuration::Configuration(std::shared_ptr<const Lattice> lat, const FluxMatrix& flux)
    : lat_(std::move(lat)),
      gauge_{OneForm(*lat_), flux},
      background_(std::make_shared<const FluxBackground>(build_flux_background(*lat_, flux))),
      phi_(*lat_),
      s_(*lat_) {}

void require_same_lattice(const Configuration& c1, const Configuration& c2) {
  if (!(c1.lattice() == c2.lattice())) throw std::invalid_argument("configurations live on different lattices");
}

Configuration apply_gauge(const GaugeTransform& g, const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  require_on(lat, g.zeta);
  Configuration out = cfg;
  out.a() += d0(lat, g.zeta);
  for (int mu = 0; mu < kDim; ++mu) {
    if (g.winding[mu] == 0) continue;
    const double shift = kTwoPi * g.winding[mu] / lat.length(mu);
    for (std::size_t x = 0; x < lat.sites(); ++x) out.a()(x, mu) += shift;
  }
  for (std::size_t x = 0; x < lat.sites(); ++x)
    out.phi()[x] *= std::polar(1.0, -g.phase(lat, x));
  return out;
}

Configuration random_configuration(const Lattice& lat, std::uint64_t seed, Amplitudes amp,
                                   const FluxMatrix& flux) {
  if (amp.a < 0.0 || amp.phi < 0.0) throw std::invalid_argument("amplitudes must be non-negative");
  Configuration cfg(lat, flux);
  cfg.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& v : cfg.a().values()) v = amp.a * u(rng);
  for (SpinorPlus& s : cfg.phi().values())
    for (int c = 0; c < 2; ++c) {
      const double re = u(rng);
      const double im = u(rng);
      s[c] = amp.phi * cplx(re, im);
    }
  return cfg;
}

namespace {

void put_real(std::ostream& os, double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot serialize non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

template <class Range, class Get>
void put_array(std::ostream& os, const Range& r, Get get) {
  os << '[';
  bool first = true;
  for (const auto& v : r) {
    if (!first) os << ',';
    first = false;
    put_real(os, get(v));
  }
  os << ']';
}

std::vector<double> read_reals(const nlohmann::json& j, const char* key, std::size_t expected) {
  if (!j.contains(key) || !j[key].is_array()) throw FormatError(std::string("missing array '") + key + "'");
  const auto& arr = j[key];
  if (arr.size() != expected)
    throw FormatError(std::string("array '") + key + "' has length " + std::to_string(arr.size()) +
                      ", expected " + std::to_string(expected));
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : arr) {
    if (!v.is_number()) throw FormatError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string to_json(const Configuration& cfg) {
  const Lattice& lat = cfg.lattice();
  std::ostringstream os;
  os << "{\"version\":" << kFileVersion << ",\"dims\":[";
  for (int mu = 0; mu < kDim; ++mu) os << (mu ? "," : "") << lat.dim(mu);
  os << "],\"spacing\":";
  put_real(os, lat.spacing());
  os << ",\"flux\":[";
  for (int mu = 0; mu < kDim; ++mu) {
    os << (mu ? "," : "") << '[';
    for (int nu = 0; nu < kDim; ++nu) os << (nu ? "," : "") << cfg.flux()[mu][nu];
    os << ']';
  }
  os << "],\n\"a\":";
  put_array(os, cfg.a().values(), [](double v) { return v; });
  std::vector<double> re;
  std::vector<double> im;
  for (const SpinorPlus& s : cfg.phi().values())
    for (int c = 0; c < 2; ++c) {
      re.push_back(s[c].real());
      im.push_back(s[c].imag());
    }
  os << ",\n\"phi_re\":";
  put_array(os, re, [](double v) { return v; });
  os << ",\n\"phi_im\":";
  put_array(os, im, [](double v) { return v; });
  os << ",\n\"s\":";
  put_array(os, cfg.s().values(), [](double v) { return v; });
  os << ",\n\"seed\":";
  if (cfg.seed) os << *cfg.seed;
  else os << "null";
  os << "}\n";
  return os.str();
}

Configuration from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed configuration file: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("configuration file must be a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw FormatError("missing integer 'version'");
  if (j["version"].get<int>() != kFileVersion)
    throw FormatError("unsupported configuration version " + j["version"].dump());

  Coord dims{};
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != kDim)
    throw FormatError("'dims' must be an array of 4 integers");
  for (int mu = 0; mu < kDim; ++mu) {
    if (!j["dims"][mu].is_number_integer()) throw FormatError("'dims' must hold integers");
    dims[mu] = j["dims"][mu].get<int>();
  }
  if (!j.contains("spacing") || !j["spacing"].is_number()) throw FormatError("missing 'spacing'");

  FluxMatrix flux{};
  if (!j.contains("flux") || !j["flux"].is_array() || j["flux"].size() != kDim)
    throw FormatError("'flux' must be a 4x4 integer array");
  for (int mu = 0; mu < kDim; ++mu) {
    const auto& row = j["flux"][mu];
    if (!row.is_array() || row.size() != kDim) throw FormatError("'flux' must be a 4x4 integer array");
    for (int nu = 0; nu < kDim; ++nu) {
      if (!row[nu].is_number_integer()) throw FormatError("'flux' entries must be integers");
      flux[mu][nu] = row[nu].get<int>();
    }
  }

  try {
    const Lattice lat(dims, j["spacing"].get<double>());
    Configuration cfg(lat, flux);
    const std::size_t n = lat.sites();
    cfg.a() = OneForm(lat, read_reals(j, "a", kDim * n));
    const auto re = read_reals(j, "phi_re", 2 * n);
    const auto im = read_reals(j, "phi_im", 2 * n);
    for (std::size_t x = 0; x < n; ++x)
      for (int c = 0; c < 2; ++c) cfg.phi()[x][c] = cplx(re[2 * x + c], im[2 * x + c]);
    cfg.s() = ScalarField(lat, read_reals(j, "s", n));
    if (j.contains("seed") && !j["seed"].is_null()) {
      if (!j["seed"].is_number_unsigned()) throw FormatError("'seed' must be a non-negative integer or null");
      cfg.seed = j["seed"].get<std::uint64_t>();
    }
    return cfg;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid configuration: ") + e.what());
  }
}

void save(const Configuration& cfg, const std::filesystem::path& path) {
  const std::string text = to_json(cfg);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Configuration load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace swflow
