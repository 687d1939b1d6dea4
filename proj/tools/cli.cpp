#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace swflow::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string secs(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// JSON has no inf/nan; those become null.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

void parse_minimize(const json& m, MinimizeParams& p) {
  if (!m.is_object()) throw ConfigError("'minimize' must be an object");
  static const char* known[] = {"max_iters", "grad_tol",       "armijo_c",     "backtrack",
                                "initial_step", "method",      "gaugefix_every", "record_every"};
  for (const auto& [k, v] : m.items()) {
    if (std::find(std::begin(known), std::end(known), k) == std::end(known))
      throw ConfigError("unknown key 'minimize." + k + "'");
  }
  p.max_iters = get(m, "max_iters", p.max_iters);
  p.grad_tol = get(m, "grad_tol", p.grad_tol);
  p.armijo_c = get(m, "armijo_c", p.armijo_c);
  p.backtrack = get(m, "backtrack", p.backtrack);
  p.initial_step = get(m, "initial_step", p.initial_step);
  p.gaugefix_every = get(m, "gaugefix_every", p.gaugefix_every);
  p.record_every = get(m, "record_every", p.record_every);
  const std::string method = get<std::string>(m, "method", to_string(p.method));
  if (method == "descent") p.method = Method::descent;
  else if (method == "conjugate") p.method = Method::conjugate;
  else throw ConfigError("minimize.method must be 'descent' or 'conjugate'");
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number in scalar curvature spec: " + what);
  }
  if (used != s.size()) throw ConfigError("bad number in scalar curvature spec: " + what);
  return v;
}

json summary_json(const ExperimentConfig& ec, const Trajectory& traj, double wall) {
  const TrajectoryRecord& last = traj.records.back();
  json j;
  j["termination"] = to_string(traj.reason);
  j["iterations"] = traj.iterations;
  j["records"] = traj.records.size();
  j["final"] = {
      {"energy", jnum(last.energy)},
      {"grad_norm", jnum(last.grad_norm)},
      {"phi_linf", jnum(last.phi_linf)},
      {"excess_measure", jnum(last.excess.excess_measure)},
      {"radial_excess", jnum(last.excess.radial_excess)},
      {"eta_norm", jnum(last.excess.eta_norm)},
      {"threshold", jnum(last.excess.threshold)},
      {"energy_first_order", jnum(energy_first_order(traj.final_cfg))},
      {"energy_lower_bound", jnum(energy_lower_bound(traj.final_cfg))},
  };
  if (traj.records.size() >= 3) {
    const PsSummary ps = ps_diagnostics(traj);
    j["ps"] = {
        {"first_quartile_mean", jnum(ps.first_quartile_mean)},
        {"last_quartile_mean", jnum(ps.last_quartile_mean)},
        {"quartile_ratio", jnum(ps.quartile_ratio)},
        {"tail_ratio", jnum(ps.tail_ratio)},
        {"summable", ps.summable},
        {"excess_vanishing", ps.excess_vanishing},
    };
  } else {
    j["ps"] = nullptr;
  }
  j["wall_time_s"] = wall;
  j["config"] = json::parse(ec.echo);
  return j;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const char* known[] = {"dims", "spacing", "flux", "scalar_curvature", "s",
                                "seed", "init",    "minimize", "output_dir"};
  for (const auto& [k, v] : j.items())
    if (std::find(std::begin(known), std::end(known), k) == std::end(known))
      throw ConfigError("unknown key '" + k + "'");

  ExperimentConfig ec;
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != kDim)
    throw ConfigError("'dims' must be an array of 4 integers");
  for (int mu = 0; mu < kDim; ++mu) {
    if (!j["dims"][mu].is_number_integer()) throw ConfigError("'dims' must hold integers");
    ec.dims[mu] = j["dims"][mu].get<int>();
    if (ec.dims[mu] < 2) throw ConfigError("every lattice dimension must be >= 2");
  }
  ec.spacing = get(j, "spacing", ec.spacing);
  if (!(ec.spacing > 0.0)) throw ConfigError("'spacing' must be positive");

  if (j.contains("flux")) {
    const json& f = j["flux"];
    if (!f.is_array() || f.size() != kDim) throw ConfigError("'flux' must be a 4x4 integer array");
    for (int mu = 0; mu < kDim; ++mu) {
      if (!f[mu].is_array() || f[mu].size() != kDim) throw ConfigError("'flux' must be a 4x4 integer array");
      for (int nu = 0; nu < kDim; ++nu) {
        if (!f[mu][nu].is_number_integer()) throw ConfigError("'flux' entries must be integers");
        ec.flux[mu][nu] = f[mu][nu].get<int>();
      }
    }
  }
  ec.scalar_curvature = get<std::string>(j, "scalar_curvature", ec.scalar_curvature);
  if (j.contains("s")) ec.s_values = get<std::vector<double>>(j, "s", {});
  ec.seed = get<std::uint64_t>(j, "seed", ec.seed);

  if (j.contains("init")) {
    const json& in = j["init"];
    if (!in.is_object()) throw ConfigError("'init' must be an object");
    ec.amplitudes.a = get(in, "a_amplitude", 0.0);
    ec.amplitudes.phi = get(in, "phi_amplitude", 0.0);
    if (in.contains("phi_linf")) ec.phi_linf = get(in, "phi_linf", 0.0);
    if (ec.amplitudes.a < 0.0 || ec.amplitudes.phi < 0.0) throw ConfigError("init amplitudes must be >= 0");
    if (ec.phi_linf && *ec.phi_linf < 0.0) throw ConfigError("init.phi_linf must be >= 0");
  }
  if (j.contains("minimize")) parse_minimize(j["minimize"], ec.minimize);
  try {
    ec.minimize.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("minimize: ") + e.what());
  }
  ec.output_dir = get<std::string>(j, "output_dir", ec.output_dir.string());
  ec.echo = j.dump();
  return ec;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_experiment(ss.str());
}

ScalarField scalar_curvature_profile(const Lattice& lat, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("scalar curvature spec needs a ':' (" + spec + ")");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  ScalarField s(lat);
  if (kind == "constant") {
    const double v = parse_number(args, spec);
    for (double& x : s.values()) x = v;
    return s;
  }
  if (kind == "bump") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw ConfigError("bump needs '<value>,<radius>' (" + spec + ")");
    const double v = parse_number(args.substr(0, comma), spec);
    const double r = parse_number(args.substr(comma + 1), spec);
    if (!(r > 0.0)) throw ConfigError("bump radius must be positive");
    for (std::size_t x = 0; x < lat.sites(); ++x) {
      const Coord c = lat.coord(x);
      double d2 = 0.0;
      for (int mu = 0; mu < kDim; ++mu) {
        const double L = lat.length(mu);
        double d = c[mu] * lat.spacing() - 0.5 * L;
        d -= L * std::round(d / L);
        d2 += d * d;
      }
      s(x) = v * std::exp(-d2 / (r * r));
    }
    return s;
  }
  throw ConfigError("unknown scalar curvature profile '" + kind + "'");
}

Configuration initial_configuration(const ExperimentConfig& ec) {
  const Lattice lat(ec.dims, ec.spacing);
  Configuration cfg = [&] {
    try {
      return random_configuration(lat, ec.seed, ec.amplitudes, ec.flux);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  if (ec.s_values) {
    if (ec.s_values->size() != lat.sites())
      throw ConfigError("'s' has " + std::to_string(ec.s_values->size()) + " entries, lattice has " +
                        std::to_string(lat.sites()) + " sites");
    cfg.s() = ScalarField(lat, *ec.s_values);
  } else {
    cfg.s() = scalar_curvature_profile(lat, ec.scalar_curvature);
  }
  if (ec.phi_linf) {
    const double m = linf_norm(lat, cfg.phi());
    if (m > 0.0) cfg.phi() *= *ec.phi_linf / m;
  }
  return cfg;
}

void write_history(const Trajectory& traj, std::ostream& os) {
  os << kHistoryHeader << '\n';
  for (const TrajectoryRecord& r : traj.records) {
    os << r.iter << ',' << num(r.energy) << ',' << num(r.grad_norm) << ',' << num(r.phi_linf) << ','
       << num(r.excess.excess_measure) << ',' << num(r.excess.radial_excess) << ','
       << num(r.gauge_step_distance) << '\n';
  }
}

int cmd_run(const std::filesystem::path& config_path, std::ostream& out,
            const std::optional<std::filesystem::path>& output_override) {
  ExperimentConfig ec;
  Configuration cfg0 = [&]() -> Configuration {
    ec = load_experiment(config_path);
    return initial_configuration(ec);
  }();
  const std::filesystem::path dir = output_override ? *output_override : ec.output_dir;

  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory traj = minimize(cfg0, ec.minimize);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::error_code ec_dir;
  std::filesystem::create_directories(dir, ec_dir);
  if (ec_dir) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec_dir.message());

  std::ostringstream hist;
  write_history(traj, hist);
  write_file(dir / "history.csv", hist.str());
  save(traj.final_cfg, dir / "final.json");
  write_file(dir / "summary.json", summary_json(ec, traj, wall).dump(2) + "\n");

  const TrajectoryRecord& last = traj.records.back();
  out << "termination=" << to_string(traj.reason) << " iterations=" << traj.iterations
      << " energy=" << num(last.energy) << " grad_norm=" << num(last.grad_norm)
      << " phi_linf=" << num(last.phi_linf) << "\n";
  out << "wrote " << dir.string() << "\n";
  return 0;
}

int cmd_check(CheckLevel level, const CliffordTable& tbl, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results = run_checks(level, tbl);
  int failed = 0;
  for (const CheckResult& r : results) {
    out << format_check(r) << "\n";
    if (!r.passed) ++failed;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
      << " (" << (level == CheckLevel::fast ? "fast" : "full") << ", " << secs(wall) << " s)\n";
  return failed == 0 ? 0 : 1;
}

int cmd_gaugefix(const std::filesystem::path& in, const std::filesystem::path& out_path, std::ostream& out) {
  const Configuration cfg = load(in);
  const auto [fixed, rep] = full_gauge_fix(cfg);
  const double e0 = energy_weitzenbock(cfg);
  const double e1 = energy_weitzenbock(fixed);
  save(fixed, out_path);

  json report;
  report["residual"] = jnum(rep.residual);
  report["winding"] = rep.winding;
  report["harmonic"] = {jnum(rep.harmonic[0]), jnum(rep.harmonic[1]), jnum(rep.harmonic[2]), jnum(rep.harmonic[3])};
  report["energy_before"] = jnum(e0);
  report["energy_after"] = jnum(e1);
  std::filesystem::path rp = out_path;
  rp.replace_extension(".report.json");
  write_file(rp, report.dump(2) + "\n");

  out << "residual=" << num(rep.residual) << " winding=[" << rep.winding[0] << "," << rep.winding[1] << ","
      << rep.winding[2] << "," << rep.winding[3] << "] energy_drift=" << num(e1 - e0) << "\n";
  return 0;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Lattice Seiberg-Witten energy minimization"};
  app.require_subcommand(1);

  std::string config;
  std::string output;
  auto* run = app.add_subcommand("run", "Minimize from an experiment config and write history/final/summary");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  run->add_option("-o,--output", output, "Override the config's output_dir");

  std::string level = "fast";
  bool corrupt = false;
  auto* check = app.add_subcommand("check", "Run the invariant suite");
  check->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  check->add_flag("--corrupt-clifford", corrupt, "Use a broken Clifford table")->group("");

  std::string in_path;
  std::string out_path;
  auto* fix = app.add_subcommand("gaugefix", "Coulomb and component gauge fixing of a configuration file");
  fix->add_option("in", in_path, "Input configuration")->required();
  fix->add_option("out", out_path, "Output configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      std::optional<std::filesystem::path> ov;
      if (!output.empty()) ov = output;
      return cmd_run(config, std::cout, ov);
    }
    if (*check)
      return cmd_check(level == "full" ? CheckLevel::full : CheckLevel::fast,
                       corrupt ? corrupted_table() : standard_table(), std::cout);
    if (*fix) return cmd_gaugefix(in_path, out_path, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "swflow: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "swflow: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "swflow: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace swflow::cli
