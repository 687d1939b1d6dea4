#pragma once

#include "swflow/checks.hpp"
#include "swflow/optimize.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swflow::cli {

/// Bad or unreadable experiment configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Coord dims{};
  double spacing = 1.0;
  FluxMatrix flux{};
  std::string scalar_curvature = "constant:0";
  std::optional<std::vector<double>> s_values;  // per-site override
  std::uint64_t seed = 0;
  Amplitudes amplitudes;
  std::optional<double> phi_linf;  // rescale phi0 to this sup norm
  MinimizeParams minimize;
  std::filesystem::path output_dir = "swflow_out";
  std::string echo;  // the parsed document, re-serialized
};

ExperimentConfig parse_experiment(const std::string& text);
ExperimentConfig load_experiment(const std::filesystem::path& path);

/// "constant:<v>" or "bump:<v>,<radius>" (Gaussian v exp(-r^2/radius^2)
/// around the lattice centre, minimum-image distance).
ScalarField scalar_curvature_profile(const Lattice& lat, const std::string& spec);

Configuration initial_configuration(const ExperimentConfig& ec);

inline const char* kHistoryHeader =
    "iter,energy,grad_norm,phi_linf,excess_measure,radial_excess,gauge_step_distance";

void write_history(const Trajectory& traj, std::ostream& os);

// Exit codes: 0 success, 1 failure at run time, 2 bad input.
int cmd_run(const std::filesystem::path& config_path, std::ostream& out,
            const std::optional<std::filesystem::path>& output_override = {});
int cmd_check(CheckLevel level, const CliffordTable& tbl, std::ostream& out);
int cmd_gaugefix(const std::filesystem::path& in, const std::filesystem::path& out_path, std::ostream& out);

int run_main(int argc, char** argv);

}  // namespace swflow::cli
