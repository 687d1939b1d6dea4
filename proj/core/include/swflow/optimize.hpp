#pragma once

#include "swflow/functional.hpp"
#include "swflow/gaugefix.hpp"

#include <string>
#include <vector>

namespace swflow {

enum class Method { descent, conjugate };

struct MinimizeParams {
  int max_iters = 1000;
  double grad_tol = 1e-8;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  Method method = Method::conjugate;
  int gaugefix_every = 10;  // 0 disables re-fixing
  int record_every = 1;
  int max_backtracks = 60;
  /// Test hook: when false the first trial step is accepted unconditionally.
  bool armijo_guard = true;

  void validate() const;
};

enum class Termination { converged, max_iters, line_search_failure };
std::string to_string(Termination t);
std::string to_string(Method m);

struct TrajectoryRecord {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double phi_linf = 0.0;
  ExcessReport excess;
  double gauge_step_distance = 0.0;  // to the previous record; 0 for the first
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  Configuration final_cfg;
  Termination reason = Termination::max_iters;
  int iterations = 0;
};

struct LineSearchResult {
  bool ok = false;
  double step = 0.0;
  double energy = 0.0;
  int trials = 0;
  Configuration cfg;
};

/// Armijo backtracking along dir from params.initial_step. Throws
/// std::invalid_argument when dir is not a descent direction; returns ok = false
/// after max_backtracks shrinking trials.
LineSearchResult line_search(const Configuration& cfg, const Gradient& dir, const MinimizeParams& params);
LineSearchResult line_search(const Configuration& cfg, double energy, const Gradient& grad,
                             const Gradient& dir, const MinimizeParams& params);

Trajectory minimize(const Configuration& cfg0, const MinimizeParams& params);

/// Palais-Smale style summary of a trajectory. Reports only; no thresholds
/// beyond the excess level passed in.
struct PsSummary {
  std::vector<double> distances;  // gauge_step_distance of records 1..n-1
  double first_quartile_mean = 0.0;
  double last_quartile_mean = 0.0;
  double quartile_ratio = 0.0;    // first / last (inf if last == 0 < first)
  double tail_ratio = 0.0;        // tail sum from the midpoint over the full sum
  bool summable = false;          // finite, tail shrinking, last quartile below first
  double final_radial_excess = 0.0;
  bool excess_vanishing = false;  // final radial excess <= excess_level
};

PsSummary ps_diagnostics(const Trajectory& traj, double excess_level = 1e-6);

}  // namespace swflow
