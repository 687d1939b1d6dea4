#include "swflow/optimize.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace swflow {

void MinimizeParams::validate() const {
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be > 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw std::invalid_argument("armijo_c must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("backtrack must lie in (0,1)");
  if (!(initial_step > 0.0)) throw std::invalid_argument("initial_step must be > 0");
  if (gaugefix_every < 0) throw std::invalid_argument("gaugefix_every must be >= 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  if (max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::line_search_failure: return "line_search_failure";
  }
  return "unknown";
}

std::string to_string(Method m) { return m == Method::descent ? "descent" : "conjugate"; }

LineSearchResult line_search(const Configuration& cfg, double energy, const Gradient& grad,
                             const Gradient& dir, const MinimizeParams& params) {
  const Lattice& lat = cfg.lattice();
  const double slope = pairing(lat, grad, dir);
  if (!(slope < 0.0)) throw std::invalid_argument("line_search: direction is not a descent direction");

  LineSearchResult res{false, 0.0, energy, 0, cfg};
  double t = params.initial_step;
  if (!params.armijo_guard) {
    res.cfg = displace(cfg, dir, t);
    res.energy = energy_weitzenbock(res.cfg);
    res.step = t;
    res.trials = 1;
    res.ok = std::isfinite(res.energy);
    return res;
  }
  for (int k = 0; k < params.max_backtracks; ++k) {
    Configuration trial = displace(cfg, dir, t);
    const double e = energy_weitzenbock(trial);
    res.trials = k + 1;
    if (std::isfinite(e) && e <= energy + params.armijo_c * t * slope) {
      res.ok = true;
      res.step = t;
      res.energy = e;
      res.cfg = std::move(trial);
      return res;
    }
    // Minimizer of the quadratic through E(0), E'(0) and E(t), kept inside
    // [1e-3 t, backtrack t]. Plain halving leaves conjugate directions badly
    // scaled in stiff directions.
    double next = params.backtrack * t;
    if (std::isfinite(e)) {
      const double curv = e - energy - slope * t;
      if (curv > 0.0) next = std::clamp(-slope * t * t / (2.0 * curv), 1e-3 * t, next);
    }
    t = next;
  }
  return res;
}

LineSearchResult line_search(const Configuration& cfg, const Gradient& dir, const MinimizeParams& params) {
  return line_search(cfg, energy_weitzenbock(cfg), gradient(cfg), dir, params);
}

namespace {

void rotate(const Lattice& lat, const GaugeTransform& g, SpinorField& phi) {
  for (std::size_t x = 0; x < lat.sites(); ++x) phi[x] *= std::polar(1.0, -g.phase(lat, x));
}

TrajectoryRecord make_record(int iter, const Configuration& cfg, double energy, double grad_norm) {
  TrajectoryRecord r;
  r.iter = iter;
  r.energy = energy;
  r.grad_norm = grad_norm;
  r.phi_linf = linf_norm(cfg.lattice(), cfg.phi());
  r.excess = excess_report(cfg);
  return r;
}

Gradient negated(const Gradient& g) {
  Gradient d = g;
  d.da *= -1.0;
  d.dphi *= -1.0;
  return d;
}

}  // namespace

Trajectory minimize(const Configuration& cfg0, const MinimizeParams& params) {
  params.validate();
  const Lattice& lat = cfg0.lattice();

  std::vector<TrajectoryRecord> records;
  Termination reason = Termination::max_iters;
  Configuration cfg = cfg0;
  double energy = energy_weitzenbock(cfg);
  Gradient grad = gradient(cfg);
  double gnorm = norm(lat, grad);

  records.push_back(make_record(0, cfg, energy, gnorm));
  Configuration last_recorded = cfg;

  Gradient dir;
  Gradient prev_grad;
  bool have_dir = false;
  int iter = 0;
  for (;;) {
    if (gnorm <= params.grad_tol) {
      reason = Termination::converged;
      break;
    }
    if (iter >= params.max_iters) {
      reason = Termination::max_iters;
      break;
    }

    if (params.method == Method::conjugate && have_dir) {
      // Polak-Ribiere+, restarted when the update is not a descent direction.
      const double denom = pairing(lat, prev_grad, prev_grad);
      Gradient diff = grad;
      diff.da -= prev_grad.da;
      diff.dphi.axpy(-1.0, prev_grad.dphi);
      const double beta = denom > 0.0 ? std::max(0.0, pairing(lat, grad, diff) / denom) : 0.0;
      Gradient next = negated(grad);
      next.da.axpy(beta, dir.da);
      next.dphi.axpy(beta, dir.dphi);
      dir = pairing(lat, grad, next) < 0.0 ? std::move(next) : negated(grad);
    } else {
      dir = negated(grad);
    }

    LineSearchResult ls = line_search(cfg, energy, grad, dir, params);
    if (!ls.ok) {
      reason = Termination::line_search_failure;
      break;
    }
    cfg = std::move(ls.cfg);
    energy = ls.energy;
    ++iter;
    prev_grad = std::move(grad);
    have_dir = true;

    if (params.gaugefix_every > 0 && iter % params.gaugefix_every == 0) {
      auto [fixed, rep] = full_gauge_fix(cfg);
      const double e_fixed = energy_weitzenbock(fixed);
      if (std::abs(e_fixed - energy) > 1e-10 * std::max(1.0, std::abs(energy)))
        throw std::runtime_error("minimize: gauge fixing changed the energy by " +
                                 std::to_string(e_fixed - energy));
      // Tangent vectors follow the configuration: da is invariant, dphi rotates.
      const GaugeTransform g = rep.applied();
      rotate(lat, g, prev_grad.dphi);
      rotate(lat, g, dir.dphi);
      cfg = std::move(fixed);
      energy = e_fixed;
    }

    grad = gradient(cfg);
    gnorm = norm(lat, grad);
    if (iter % params.record_every == 0) {
      TrajectoryRecord r = make_record(iter, cfg, energy, gnorm);
      r.gauge_step_distance = gauge_distance(last_recorded, cfg);
      records.push_back(std::move(r));
      last_recorded = cfg;
    }
  }

  if (records.back().iter != iter) {
    TrajectoryRecord r = make_record(iter, cfg, energy, gnorm);
    r.gauge_step_distance = gauge_distance(last_recorded, cfg);
    records.push_back(std::move(r));
  }
  return Trajectory{std::move(records), std::move(cfg), reason, iter};
}

PsSummary ps_diagnostics(const Trajectory& traj, double excess_level) {
  if (traj.records.size() < 3) throw std::invalid_argument("ps_diagnostics: need at least 3 recorded iterates");
  PsSummary s;
  for (std::size_t i = 1; i < traj.records.size(); ++i) s.distances.push_back(traj.records[i].gauge_step_distance);

  const std::size_t n = s.distances.size();
  const std::size_t q = std::max<std::size_t>(1, n / 4);
  const auto avg = [&](std::size_t b, std::size_t e) {
    return std::accumulate(s.distances.begin() + static_cast<std::ptrdiff_t>(b),
                           s.distances.begin() + static_cast<std::ptrdiff_t>(e), 0.0) /
           static_cast<double>(e - b);
  };
  s.first_quartile_mean = avg(0, q);
  s.last_quartile_mean = avg(n - q, n);
  if (s.last_quartile_mean > 0.0) s.quartile_ratio = s.first_quartile_mean / s.last_quartile_mean;
  else s.quartile_ratio = s.first_quartile_mean > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

  const double total = std::accumulate(s.distances.begin(), s.distances.end(), 0.0);
  const double tail = std::accumulate(s.distances.begin() + static_cast<std::ptrdiff_t>(n / 2), s.distances.end(), 0.0);
  s.tail_ratio = total > 0.0 ? tail / total : 0.0;

  const bool finite = std::isfinite(total);
  s.summable = finite && (total == 0.0 || (s.tail_ratio < 0.5 && s.last_quartile_mean < s.first_quartile_mean));

  s.final_radial_excess = traj.records.back().excess.radial_excess;
  s.excess_vanishing = std::isfinite(s.final_radial_excess) && s.final_radial_excess <= excess_level;
  return s;
}

}  // namespace swflow
