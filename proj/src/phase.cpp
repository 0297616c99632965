#include "pathperc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathperc/parallel.hpp"
#include "pathperc/stats.hpp"

namespace pathperc {

Simulation make_replica(const ReplicaTemplate& tmpl, std::size_t n, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  GeneratorSpec spec = tmpl.initial;
  spec.node_count = n;
  SchemeConfig cfg = tmpl.scheme;
  cfg.alpha = alpha;
  Topology topo = generate(spec, rng);
  if (cfg.scheme == Scheme::Downlink && cfg.downlink_profile.size() != n) {
    if (!topo.accept_prob.empty()) {
      cfg.downlink_profile = topo.accept_prob;
    } else {
      std::vector<Point2> positions;
      positions.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = spec.disk.radius_km * std::sqrt(uniform01(rng));
        const double phi = 2.0 * M_PI * uniform01(rng);
        positions.push_back({r * std::cos(phi), r * std::sin(phi)});
      }
      cfg.downlink_profile = disk_acceptance(positions, spec.disk);
    }
  }
  return Simulation(std::move(topo.network), std::move(cfg), splitmix64(seed));
}

namespace {

struct ReplicaResult {
  double eta = 0.0;
  bool converged = false;
};

PhasePoint summarise(const GridCell& cell, const std::vector<ReplicaOutcome<ReplicaResult>>& runs,
                     std::size_t first, std::size_t count) {
  PhasePoint p;
  p.n = cell.n;
  p.alpha = cell.alpha;
  for (std::size_t r = first; r < first + count; ++r) {
    if (!runs[r].ok()) {
      ++p.failures;
      p.converged = false;
      continue;
    }
    p.replica_eta.push_back(runs[r].value->eta);
    p.converged = p.converged && runs[r].value->converged;
  }
  p.replicas = p.replica_eta.size();
  const MeanError me = mean_and_stderr(p.replica_eta);
  p.eta_mean = me.mean;
  p.eta_stderr = me.stderr_mean;
  return p;
}

}  // namespace

std::vector<PhasePoint> sweep_phase_diagram(std::span<const GridCell> grid, const ReplicaTemplate& tmpl,
                                            std::size_t replicas, std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("phase grid is empty");
  if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  const std::size_t total = grid.size() * replicas;
  auto runs = run_replicas<ReplicaResult>(total, tmpl.workers, [&](std::size_t task) {
    const std::size_t c = task / replicas;
    const std::size_t r = task % replicas;
    Simulation sim = make_replica(tmpl, grid[c].n, grid[c].alpha, derive_seed(derive_seed(seed, c), r));
    SteadyStateParams steady = tmpl.steady;
    steady.path_length_pairs = 0;
    const SteadyState st = sim.run_to_steady_state(steady);
    return ReplicaResult{st.eta_mean, st.converged};
  });
  std::vector<PhasePoint> out;
  out.reserve(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) out.push_back(summarise(grid[c], runs, c * replicas, replicas));
  return out;
}

namespace {

double interpolate_alpha(double a_lo, double eta_lo, double a_hi, double eta_hi, double target) {
  if (eta_hi == eta_lo) return 0.5 * (a_lo + a_hi);
  const double t = std::clamp((target - eta_lo) / (eta_hi - eta_lo), 0.0, 1.0);
  return a_lo + t * (a_hi - a_lo);
}

double bootstrap_mean(const std::vector<double>& xs, Rng& rng) {
  if (xs.empty()) return std::nan("");
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += xs[uniform_index(rng, xs.size())];
  return s / static_cast<double>(xs.size());
}

constexpr int kBootstrap = 400;

}  // namespace

ThresholdEstimate estimate_threshold(std::size_t n, const ReplicaTemplate& tmpl, std::size_t replicas,
                                     std::uint64_t seed, double eta_target) {
  if (!(eta_target > 0.0 && eta_target < 1.0)) throw std::invalid_argument("eta target must be in (0,1)");
  const double root_n = std::sqrt(static_cast<double>(n));
  ThresholdEstimate est;
  std::uint64_t call = 0;
  auto eval = [&](double alpha) {
    const GridCell cell{n, alpha};
    PhasePoint p = sweep_phase_diagram(std::span(&cell, 1), tmpl, replicas, derive_seed(seed, call++)).front();
    est.evaluations.push_back(p);
    return p;
  };

  PhasePoint lo = eval(0.2 * root_n);
  PhasePoint hi = eval(3.0 * root_n);
  est.bracket_ok = lo.eta_mean - 2.0 * lo.eta_stderr <= eta_target &&
                   hi.eta_mean + 2.0 * hi.eta_stderr >= eta_target;
  while (hi.alpha - lo.alpha >= 0.02 * root_n) {
    PhasePoint mid = eval(0.5 * (lo.alpha + hi.alpha));
    if (mid.eta_mean < eta_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo.eta_mean > hi.eta_mean + 2.0 * std::hypot(lo.eta_stderr, hi.eta_stderr)) est.bracket_ok = false;
  est.lo = lo.alpha;
  est.hi = hi.alpha;
  est.alpha_star = interpolate_alpha(lo.alpha, lo.eta_mean, hi.alpha, hi.eta_mean, eta_target);

  Rng rng(derive_seed(seed, ~0ULL));
  std::vector<double> boots;
  boots.reserve(kBootstrap);
  if (!lo.replica_eta.empty() && !hi.replica_eta.empty()) {
    for (int b = 0; b < kBootstrap; ++b) {
      boots.push_back(interpolate_alpha(lo.alpha, bootstrap_mean(lo.replica_eta, rng), hi.alpha,
                                        bootstrap_mean(hi.replica_eta, rng), eta_target));
    }
    const MeanError me = mean_and_stderr(boots);
    est.stderr_alpha = me.stderr_mean * std::sqrt(static_cast<double>(boots.size()));
  }
  return est;
}

bool find_upward_crossing(std::span<const double> x, std::span<const double> diff, double& x_star) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (diff[i] < 0.0 && diff[i + 1] >= 0.0) {
      const double t = diff[i] / (diff[i] - diff[i + 1]);
      x_star = x[i] + t * (x[i + 1] - x[i]);
      return true;
    }
  }
  return false;
}

CrossingEstimate estimate_crossing(std::size_t n_small, std::size_t n_large, std::span<const double> x_grid,
                                   const ReplicaTemplate& tmpl, std::size_t replicas, std::uint64_t seed) {
  if (x_grid.size() < 2) throw std::invalid_argument("crossing grid needs >= 2 points");
  std::vector<GridCell> grid;
  for (std::size_t n : {n_small, n_large}) {
    const double root_n = std::sqrt(static_cast<double>(n));
    for (double x : x_grid) grid.push_back({n, x * root_n});
  }
  const auto points = sweep_phase_diagram(grid, tmpl, replicas, seed);
  CrossingEstimate est;
  est.small.assign(points.begin(), points.begin() + x_grid.size());
  est.large.assign(points.begin() + x_grid.size(), points.end());

  std::vector<double> diff(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) diff[i] = est.large[i].eta_mean - est.small[i].eta_mean;
  est.found = find_upward_crossing(x_grid, diff, est.x_star);
  if (!est.found) return est;

  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (est.large[i].replica_eta.empty() || est.small[i].replica_eta.empty()) return est;
  }
  Rng rng(derive_seed(seed, ~0ULL));
  std::vector<double> boots;
  for (int b = 0; b < kBootstrap; ++b) {
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      diff[i] = bootstrap_mean(est.large[i].replica_eta, rng) - bootstrap_mean(est.small[i].replica_eta, rng);
    }
    double x = 0.0;
    if (find_upward_crossing(x_grid, diff, x)) boots.push_back(x);
  }
  if (boots.size() > 1) {
    const MeanError me = mean_and_stderr(boots);
    est.stderr_x = me.stderr_mean * std::sqrt(static_cast<double>(boots.size()));
  }
  return est;
}

}  // namespace pathperc
