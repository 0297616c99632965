#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathperc/dynamics.hpp"
#include "pathperc/generators.hpp"

namespace pathperc {

/// Everything a steady-state replica needs except N, alpha and its seed.
struct ReplicaTemplate {
  GeneratorSpec initial;  // node_count is overwritten per cell
  SchemeConfig scheme;    // alpha is overwritten per cell
  SteadyStateParams steady;
  std::size_t workers = 1;
};

/// Builds the initial network and the scheme config for one replica. For the
/// downlink scheme without an explicit profile, node positions are drawn in
/// the disk of `initial.disk` and the profile is their acceptance.
Simulation make_replica(const ReplicaTemplate& tmpl, std::size_t n, double alpha, std::uint64_t seed);

struct GridCell {
  std::size_t n = 0;
  double alpha = 0.0;
};

struct PhasePoint {
  std::size_t n = 0;
  double alpha = 0.0;
  double eta_mean = 0.0;
  double eta_stderr = 0.0;  // across replicas
  std::size_t replicas = 0;
  bool converged = true;    // every replica reached stationarity
  std::vector<double> replica_eta;
  std::size_t failures = 0;
};

/// Steady-state availability at every (N, alpha) cell, `replicas` runs each.
/// All (cell, replica) runs share one worker pool. Replica r of cell c uses
/// derive_seed(derive_seed(seed, c), r), so results are reproducible.
std::vector<PhasePoint> sweep_phase_diagram(std::span<const GridCell> grid, const ReplicaTemplate& tmpl,
                                            std::size_t replicas, std::uint64_t seed);

struct ThresholdEstimate {
  double alpha_star = 0.0;
  double stderr_alpha = 0.0;  // bootstrap over replicas
  double lo = 0.0;
  double hi = 0.0;
  bool bracket_ok = true;
  std::vector<PhasePoint> evaluations;
};

/// Bisection on alpha for steady-state eta = eta_target inside
/// [0.2 sqrt N, 3 sqrt N], stopping once the bracket is narrower than
/// 0.02 sqrt N. The final estimate interpolates linearly between the
/// bracket ends.
ThresholdEstimate estimate_threshold(std::size_t n, const ReplicaTemplate& tmpl, std::size_t replicas,
                                     std::uint64_t seed, double eta_target = 0.5);

struct CrossingEstimate {
  double x_star = 0.0;  // alpha / sqrt(N) where the two eta curves meet
  double stderr_x = 0.0;
  bool found = false;
  std::vector<PhasePoint> small;
  std::vector<PhasePoint> large;
};

/// Crossing of eta(alpha / sqrt N) curves for two sizes on a common grid of
/// x = alpha / sqrt N. The larger system has the steeper curve, so the
/// crossing is where eta_large - eta_small turns from negative to positive.
CrossingEstimate estimate_crossing(std::size_t n_small, std::size_t n_large, std::span<const double> x_grid,
                                   const ReplicaTemplate& tmpl, std::size_t replicas, std::uint64_t seed);

/// Sign-change location of `diff` over `x`, linearly interpolated, scanning
/// from the left for the first negative-to-non-negative step. Returns false
/// when there is none.
bool find_upward_crossing(std::span<const double> x, std::span<const double> diff, double& x_star);

}  // namespace pathperc
