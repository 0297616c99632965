#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathperc/network.hpp"
#include "pathperc/observables.hpp"
#include "pathperc/paths.hpp"
#include "pathperc/random.hpp"

namespace pathperc {

enum class Scheme { CrossLinking, Downlink, Redundancy };

std::string to_string(Scheme scheme);
/// Accepts "cross", "crosslinking", "downlink", "redundancy".
Scheme parse_scheme(const std::string& name);

/// What a rejected downlink attempt does: use up the placement, or draw
/// another cross-component pair for the same placement.
enum class DownlinkRetry { Consume, Resample };

/// Link replenishment settings.
struct SchemeConfig {
  Scheme scheme = Scheme::CrossLinking;
  double alpha = 0.0;  // expected placements per step
  /// Per-node photon acceptance p_i; required for Downlink only.
  std::vector<double> downlink_profile;
  int photon_count = 50;
  DownlinkRetry downlink_retry = DownlinkRetry::Resample;

  /// Throws std::invalid_argument if the config cannot drive a network of
  /// `node_count` nodes.
  void validate(std::size_t node_count) const;
};

/// Operational definition of a steady state. Zero fields take defaults
/// scaled by N: burn-in 20N, window 10N, snapshots every N/10 steps.
struct SteadyStateParams {
  std::uint64_t burn_in = 0;
  std::uint64_t window = 0;
  double stationarity_tol = 0.01;
  std::uint64_t snapshot_every = 0;
  /// Burn-in doubles until it reaches this many steps (0: 8 x burn_in).
  std::uint64_t max_burn_in = 0;
  /// Pairs per component for l(s) sampling; 0 skips the measurement.
  std::size_t path_length_pairs = 0;

  SteadyStateParams resolved(std::size_t node_count) const;
};

struct SteadyState {
  double eta_mean = 0.0;
  double eta_stderr = 0.0;  // batch means over the window
  double mean_removed_length = 0.0;
  SizeDistribution sizes;
  LengthHistogram removed_lengths;
  PathLengthScaling path_lengths;
  /// Removed lengths at snapshot steps only; thinned for near-independence.
  std::vector<std::size_t> snapshot_lengths;
  bool converged = false;
  std::uint64_t burn_in_steps = 0;
  std::vector<StepRecord> records;
};

/// Path percolation on one network: each step removes a uniformly sampled
/// shortest path between a uniform connected pair, then places links.
///
/// A Simulation owns its network and random stream; identical seeds give
/// bit-identical trajectories.
class Simulation {
 public:
  Simulation(Network net, SchemeConfig cfg, std::uint64_t seed);

  const Network& network() const noexcept { return net_; }
  const SchemeConfig& config() const noexcept { return cfg_; }
  void set_alpha(double alpha);
  Rng& rng() noexcept { return rng_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }

  /// One time step: removal first, then generation.
  StepRecord step();

  /// Removes a uniform shortest u-v path. Returns its length.
  std::size_t communicate(NodeId u, NodeId v);

  /// Link generation for one step: floor(alpha) placements plus one more
  /// with probability frac(alpha). Returns the number of links added.
  std::size_t place_links();

  /// Runs `steps` steps, keeping every `record_every`-th record.
  std::vector<StepRecord> run_trajectory(std::uint64_t steps, std::uint64_t record_every = 1);

  /// Burn-in, then measurement over a window; the burn-in is doubled until
  /// the two halves of the window agree on mean eta to within the tolerance.
  SteadyState run_to_steady_state(const SteadyStateParams& params);

  StepRecord snapshot() const;

 private:
  bool place_one();

  Network net_;
  SchemeConfig cfg_;
  Rng rng_;
  PathSampler sampler_;
  std::uint64_t steps_ = 0;
};

/// Redundancy placement gives up after this many draws per placement.
std::uint64_t redundancy_attempt_cap(std::size_t node_count);

}  // namespace pathperc
