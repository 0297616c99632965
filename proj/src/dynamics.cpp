#include "pathperc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathperc/generators.hpp"

namespace pathperc {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::CrossLinking: return "crosslinking";
    case Scheme::Downlink: return "downlink";
    case Scheme::Redundancy: return "redundancy";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "cross" || name == "crosslinking" || name == "cross-linking") return Scheme::CrossLinking;
  if (name == "downlink") return Scheme::Downlink;
  if (name == "redundancy") return Scheme::Redundancy;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

void SchemeConfig::validate(std::size_t node_count) const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be >= 0");
  if (scheme == Scheme::Downlink) {
    if (downlink_profile.size() != node_count) {
      throw std::invalid_argument("downlink scheme needs one acceptance probability per node");
    }
    for (double p : downlink_profile) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("acceptance probability outside [0,1]");
    }
    if (photon_count < 1) throw std::invalid_argument("photon count must be >= 1");
  } else if (!downlink_profile.empty()) {
    throw std::invalid_argument("acceptance profile given for a non-downlink scheme");
  }
}

SteadyStateParams SteadyStateParams::resolved(std::size_t node_count) const {
  SteadyStateParams p = *this;
  const std::uint64_t n = node_count;
  if (p.burn_in == 0) p.burn_in = 20 * n;
  if (p.window == 0) p.window = 10 * n;
  if (p.snapshot_every == 0) p.snapshot_every = std::max<std::uint64_t>(1, n / 10);
  if (p.max_burn_in == 0) p.max_burn_in = 8 * p.burn_in;
  if (p.window < 2) throw std::invalid_argument("steady-state window must be >= 2");
  return p;
}

std::uint64_t redundancy_attempt_cap(std::size_t node_count) { return 100 * static_cast<std::uint64_t>(node_count); }

Simulation::Simulation(Network net, SchemeConfig cfg, std::uint64_t seed)
    : net_(std::move(net)), cfg_(std::move(cfg)), rng_(seed), sampler_(net_.node_count()) {
  cfg_.validate(net_.node_count());
}

void Simulation::set_alpha(double alpha) {
  SchemeConfig next = cfg_;
  next.alpha = alpha;
  next.validate(net_.node_count());
  cfg_ = std::move(next);
}

StepRecord Simulation::snapshot() const {
  StepRecord r;
  r.step = steps_;
  r.n_components = net_.component_count();
  r.s_max = net_.largest_component_size();
  r.eta = availability(net_);
  return r;
}

std::size_t Simulation::communicate(NodeId u, NodeId v) {
  const PathSample path = sampler_.sample(net_, u, v, rng_);
  net_.remove_path(path);
  return path.length;
}

bool Simulation::place_one() {
  switch (cfg_.scheme) {
    case Scheme::CrossLinking: {
      const auto pair = sample_cross_pair(net_, rng_);
      if (!pair) return false;
      net_.add_link(pair->first, pair->second);
      return true;
    }
    case Scheme::Downlink: {
      const std::uint64_t tries =
          cfg_.downlink_retry == DownlinkRetry::Consume ? 1 : redundancy_attempt_cap(net_.node_count());
      for (std::uint64_t t = 0; t < tries; ++t) {
        const auto pair = sample_cross_pair(net_, rng_);
        if (!pair) return false;
        const double pi = downlink_link_probability(cfg_.downlink_profile[pair->first],
                                                    cfg_.downlink_profile[pair->second],
                                                    cfg_.photon_count);
        if (bernoulli(rng_, pi)) {
          net_.add_link(pair->first, pair->second);
          return true;
        }
      }
      return false;
    }
    case Scheme::Redundancy: {
      const auto pair = sample_nonadjacent_pair(net_, rng_, redundancy_attempt_cap(net_.node_count()));
      if (!pair) return false;
      net_.add_link(pair->first, pair->second);
      return true;
    }
  }
  return false;
}

std::size_t Simulation::place_links() {
  const double whole = std::floor(cfg_.alpha);
  auto placements = static_cast<std::uint64_t>(whole);
  if (bernoulli(rng_, cfg_.alpha - whole)) ++placements;

  std::size_t added = 0;
  for (std::uint64_t k = 0; k < placements; ++k) {
    if (place_one()) {
      ++added;
    } else if (cfg_.scheme == Scheme::CrossLinking && net_.component_count() < 2) {
      break;  // no cross pair left this step
    }
  }
  return added;
}

StepRecord Simulation::step() {
  ++steps_;
  std::size_t removed = 0;
  if (const auto pair = sample_connected_pair(net_, rng_)) {
    removed = communicate(pair->first, pair->second);
  }
  const std::size_t added = place_links();
  StepRecord r = snapshot();
  r.removed_length = removed;
  r.links_added = added;
  return r;
}

std::vector<StepRecord> Simulation::run_trajectory(std::uint64_t steps, std::uint64_t record_every) {
  if (steps < 1) throw std::invalid_argument("trajectory needs at least one step");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  std::vector<StepRecord> out;
  out.reserve(steps / record_every + 1);
  for (std::uint64_t t = 1; t <= steps; ++t) {
    StepRecord r = step();
    if (t % record_every == 0) out.push_back(r);
  }
  return out;
}

namespace {

double batch_stderr(const std::vector<StepRecord>& records) {
  constexpr std::size_t kBatches = 10;
  if (records.size() < kBatches * 2) return 0.0;
  const std::size_t per = records.size() / kBatches;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t b = 0; b < kBatches; ++b) {
    double m = 0.0;
    for (std::size_t i = b * per; i < (b + 1) * per; ++i) m += records[i].eta;
    m /= static_cast<double>(per);
    sum += m;
    sum_sq += m * m;
  }
  const double k = static_cast<double>(kBatches);
  const double mean = sum / k;
  const double var = std::max(0.0, (sum_sq - k * mean * mean) / (k - 1.0));
  return std::sqrt(var / k);
}

}  // namespace

SteadyState Simulation::run_to_steady_state(const SteadyStateParams& raw) {
  const SteadyStateParams p = raw.resolved(net_.node_count());
  SteadyState out;

  std::uint64_t burn_in = p.burn_in;
  for (std::uint64_t t = 0; t < burn_in; ++t) step();

  for (;;) {
    out.records.clear();
    out.records.reserve(p.window);
    out.sizes = SizeDistribution(net_.node_count());
    out.path_lengths = PathLengthScaling{};
    out.snapshot_lengths.clear();
    for (std::uint64_t t = 1; t <= p.window; ++t) {
      out.records.push_back(step());
      if (t % p.snapshot_every == 0) {
        out.sizes.accumulate(net_);
        out.snapshot_lengths.push_back(out.records.back().removed_length);
        if (p.path_length_pairs > 0) {
          out.path_lengths.add(component_path_lengths(net_, p.path_length_pairs, rng_, sampler_));
        }
      }
    }
    const std::size_t half = out.records.size() / 2;
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < half; ++i) first += out.records[i].eta;
    for (std::size_t i = half; i < 2 * half; ++i) second += out.records[i].eta;
    first /= static_cast<double>(half);
    second /= static_cast<double>(half);
    out.converged = std::abs(first - second) < p.stationarity_tol;
    if (out.converged || burn_in >= p.max_burn_in) break;
    // Extend: the window just measured counts towards the longer burn-in.
    const std::uint64_t extra = std::min(burn_in, p.max_burn_in - burn_in);
    const std::uint64_t more = extra > p.window ? extra - p.window : 0;
    for (std::uint64_t t = 0; t < more; ++t) step();
    burn_in += extra;
  }
  out.burn_in_steps = burn_in;

  double eta = 0.0;
  for (const auto& r : out.records) eta += r.eta;
  out.eta_mean = eta / static_cast<double>(out.records.size());
  out.eta_stderr = batch_stderr(out.records);
  std::uint64_t removed = 0;
  for (const auto& r : out.records) removed += r.removed_length;
  out.mean_removed_length = static_cast<double>(removed) / static_cast<double>(out.records.size());
  bool any_removal = std::any_of(out.records.begin(), out.records.end(),
                                 [](const StepRecord& r) { return r.removed_length > 0; });
  if (any_removal) out.removed_lengths = removed_length_histogram(out.records);
  return out;
}

}  // namespace pathperc
