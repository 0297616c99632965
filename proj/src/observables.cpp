#include "pathperc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathperc {

double availability(const Network& net) {
  const double n = static_cast<double>(net.node_count());
  if (net.node_count() < 2) return 0.0;
  return static_cast<double>(net.connected_pairs()) / (n * (n - 1.0) / 2.0);
}

double availability_from_pairs(std::span<const std::size_t> component_sizes) {
  double n = 0.0;
  double pairs = 0.0;
  for (std::size_t s : component_sizes) {
    n += static_cast<double>(s);
    pairs += static_cast<double>(s) * static_cast<double>(s - 1);
  }
  if (n < 2.0) return 0.0;
  return pairs / (n * (n - 1.0));
}

double availability_from_mean_size(std::span<const std::size_t> component_sizes) {
  double n = 0.0;
  double sq = 0.0;
  for (std::size_t s : component_sizes) {
    n += static_cast<double>(s);
    sq += static_cast<double>(s) * static_cast<double>(s);
  }
  if (n < 2.0) return 0.0;
  const double mean_size = sq / n;
  return (mean_size - 1.0) / (n - 1.0);
}

// --- SizeDistribution ------------------------------------------------------

SizeDistribution::SizeDistribution(std::size_t node_count)
    : node_count_(node_count), sum_(node_count + 1, 0.0), sum_sq_(node_count + 1, 0.0) {}

SizeDistribution SizeDistribution::of(const Network& net) {
  SizeDistribution d(net.node_count());
  d.accumulate(net);
  return d;
}

SizeDistribution SizeDistribution::from_replicas(std::span<const SizeDistribution> replicas) {
  if (replicas.empty()) throw std::invalid_argument("no replicas to combine");
  SizeDistribution out(replicas.front().node_count());
  for (const auto& r : replicas) {
    if (r.node_count() != out.node_count()) {
      throw std::invalid_argument("replicas have different node counts");
    }
    out.accumulate(r.values());
  }
  return out;
}

void SizeDistribution::accumulate(const Network& net) {
  if (net.node_count() != node_count_) throw std::invalid_argument("node count mismatch");
  const double n = static_cast<double>(node_count_);
  const auto counts = net.size_counts();
  for (std::size_t s = 1; s < counts.size(); ++s) {
    const double v = static_cast<double>(counts[s]) / n;
    sum_[s] += v;
    sum_sq_[s] += v * v;
  }
  ++samples_;
}

void SizeDistribution::accumulate(std::span<const double> per_site) {
  if (per_site.size() != node_count_ + 1) throw std::invalid_argument("size vector length mismatch");
  for (std::size_t s = 1; s < per_site.size(); ++s) {
    sum_[s] += per_site[s];
    sum_sq_[s] += per_site[s] * per_site[s];
  }
  ++samples_;
}

std::size_t SizeDistribution::max_size() const {
  for (std::size_t s = node_count_; s > 0; --s) {
    if (sum_[s] > 0.0) return s;
  }
  return 0;
}

double SizeDistribution::value(std::size_t s) const {
  if (samples_ == 0 || s == 0 || s > node_count_) return 0.0;
  return sum_[s] / static_cast<double>(samples_);
}

double SizeDistribution::stderr_at(std::size_t s) const {
  if (samples_ < 2 || s == 0 || s > node_count_) return 0.0;
  const double m = static_cast<double>(samples_);
  const double mean = sum_[s] / m;
  const double var = std::max(0.0, (sum_sq_[s] - m * mean * mean) / (m - 1.0));
  return std::sqrt(var / m);
}

std::vector<double> SizeDistribution::values() const {
  std::vector<double> v(node_count_ + 1, 0.0);
  for (std::size_t s = 1; s <= node_count_; ++s) v[s] = value(s);
  return v;
}

double SizeDistribution::mass() const {
  double total = 0.0;
  for (std::size_t s = 1; s <= node_count_; ++s) total += static_cast<double>(s) * value(s);
  return total;
}

// --- path lengths ----------------------------------------------------------

std::vector<ComponentPathLength> component_path_lengths(const Network& net,
                                                        std::size_t pairs_per_component, Rng& rng,
                                                        PathSampler& sampler) {
  if (pairs_per_component < 1) throw std::invalid_argument("pairs_per_component must be >= 1");
  constexpr std::size_t kExactLimit = 64;
  std::vector<ComponentPathLength> out;
  for (ComponentId c : net.components()) {
    const auto members = net.members(c);
    const std::size_t s = members.size();
    if (s < 2) continue;
    double mean = 0.0;
    if (s <= kExactLimit) {
      std::uint64_t total = 0;
      for (NodeId u : members) {
        std::size_t reached = 0;
        total += sampler.distance_sum(net, u, reached);
      }
      mean = static_cast<double>(total) / static_cast<double>(s * (s - 1));
    } else {
      double total = 0.0;
      for (std::size_t k = 0; k < pairs_per_component; ++k) {
        const auto i = uniform_index(rng, s);
        auto j = uniform_index(rng, s - 1);
        if (j >= i) ++j;
        total += static_cast<double>(*sampler.distance(net, members[i], members[j]));
      }
      mean = total / static_cast<double>(pairs_per_component);
    }
    out.push_back({s, mean});
  }
  return out;
}

void PathLengthScaling::add(std::span<const ComponentPathLength> samples) {
  for (const auto& x : samples) {
    auto& m = by_size_[x.size];
    m.sum += x.mean_length;
    m.sum_sq += x.mean_length * x.mean_length;
    ++m.count;
  }
}

void PathLengthScaling::merge(const PathLengthScaling& other) {
  for (const auto& [s, m] : other.by_size_) {
    auto& mine = by_size_[s];
    mine.sum += m.sum;
    mine.sum_sq += m.sum_sq;
    mine.count += m.count;
  }
}

std::vector<PathLengthScaling::Row> PathLengthScaling::rows() const {
  std::vector<Row> out;
  out.reserve(by_size_.size());
  for (const auto& [s, m] : by_size_) {
    const double n = static_cast<double>(m.count);
    const double mean = m.sum / n;
    double err = 0.0;
    if (m.count > 1) {
      const double var = std::max(0.0, (m.sum_sq - n * mean * mean) / (n - 1.0));
      err = std::sqrt(var / n);
    }
    out.push_back({s, mean, err, m.count});
  }
  return out;
}

// --- removed path lengths --------------------------------------------------

double LengthHistogram::probability(std::size_t l) const {
  auto it = counts.find(l);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

double LengthHistogram::stderr_at(std::size_t l) const {
  if (total == 0) return 0.0;
  const double p = probability(l);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

double LengthHistogram::mean() const {
  if (total == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [l, c] : counts) acc += static_cast<double>(l) * static_cast<double>(c);
  return acc / static_cast<double>(total);
}

std::size_t LengthHistogram::max_length() const { return counts.empty() ? 0 : counts.rbegin()->first; }

LengthHistogram removed_length_histogram(std::span<const std::size_t> lengths) {
  LengthHistogram h;
  for (std::size_t l : lengths) {
    if (l == 0) continue;
    ++h.counts[l];
    ++h.total;
  }
  if (h.total == 0) throw std::invalid_argument("no removed paths to histogram");
  return h;
}

LengthHistogram removed_length_histogram(std::span<const StepRecord> records) {
  std::vector<std::size_t> lengths;
  lengths.reserve(records.size());
  for (const auto& r : records) lengths.push_back(r.removed_length);
  return removed_length_histogram(lengths);
}

}  // namespace pathperc
