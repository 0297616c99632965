#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pathperc/network.hpp"
#include "pathperc/paths.hpp"
#include "pathperc/random.hpp"

namespace pathperc {

/// One time step of a trajectory.
struct StepRecord {
  std::uint64_t step = 0;
  std::size_t removed_length = 0;  // 0 when no connected pair existed
  std::size_t links_added = 0;
  std::size_t n_components = 0;
  std::size_t s_max = 0;
  double eta = 0.0;
};

// Network availability: the fraction of node pairs that share a component.

double availability(const Network& net);
/// Pair-count form, sum s(s-1) / (N(N-1)).
double availability_from_pairs(std::span<const std::size_t> component_sizes);
/// Mean-cluster-size form, (<s> - 1)/(N - 1) with <s> = sum s^2 v(s).
double availability_from_mean_size(std::span<const std::size_t> component_sizes);

/// Components of size s per site, v(s), averaged over snapshots.
///
/// Each sample is a full per-site vector, so the same type accumulates
/// snapshots of one run or the per-replica means of many runs. stderr is the
/// standard error of the sample mean at each s.
class SizeDistribution {
 public:
  SizeDistribution() = default;
  explicit SizeDistribution(std::size_t node_count);

  /// v(s) of a single network.
  static SizeDistribution of(const Network& net);
  /// Mean over replicas, with the spread between replicas as stderr.
  static SizeDistribution from_replicas(std::span<const SizeDistribution> replicas);

  void accumulate(const Network& net);
  void accumulate(std::span<const double> per_site);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t samples() const noexcept { return samples_; }
  /// Largest s with a non-zero mean.
  std::size_t max_size() const;
  double value(std::size_t s) const;
  double stderr_at(std::size_t s) const;
  std::vector<double> values() const;
  /// Sum of s v(s); 1 up to rounding.
  double mass() const;

 private:
  std::size_t node_count_ = 0;
  std::size_t samples_ = 0;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

struct ComponentPathLength {
  std::size_t size = 0;
  double mean_length = 0.0;
};

/// Mean hop distance inside each non-singleton component: exact over all
/// pairs when s <= 64, otherwise averaged over `pairs_per_component`
/// random pairs.
std::vector<ComponentPathLength> component_path_lengths(const Network& net,
                                                        std::size_t pairs_per_component, Rng& rng,
                                                        PathSampler& sampler);

/// Per-size statistics of mean component path length, for l(s) scaling.
class PathLengthScaling {
 public:
  void add(std::span<const ComponentPathLength> samples);
  void merge(const PathLengthScaling& other);

  struct Row {
    std::size_t size;
    double mean;
    double std_error;
    std::size_t count;
  };
  std::vector<Row> rows() const;
  bool empty() const { return by_size_.empty(); }

 private:
  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
  };
  std::map<std::size_t, Moments> by_size_;
};

/// Normalised distribution of removed path lengths.
struct LengthHistogram {
  std::map<std::size_t, std::uint64_t> counts;
  std::uint64_t total = 0;

  double probability(std::size_t l) const;
  double stderr_at(std::size_t l) const;
  double mean() const;
  std::size_t max_length() const;
};

/// Histogram of the l >= 1 entries of `records`. Steps without a removal
/// (l = 0) are ignored. Throws std::invalid_argument when nothing remains.
LengthHistogram removed_length_histogram(std::span<const StepRecord> records);
LengthHistogram removed_length_histogram(std::span<const std::size_t> lengths);

}  // namespace pathperc
