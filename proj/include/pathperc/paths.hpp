#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pathperc/network.hpp"
#include "pathperc/random.hpp"

namespace pathperc {

/// BFS scratch space sized to one network. Reused across calls so a
/// trajectory does not allocate per step.
class PathSampler {
 public:
  explicit PathSampler(std::size_t node_count = 0);

  /// A path drawn uniformly from all shortest u-v paths.
  ///
  /// BFS from u stops as soon as v is discovered; every node on an earlier
  /// level then holds its final shortest-path count. The walk back from v
  /// picks each predecessor with probability proportional to its count.
  /// Counts are divided by the level maximum before a level is expanded, so
  /// they stay O(1) while within-level ratios are exact.
  ///
  /// Throws std::invalid_argument if u == v or they are disconnected.
  PathSample sample(const Network& net, NodeId u, NodeId v, Rng& rng);

  /// Hop distance between u and v, or nullopt when disconnected.
  std::optional<std::size_t> distance(const Network& net, NodeId u, NodeId v);

  /// Distances from u to every node of its component, in BFS order.
  /// Returns the sum of distances; `reached` receives the component size.
  std::uint64_t distance_sum(const Network& net, NodeId u, std::size_t& reached);

 private:
  void ensure(std::size_t n);
  void reset();

  std::vector<std::int32_t> dist_;
  std::vector<double> count_;
  std::vector<NodeId> queue_;
};

/// Uniform unordered pair among pairs sharing a component, drawn by picking a
/// component with weight s(s-1) and then two distinct members. Returns
/// nullopt when every component is a singleton.
std::optional<std::pair<NodeId, NodeId>> sample_connected_pair(const Network& net, Rng& rng);

/// Uniform unordered pair among pairs in different components, or nullopt
/// for a connected graph. Tries plain rejection first and falls back to
/// exact component-weighted sampling; both give the same distribution.
std::optional<std::pair<NodeId, NodeId>> sample_cross_pair(const Network& net, Rng& rng);

/// Uniform pair of distinct, non-adjacent nodes by rejection, giving up after
/// `max_attempts` draws. Past the first few draws the remaining rejection
/// loop is replaced by its exact outcome law, so dense graphs stay cheap.
std::optional<std::pair<NodeId, NodeId>> sample_nonadjacent_pair(const Network& net, Rng& rng,
                                                                 std::uint64_t max_attempts);

}  // namespace pathperc
