#include "pathperc/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pathperc {

PathSampler::PathSampler(std::size_t node_count) { ensure(node_count); }

void PathSampler::ensure(std::size_t n) {
  if (dist_.size() < n) {
    dist_.assign(n, -1);
    count_.assign(n, 0.0);
    queue_.reserve(n);
  }
}

void PathSampler::reset() {
  for (NodeId x : queue_) dist_[x] = -1;
  queue_.clear();
}

PathSample PathSampler::sample(const Network& net, NodeId u, NodeId v, Rng& rng) {
  if (u == v) throw std::invalid_argument("path endpoints must differ");
  if (u >= net.node_count() || v >= net.node_count()) {
    throw std::invalid_argument("path endpoint out of range");
  }
  if (!net.same_component(u, v)) throw std::invalid_argument("path endpoints disconnected");
  ensure(net.node_count());
  reset();

  queue_.push_back(u);
  dist_[u] = 0;
  count_[u] = 1.0;
  bool found = false;
  std::size_t level_begin = 0;
  while (!found && level_begin < queue_.size()) {
    const std::size_t level_end = queue_.size();
    double level_max = 0.0;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      level_max = std::max(level_max, count_[queue_[i]]);
    }
    for (std::size_t i = level_begin; i < level_end; ++i) count_[queue_[i]] /= level_max;

    for (std::size_t i = level_begin; i < level_end; ++i) {
      const NodeId x = queue_[i];
      const std::int32_t next = dist_[x] + 1;
      for (NodeId y : net.neighbors(x)) {
        if (dist_[y] < 0) {
          dist_[y] = next;
          count_[y] = count_[x];
          queue_.push_back(y);
          if (y == v) found = true;
        } else if (dist_[y] == next) {
          count_[y] += count_[x];
        }
      }
    }
    level_begin = level_end;
  }
  // The level that discovered v was expanded in full, so every predecessor
  // of v holds its final count. v's own level is never expanded.

  const auto length = static_cast<std::size_t>(dist_[v]);
  PathSample path;
  path.endpoints = {u, v};
  path.length = length;
  path.nodes.resize(length + 1);
  path.nodes[length] = v;
  NodeId cur = v;
  for (std::size_t k = length; k > 0; --k) {
    const auto want = static_cast<std::int32_t>(k - 1);
    double total = 0.0;
    for (NodeId y : net.neighbors(cur)) {
      if (dist_[y] == want) total += count_[y];
    }
    double r = uniform01(rng) * total;
    NodeId pick = cur;
    for (NodeId y : net.neighbors(cur)) {
      if (dist_[y] != want) continue;
      pick = y;
      r -= count_[y];
      if (r < 0.0) break;
    }
    cur = pick;
    path.nodes[k - 1] = cur;
  }
  return path;
}

std::optional<std::size_t> PathSampler::distance(const Network& net, NodeId u, NodeId v) {
  if (!net.same_component(u, v)) return std::nullopt;
  if (u == v) return 0;
  ensure(net.node_count());
  reset();
  queue_.push_back(u);
  dist_[u] = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId x = queue_[head];
    for (NodeId y : net.neighbors(x)) {
      if (dist_[y] >= 0) continue;
      dist_[y] = dist_[x] + 1;
      queue_.push_back(y);  // reset() relies on this
      if (y == v) return static_cast<std::size_t>(dist_[y]);
    }
  }
  return std::nullopt;
}

std::uint64_t PathSampler::distance_sum(const Network& net, NodeId u, std::size_t& reached) {
  ensure(net.node_count());
  reset();
  queue_.push_back(u);
  dist_[u] = 0;
  std::uint64_t sum = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId x = queue_[head];
    sum += static_cast<std::uint64_t>(dist_[x]);
    for (NodeId y : net.neighbors(x)) {
      if (dist_[y] < 0) {
        dist_[y] = dist_[x] + 1;
        queue_.push_back(y);
      }
    }
  }
  reached = queue_.size();
  return sum;
}

namespace {

std::pair<NodeId, NodeId> two_distinct_members(const Network& net, ComponentId c, Rng& rng) {
  const auto members = net.members(c);
  const auto s = members.size();
  const auto i = uniform_index(rng, s);
  auto j = uniform_index(rng, s - 1);
  if (j >= i) ++j;
  return {members[i], members[j]};
}

NodeId uniform_member(const Network& net, ComponentId c, Rng& rng) {
  const auto members = net.members(c);
  return members[uniform_index(rng, members.size())];
}

constexpr int kCrossRejectionTries = 32;

}  // namespace

std::optional<std::pair<NodeId, NodeId>> sample_connected_pair(const Network& net, Rng& rng) {
  const std::uint64_t total = net.connected_pairs();
  if (total == 0) return std::nullopt;
  std::uint64_t r = uniform_index(rng, total);
  for (ComponentId c : net.components()) {
    const std::uint64_t s = net.component_size(c);
    const std::uint64_t w = s * (s - 1) / 2;
    if (r < w) return two_distinct_members(net, c, rng);
    r -= w;
  }
  throw std::logic_error("connected pair count out of sync");
}

std::optional<std::pair<NodeId, NodeId>> sample_cross_pair(const Network& net, Rng& rng) {
  if (net.component_count() < 2) return std::nullopt;
  const std::uint64_t n = net.node_count();
  for (int attempt = 0; attempt < kCrossRejectionTries; ++attempt) {
    const auto u = static_cast<NodeId>(uniform_index(rng, n));
    auto v = static_cast<NodeId>(uniform_index(rng, n - 1));
    if (v >= u) ++v;
    if (!net.same_component(u, v)) return std::pair{u, v};
  }
  // Exact fallback: first component with weight s(N-s), then a partner
  // component with weight s' among the rest.
  std::uint64_t r = uniform_index(rng, 2 * net.cross_pairs());
  ComponentId first = net.components().front();
  for (ComponentId c : net.components()) {
    const std::uint64_t s = net.component_size(c);
    const std::uint64_t w = s * (n - s);
    if (r < w) {
      first = c;
      break;
    }
    r -= w;
  }
  const std::uint64_t outside = n - net.component_size(first);
  std::uint64_t k = uniform_index(rng, outside);
  for (ComponentId c : net.components()) {
    if (c == first) continue;
    const std::uint64_t s = net.component_size(c);
    if (k < s) return std::pair{uniform_member(net, first, rng), net.members(c)[k]};
    k -= s;
  }
  throw std::logic_error("cross pair count out of sync");
}

std::optional<std::pair<NodeId, NodeId>> sample_nonadjacent_pair(const Network& net, Rng& rng,
                                                                 std::uint64_t max_attempts) {
  const std::uint64_t n = net.node_count();
  if (n < 2) return std::nullopt;
  const std::uint64_t all_pairs = n * (n - 1) / 2;
  if (net.edge_count() >= all_pairs) return std::nullopt;
  const std::uint64_t direct = std::min<std::uint64_t>(max_attempts, kCrossRejectionTries);
  for (std::uint64_t attempt = 0; attempt < direct; ++attempt) {
    const auto u = static_cast<NodeId>(uniform_index(rng, n));
    auto v = static_cast<NodeId>(uniform_index(rng, n - 1));
    if (v >= u) ++v;
    if (!net.has_edge(u, v)) return std::pair{u, v};
  }
  if (direct == max_attempts) return std::nullopt;

  // Dense graph. Whether one of the remaining draws would have hit is a
  // single Bernoulli; the hit itself is a uniform non-adjacent pair.
  const std::uint64_t free_pairs = all_pairs - net.edge_count();
  const double q = static_cast<double>(free_pairs) / static_cast<double>(all_pairs);
  const double hit = -std::expm1(static_cast<double>(max_attempts - direct) * std::log1p(-q));
  if (!bernoulli(rng, hit)) return std::nullopt;

  // u with weight (n - 1 - deg u), then a uniform non-neighbour of u.
  std::uint64_t r = uniform_index(rng, 2 * free_pairs);
  NodeId u = 0;
  for (; u < n; ++u) {
    const std::uint64_t w = n - 1 - net.degree(u);
    if (r < w) break;
    r -= w;
  }
  if (u == n) throw std::logic_error("edge count out of sync");
  std::vector<char> taken(n, 0);
  taken[u] = 1;
  for (NodeId y : net.neighbors(u)) taken[y] = 1;
  for (NodeId v = 0; v < n; ++v) {
    if (taken[v]) continue;
    if (r == 0) return std::pair{u, v};
    --r;
  }
  throw std::logic_error("degree out of sync");
}

}  // namespace pathperc
