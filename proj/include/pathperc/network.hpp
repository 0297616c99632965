#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pathperc {

using NodeId = std::uint32_t;
using ComponentId = std::uint32_t;

/// A simple path u = nodes.front() ... v = nodes.back().
struct PathSample {
  std::pair<NodeId, NodeId> endpoints;
  std::vector<NodeId> nodes;
  std::size_t length = 0;  // edge count, nodes.size() - 1
};

/// Mutable undirected simple graph with incrementally maintained connected
/// components.
///
/// Merges are handled union-by-size on explicit member lists. Deleting a path
/// relabels only the component that hosted it, by BFS seeded at the path
/// nodes (every node of the old component reaches at least one of them).
/// Component ids are recycled, so they are only stable between mutations.
class Network {
 public:
  explicit Network(std::size_t node_count);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_[u]; }
  std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  ComponentId component_of(NodeId u) const { return label_[u]; }
  bool same_component(NodeId u, NodeId v) const { return label_[u] == label_[v]; }
  std::size_t component_size(ComponentId c) const { return members_[c].size(); }
  std::size_t component_size_of(NodeId u) const { return members_[label_[u]].size(); }
  std::span<const NodeId> members(ComponentId c) const { return members_[c]; }

  /// Ids of all live components, in unspecified but deterministic order.
  std::span<const ComponentId> components() const noexcept { return active_; }
  std::size_t component_count() const noexcept { return active_.size(); }
  std::size_t largest_component_size() const noexcept;

  /// Number of components of each size; index s holds the count for size s.
  std::span<const std::size_t> size_counts() const noexcept { return size_count_; }
  std::vector<std::size_t> component_sizes() const;

  /// Unordered node pairs lying in a common component, sum of s(s-1)/2.
  std::uint64_t connected_pairs() const noexcept { return connected_pairs_; }
  /// Unordered node pairs lying in different components.
  std::uint64_t cross_pairs() const noexcept;

  /// Inserts (u, v). Returns true when this joined two components.
  /// Throws std::invalid_argument on a self-loop, an existing edge or an
  /// out-of-range node.
  bool add_link(NodeId u, NodeId v);

  /// Deletes every edge of `path` and repairs the component labels.
  /// Returns the number of components the host component split into.
  /// Throws std::invalid_argument, leaving the graph untouched, if any edge
  /// of the path is absent.
  std::size_t remove_path(const PathSample& path);

  /// Removes a single edge, with the same relabelling as remove_path.
  std::size_t remove_edge(NodeId u, NodeId v);

 private:
  void check_node(NodeId u) const;
  void erase_half_edge(NodeId u, NodeId v);
  ComponentId acquire_label();
  void release_label(ComponentId c);
  void count_size(std::size_t s, int delta);
  std::size_t relabel_from(ComponentId host, std::span<const NodeId> seeds);

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<ComponentId> label_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<ComponentId> active_;
  std::vector<std::size_t> active_pos_;
  std::vector<ComponentId> free_labels_;
  std::vector<std::size_t> size_count_;
  mutable std::size_t max_size_hint_ = 0;
  std::size_t edge_count_ = 0;
  std::uint64_t connected_pairs_ = 0;
  std::vector<NodeId> queue_;
};

/// Component sizes recomputed from scratch by BFS, sorted descending.
/// Used to cross-check the incremental bookkeeping.
std::vector<std::size_t> fresh_component_sizes(const Network& net);

/// True when labels, member lists and size counts agree with a fresh BFS.
bool components_consistent(const Network& net);

}  // namespace pathperc
