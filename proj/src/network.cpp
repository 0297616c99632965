#include "pathperc/network.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace pathperc {

namespace {
constexpr ComponentId kUnassigned = std::numeric_limits<ComponentId>::max();

std::uint64_t pairs_of(std::size_t s) {
  return static_cast<std::uint64_t>(s) * (s - (s > 0 ? 1 : 0)) / 2;
}
}  // namespace

Network::Network(std::size_t node_count)
    : adjacency_(node_count),
      label_(node_count),
      members_(node_count),
      active_(node_count),
      active_pos_(node_count),
      size_count_(node_count + 1, 0) {
  if (node_count == 0) throw std::invalid_argument("network needs at least one node");
  if (node_count >= kUnassigned) throw std::invalid_argument("node count too large");
  for (NodeId u = 0; u < node_count; ++u) {
    label_[u] = u;
    members_[u] = {u};
    active_[u] = u;
    active_pos_[u] = u;
  }
  size_count_[1] = node_count;
  max_size_hint_ = 1;
  queue_.reserve(node_count);
}

void Network::check_node(NodeId u) const {
  if (u >= node_count()) {
    throw std::invalid_argument("node " + std::to_string(u) + " out of range");
  }
}

bool Network::has_edge(NodeId u, NodeId v) const {
  if (adjacency_[u].size() > adjacency_[v].size()) std::swap(u, v);
  const auto& a = adjacency_[u];
  return std::find(a.begin(), a.end(), v) != a.end();
}

std::size_t Network::largest_component_size() const noexcept {
  while (max_size_hint_ > 0 && size_count_[max_size_hint_] == 0) --max_size_hint_;
  return max_size_hint_;
}

std::vector<std::size_t> Network::component_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(active_.size());
  for (ComponentId c : active_) sizes.push_back(members_[c].size());
  return sizes;
}

std::uint64_t Network::cross_pairs() const noexcept {
  const auto n = static_cast<std::uint64_t>(node_count());
  return n * (n - 1) / 2 - connected_pairs_;
}

ComponentId Network::acquire_label() {
  const ComponentId c = free_labels_.back();
  free_labels_.pop_back();
  active_pos_[c] = active_.size();
  active_.push_back(c);
  return c;
}

void Network::release_label(ComponentId c) {
  const std::size_t pos = active_pos_[c];
  active_[pos] = active_.back();
  active_pos_[active_[pos]] = pos;
  active_.pop_back();
  free_labels_.push_back(c);
}

void Network::count_size(std::size_t s, int delta) {
  size_count_[s] += delta;
  if (delta > 0) {
    connected_pairs_ += pairs_of(s);
    max_size_hint_ = std::max(max_size_hint_, s);
  } else {
    connected_pairs_ -= pairs_of(s);
  }
}

bool Network::add_link(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("self-loop " + std::to_string(u));
  if (has_edge(u, v)) {
    throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                " already present");
  }
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  ++edge_count_;

  ComponentId a = label_[u];
  ComponentId b = label_[v];
  if (a == b) return false;
  if (members_[a].size() < members_[b].size()) std::swap(a, b);
  count_size(members_[a].size(), -1);
  count_size(members_[b].size(), -1);
  for (NodeId w : members_[b]) label_[w] = a;
  members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
  members_[b].clear();
  members_[b].shrink_to_fit();
  release_label(b);
  count_size(members_[a].size(), +1);
  return true;
}

void Network::erase_half_edge(NodeId u, NodeId v) {
  auto& a = adjacency_[u];
  auto it = std::find(a.begin(), a.end(), v);
  *it = a.back();
  a.pop_back();
}

std::size_t Network::relabel_from(ComponentId host, std::span<const NodeId> seeds) {
  std::vector<NodeId> old_members = std::move(members_[host]);
  members_[host] = {};
  count_size(old_members.size(), -1);
  release_label(host);
  for (NodeId w : old_members) label_[w] = kUnassigned;

  std::size_t pieces = 0;
  for (NodeId seed : seeds) {
    if (label_[seed] != kUnassigned) continue;
    const ComponentId c = acquire_label();
    ++pieces;
    auto& group = members_[c];
    queue_.clear();
    queue_.push_back(seed);
    label_[seed] = c;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const NodeId x = queue_[head];
      for (NodeId y : adjacency_[x]) {
        if (label_[y] == kUnassigned) {
          label_[y] = c;
          queue_.push_back(y);
        }
      }
    }
    group.assign(queue_.begin(), queue_.end());
    count_size(group.size(), +1);
  }
  return pieces;
}

std::size_t Network::remove_path(const PathSample& path) {
  const auto& nodes = path.nodes;
  if (nodes.size() < 2) throw std::invalid_argument("path has no edges");
  for (NodeId u : nodes) check_node(u);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i] == nodes[i + 1] || !has_edge(nodes[i], nodes[i + 1])) {
      throw std::invalid_argument("path edge " + std::to_string(nodes[i]) + "-" +
                                  std::to_string(nodes[i + 1]) + " absent");
    }
  }
  const ComponentId host = label_[nodes.front()];
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    erase_half_edge(nodes[i], nodes[i + 1]);
    erase_half_edge(nodes[i + 1], nodes[i]);
    --edge_count_;
  }
  return relabel_from(host, nodes);
}

std::size_t Network::remove_edge(NodeId u, NodeId v) {
  PathSample p;
  p.endpoints = {u, v};
  p.nodes = {u, v};
  p.length = 1;
  return remove_path(p);
}

std::vector<std::size_t> fresh_component_sizes(const Network& net) {
  const std::size_t n = net.node_count();
  std::vector<char> seen(n, 0);
  std::vector<NodeId> queue;
  std::vector<std::size_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    queue.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId y : net.neighbors(queue[head])) {
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

bool components_consistent(const Network& net) {
  const std::size_t n = net.node_count();
  std::size_t total = 0;
  std::uint64_t pairs = 0;
  std::vector<std::size_t> counts(n + 1, 0);
  for (ComponentId c : net.components()) {
    const auto members = net.members(c);
    if (members.empty()) return false;
    total += members.size();
    pairs += pairs_of(members.size());
    ++counts[members.size()];
    for (NodeId u : members) {
      if (net.component_of(u) != c) return false;
      for (NodeId v : net.neighbors(u)) {
        if (net.component_of(v) != c) return false;
      }
    }
  }
  if (total != n || pairs != net.connected_pairs()) return false;
  if (!std::equal(counts.begin(), counts.end(), net.size_counts().begin())) return false;

  auto incremental = net.component_sizes();
  std::sort(incremental.rbegin(), incremental.rend());
  if (incremental != fresh_component_sizes(net)) return false;
  return incremental.front() == net.largest_component_size();
}

}  // namespace pathperc
