#pragma once

// Brute-force enumeration of labelled trees by Pruefer code. Small n only.

#include <cstddef>
#include <functional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Edges = std::vector<std::pair<int, int>>;

inline Edges decode_pruefer(const std::vector<int>& code, int n) {
  std::vector<int> degree(n, 1);
  for (int c : code) ++degree[c];
  std::set<int> leaves;
  for (int i = 0; i < n; ++i)
    if (degree[i] == 1) leaves.insert(i);
  Edges edges;
  for (int c : code) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    if (--degree[c] == 1) leaves.insert(c);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

inline void for_each_tree(int n, const std::function<void(const Edges&)>& f) {
  if (n == 2) {
    f({{0, 1}});
    return;
  }
  std::vector<int> code(n - 2, 0);
  while (true) {
    f(decode_pruefer(code, n));
    int i = 0;
    while (i < n - 2 && ++code[i] == n) code[i++] = 0;
    if (i == n - 2) return;
  }
}

inline std::vector<std::vector<int>> adjacency(const Edges& e, int n) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : e) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Unique tree path u..v.
inline std::vector<int> tree_path(const std::vector<std::vector<int>>& adj, int u, int v) {
  std::vector<int> parent(adj.size(), -1);
  std::queue<int> q;
  q.push(u);
  parent[u] = u;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (parent[y] < 0) {
        parent[y] = x;
        q.push(y);
      }
  }
  std::vector<int> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  return path;
}

}  // namespace oracle
