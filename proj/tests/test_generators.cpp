#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "pathperc/generators.hpp"
#include "pathperc/graph_io.hpp"
#include "tree_oracle.hpp"

using namespace pathperc;

namespace {

oracle::Edges edges_of(const Network& net) {
  oracle::Edges e;
  for (NodeId u = 0; u < net.node_count(); ++u)
    for (NodeId v : net.neighbors(u))
      if (u < v) e.emplace_back(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

// shortest cycle through BFS from every node
std::size_t girth(const Network& net) {
  std::size_t best = SIZE_MAX;
  const std::size_t n = net.node_count();
  for (NodeId s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId x = q.front();
      q.pop();
      for (NodeId y : net.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = static_cast<int>(x);
          q.push(y);
        } else if (parent[x] != static_cast<int>(y)) {
          best = std::min<std::size_t>(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("UST of K5 hits all 125 labelled trees uniformly") {
  std::map<oracle::Edges, int> all;
  oracle::for_each_tree(5, [&](const oracle::Edges& e) {
    auto s = e;
    std::sort(s.begin(), s.end());
    all[s] = 0;
  });
  REQUIRE(all.size() == 125);  // Cayley: 5^3
  Rng rng(21);
  const int draws = 125 * 400;
  for (int i = 0; i < draws; ++i) {
    const Network t = generate_ust(5, rng);
    REQUIRE(t.edge_count() == 4);
    REQUIRE(t.component_count() == 1);
    auto it = all.find(edges_of(t));
    REQUIRE(it != all.end());
    ++it->second;
  }
  double chi2 = 0.0;
  for (const auto& [e, h] : all) chi2 += (h - 400.0) * (h - 400.0) / 400.0;
  CHECK(chi2 < 185.0);  // 124 dof, p ~ 3e-4
}

TEST_CASE("UST on larger N is a spanning tree") {
  Rng rng(1);
  const Network t = generate_ust(1000, rng);
  CHECK(t.edge_count() == 999);
  CHECK(t.component_count() == 1);
}

TEST_CASE("ER mean degree") {
  Rng rng(2);
  double total = 0.0;
  for (int i = 0; i < 20; ++i) total += 2.0 * generate_er(1000, 2.0, rng).edge_count() / 1000.0;
  CHECK(total / 20 == doctest::Approx(2.0).epsilon(0.03));
  CHECK(generate_er(10, 0.0, rng).edge_count() == 0);
}

TEST_CASE("honeycomb is cubic with hexagonal girth") {
  for (std::size_t n : {24u, 96u, 1000u}) {
    const HoneycombLayout lay = choose_honeycomb_layout(n);
    const Network net = generate_honeycomb(lay);
    CHECK(net.node_count() == lay.node_count());
    CHECK(net.node_count() % 4 == 0);
    for (NodeId u = 0; u < net.node_count(); ++u) REQUIRE(net.degree(u) == 3);
    CHECK(net.edge_count() == 3 * net.node_count() / 2);
    CHECK(net.component_count() == 1);
    CHECK(girth(net) == 6);
  }
  CHECK(choose_honeycomb_layout(1000).node_count() == 1000);
}

TEST_CASE("downlink link probability") {
  CHECK(downlink_link_probability(0.1, 0.1, 50) == doctest::Approx(0.3950).epsilon(1e-3));
  CHECK(downlink_link_probability(0.0, 0.7, 50) == 0.0);
  CHECK(downlink_link_probability(1.0, 1.0, 1) == 1.0);
}

TEST_CASE("satellite disk acceptance decreases with distance") {
  Rng rng(3);
  DiskParams p;
  const Topology topo = generate_satellite_disk(400, p, rng);
  REQUIRE(topo.positions.size() == 400);
  REQUIRE(topo.accept_prob.size() == 400);
  std::vector<std::pair<double, double>> dp;
  for (std::size_t i = 0; i < 400; ++i) {
    const double d = std::hypot(topo.positions[i].x, topo.positions[i].y);
    CHECK(d <= p.radius_km);
    dp.emplace_back(d, topo.accept_prob[i]);
  }
  std::sort(dp.begin(), dp.end());
  for (std::size_t i = 1; i < dp.size(); ++i) CHECK(dp[i].second <= dp[i - 1].second);
}

TEST_CASE("edge list round trip") {
  Rng rng(4);
  const Network net = generate_er(60, 3.0, rng);
  std::stringstream ss;
  write_edge_list(ss, net);
  const Network back = read_edge_list(ss);
  CHECK(back.node_count() == 60);
  CHECK(edges_of(back) == edges_of(net));
  std::stringstream bad("1 2\n");
  CHECK_THROWS(read_edge_list(bad));
}

TEST_CASE("topology names") {
  CHECK(parse_topology_kind("ust") == TopologyKind::UST);
  CHECK(parse_topology_kind("hex") == TopologyKind::Honeycomb2D);
  CHECK_THROWS_AS(parse_topology_kind("torus"), std::invalid_argument);
}
