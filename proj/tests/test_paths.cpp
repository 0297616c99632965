#include <map>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "pathperc/network.hpp"
#include "pathperc/paths.hpp"

using namespace pathperc;

namespace {

// chi-square against equal expected counts
double chi2_flat(const std::map<std::vector<NodeId>, int>& hits, int cells, int draws) {
  const double e = static_cast<double>(draws) / cells;
  double c = 0.0;
  for (const auto& [k, h] : hits) c += (h - e) * (h - e) / e;
  c += (cells - static_cast<int>(hits.size())) * e;
  return c;
}

Network grid3() {
  Network net(9);
  for (NodeId r = 0; r < 3; ++r)
    for (NodeId c = 0; c < 3; ++c) {
      if (c + 1 < 3) net.add_link(3 * r + c, 3 * r + c + 1);
      if (r + 1 < 3) net.add_link(3 * r + c, 3 * (r + 1) + c);
    }
  return net;
}

}  // namespace

TEST_CASE("both shortest paths of a 4-cycle are equally likely") {
  Network net(4);
  net.add_link(0, 1);
  net.add_link(1, 2);
  net.add_link(2, 3);
  net.add_link(3, 0);
  PathSampler sampler(4);
  Rng rng(5);
  std::map<std::vector<NodeId>, int> hits;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const PathSample p = sampler.sample(net, 0, 2, rng);
    CHECK(p.length == 2);
    ++hits[p.nodes];
  }
  CHECK(hits.size() == 2);
  CHECK(chi2_flat(hits, 2, draws) < 10.8);
}

TEST_CASE("corner to corner of a 3x3 grid: six paths, uniform") {
  const Network net = grid3();
  PathSampler sampler(9);
  Rng rng(9);
  std::map<std::vector<NodeId>, int> hits;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const PathSample p = sampler.sample(net, 0, 8, rng);
    REQUIRE(p.length == 4);
    REQUIRE(p.nodes.front() == 0);
    REQUIRE(p.nodes.back() == 8);
    for (std::size_t k = 0; k + 1 < p.nodes.size(); ++k) REQUIRE(net.has_edge(p.nodes[k], p.nodes[k + 1]));
    ++hits[p.nodes];
  }
  CHECK(hits.size() == 6);
  CHECK(chi2_flat(hits, 6, draws) < 20.5);  // 5 dof, p ~ 0.001
}

TEST_CASE("distance and disconnected pairs") {
  const Network grid = grid3();
  PathSampler sampler;
  CHECK(sampler.distance(grid, 0, 8) == 4u);
  CHECK(sampler.distance(grid, 4, 4) == 0u);
  Network net(3);
  net.add_link(0, 1);
  CHECK_FALSE(sampler.distance(net, 0, 2).has_value());
  CHECK(sampler.distance(net, 1, 0) == 1u);
  Rng rng(1);
  CHECK_THROWS_AS(sampler.sample(net, 0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(sampler.sample(net, 1, 1, rng), std::invalid_argument);
  std::size_t reached = 0;
  CHECK(sampler.distance_sum(grid, 0, reached) == 0 + 2 * 1 + 3 * 2 + 2 * 3 + 4);
  CHECK(reached == 9);
}

TEST_CASE("cross pairs of two dimers are uniform over the four") {
  Network net(4);
  net.add_link(0, 1);
  net.add_link(2, 3);
  Rng rng(2);
  std::map<std::vector<NodeId>, int> hits;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    auto p = sample_cross_pair(net, rng);
    REQUIRE(p);
    REQUIRE_FALSE(net.same_component(p->first, p->second));
    ++hits[{std::min(p->first, p->second), std::max(p->first, p->second)}];
  }
  CHECK(hits.size() == 4);
  CHECK(chi2_flat(hits, 4, draws) < 16.3);
  net.add_link(1, 2);
  CHECK_FALSE(sample_cross_pair(net, rng).has_value());
}

TEST_CASE("connected pairs are uniform and weighted by s(s-1)") {
  // a triangle-free path of 3 plus a dimer: 3 + 1 connected pairs
  Network net(6);
  net.add_link(0, 1);
  net.add_link(1, 2);
  net.add_link(3, 4);
  Rng rng(4);
  std::map<std::vector<NodeId>, int> hits;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    auto p = sample_connected_pair(net, rng);
    REQUIRE(p);
    REQUIRE(net.same_component(p->first, p->second));
    REQUIRE(p->first != p->second);
    ++hits[{std::min(p->first, p->second), std::max(p->first, p->second)}];
  }
  CHECK(hits.size() == 4);
  CHECK(chi2_flat(hits, 4, draws) < 16.3);
  CHECK_FALSE(sample_connected_pair(Network(5), rng).has_value());
}

TEST_CASE("non-adjacent pairs on a near-complete graph") {
  // K_6 minus two edges: the sampler must find exactly those two pairs
  Network net(6);
  for (NodeId u = 0; u < 6; ++u)
    for (NodeId v = u + 1; v < 6; ++v)
      if (!((u == 0 && v == 1) || (u == 2 && v == 5))) net.add_link(u, v);
  Rng rng(8);
  std::map<std::vector<NodeId>, int> hits;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    auto p = sample_nonadjacent_pair(net, rng, 1000000);
    REQUIRE(p);
    ++hits[{std::min(p->first, p->second), std::max(p->first, p->second)}];
  }
  CHECK(hits.size() == 2);
  CHECK(chi2_flat(hits, 2, draws) < 10.8);
  // with a single attempt the hit rate is 2/15
  int found = 0;
  for (int i = 0; i < 30000; ++i) found += sample_nonadjacent_pair(net, rng, 1).has_value();
  CHECK(found / 30000.0 == doctest::Approx(2.0 / 15.0).epsilon(0.08));
}
