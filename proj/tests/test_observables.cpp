#include <cmath>

#include <doctest.h>

#include "pathperc/generators.hpp"
#include "pathperc/observables.hpp"
#include "pathperc/paths.hpp"
#include "pathperc/smoluchowski.hpp"
#include "tree_oracle.hpp"

using namespace pathperc;

TEST_CASE("availability forms agree") {
  const std::vector<std::size_t> sizes{5, 3, 1, 1};
  const double pairs = (5 * 4 + 3 * 2) / (10.0 * 9.0);
  CHECK(availability_from_pairs(sizes) == doctest::Approx(pairs));
  CHECK(availability_from_mean_size(sizes) == doctest::Approx(pairs));
  Rng rng(1);
  const Network net = generate_er(300, 1.0, rng);
  CHECK(availability(net) == doctest::Approx(availability_from_pairs(net.component_sizes())));
  CHECK(availability(generate_complete(10)) == 1.0);
  CHECK(availability(Network(10)) == 0.0);
}

TEST_CASE("v(s) mass and replica averaging") {
  Network net(6);
  net.add_link(0, 1);
  net.add_link(1, 2);
  const SizeDistribution v = SizeDistribution::of(net);
  CHECK(v.value(1) == doctest::Approx(3.0 / 6));
  CHECK(v.value(3) == doctest::Approx(1.0 / 6));
  CHECK(v.mass() == doctest::Approx(1.0));
  CHECK(v.max_size() == 3);
  net.add_link(3, 4);
  const SizeDistribution w = SizeDistribution::of(net);
  const SizeDistribution both[] = {v, w};
  const SizeDistribution m = SizeDistribution::from_replicas(both);
  CHECK(m.value(1) == doctest::Approx(2.0 / 6));
  CHECK(m.stderr_at(1) == doctest::Approx(1.0 / 6));
  CHECK(m.mass() == doctest::Approx(1.0));
}

TEST_CASE("exact tree distance law matches enumeration and sampling") {
  // enumeration over all 6^4 labelled trees on 6 nodes
  const int n = 6;
  std::vector<double> brute(n, 0.0);
  double pairs = 0.0;
  oracle::for_each_tree(n, [&](const oracle::Edges& e) {
    const auto adj = oracle::adjacency(e, n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        brute[oracle::tree_path(adj, u, v).size() - 1] += 1.0;
        pairs += 1.0;
      }
  });
  const auto exact = exact_tree_distance(n);
  for (int l = 1; l < n; ++l) CHECK(exact[l] == doctest::Approx(brute[l] / pairs).epsilon(1e-12));

  // Monte Carlo at n = 200
  Rng rng(5);
  PathSampler sampler;
  const std::size_t m = 200;
  const auto law = exact_tree_distance(m);
  std::vector<double> hist(m, 0.0);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const Network t = generate_ust(m, rng);
    const NodeId u = uniform_index(rng, m);
    NodeId v = uniform_index(rng, m - 1);
    if (v >= u) ++v;
    hist[*sampler.distance(t, u, v)] += 1.0;
  }
  double mean_mc = 0.0, mean_law = 0.0;
  for (std::size_t l = 1; l < m; ++l) {
    mean_mc += l * hist[l] / draws;
    mean_law += l * law[l];
  }
  CHECK(mean_mc == doctest::Approx(mean_law).epsilon(0.02));
}

TEST_CASE("component path lengths are exact on small components") {
  Network net(5);
  net.add_link(0, 1);
  net.add_link(1, 2);
  net.add_link(3, 4);
  Rng rng(1);
  PathSampler sampler;
  auto rows = component_path_lengths(net, 10, rng, sampler);
  std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.size < b.size; });
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_length == doctest::Approx(1.0));
  CHECK(rows[1].mean_length == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("removed length histogram") {
  const std::vector<std::size_t> l{0, 1, 1, 2, 4};
  const LengthHistogram h = removed_length_histogram(l);
  CHECK(h.total == 4);
  CHECK(h.probability(1) == doctest::Approx(0.5));
  CHECK(h.mean() == doctest::Approx(2.0));
  CHECK(h.max_length() == 4);
  const std::vector<std::size_t> none{0, 0};
  CHECK_THROWS(removed_length_histogram(none));
}
