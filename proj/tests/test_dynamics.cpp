#include <stdexcept>

#include <doctest.h>

#include "pathperc/dynamics.hpp"
#include "pathperc/generators.hpp"
#include "pathperc/phase.hpp"

using namespace pathperc;

namespace {

Network path_graph(std::size_t n) {
  Network net(n);
  for (NodeId i = 0; i + 1 < n; ++i) net.add_link(i, i + 1);
  return net;
}

SchemeConfig cross(double alpha) {
  SchemeConfig c;
  c.alpha = alpha;
  return c;
}

}  // namespace

TEST_CASE("K3 at alpha 0 loses one edge and stays connected") {
  Simulation sim(generate_complete(3), cross(0.0), 1);
  const StepRecord r = sim.step();
  CHECK(r.removed_length == 1);
  CHECK(r.n_components == 1);
  CHECK(sim.network().edge_count() == 2);
  CHECK(r.eta == 1.0);
}

TEST_CASE("forced end-to-end removal shatters a path graph") {
  Simulation sim(path_graph(4), cross(0.0), 1);
  CHECK(sim.communicate(0, 3) == 3);
  CHECK(sim.network().component_count() == 4);
  CHECK(sim.snapshot().eta == 0.0);
}

TEST_CASE("two isolated nodes do nothing") {
  Simulation sim(Network(2), cross(0.0), 1);
  const StepRecord r = sim.step();
  CHECK(r.removed_length == 0);
  CHECK(r.links_added == 0);
  CHECK(r.n_components == 2);
}

TEST_CASE("cross-linking placement counts") {
  Simulation one(generate_complete(4), cross(5.0), 1);
  CHECK(one.place_links() == 0);

  Simulation singles(Network(10), cross(1.0), 1);
  CHECK(singles.place_links() == 1);
  CHECK(singles.network().component_count() == 9);

  Network dimers(4);
  dimers.add_link(0, 1);
  dimers.add_link(2, 3);
  Simulation d(std::move(dimers), cross(2.0), 1);
  CHECK(d.place_links() == 1);
  CHECK(d.network().component_count() == 1);

  // fractional alpha: floor plus a Bernoulli
  Simulation frac(Network(100000), cross(2.3), 3);
  std::size_t total = 0;
  for (int i = 0; i < 4000; ++i) total += frac.place_links();
  CHECK(total / 4000.0 == doctest::Approx(2.3).epsilon(0.01));
}

TEST_CASE("cross-linking keeps a forest a forest") {
  Rng rng(2);
  Simulation sim(generate_ust(300, rng), cross(6.0), 5);
  for (int i = 0; i < 3000; ++i) {
    const StepRecord r = sim.step();
    REQUIRE(sim.network().edge_count() == 300 - r.n_components);
  }
  CHECK(components_consistent(sim.network()));
}

TEST_CASE("redundancy can close cycles") {
  SchemeConfig c = cross(20.0);
  c.scheme = Scheme::Redundancy;
  Rng rng(3);
  Simulation sim(generate_ust(100, rng), c, 1);
  for (int i = 0; i < 50; ++i) sim.step();
  CHECK(sim.network().edge_count() > 100 - sim.network().component_count());
  CHECK(components_consistent(sim.network()));
}

TEST_CASE("same seed, same trajectory") {
  auto run = [](std::uint64_t seed) {
    Rng rng(9);
    Simulation sim(generate_ust(200, rng), cross(4.5), seed);
    return sim.run_trajectory(500, 7);
  };
  const auto a = run(42), b = run(42), c = run(43);
  REQUIRE(a.size() == b.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].removed_length == b[i].removed_length);
    CHECK(a[i].eta == b[i].eta);
    differs = differs || a[i].eta != c[i].eta;
  }
  CHECK(differs);
  CHECK(a.front().step == 7);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(cross(-1.0).validate(10), std::invalid_argument);
  SchemeConfig d = cross(1.0);
  d.scheme = Scheme::Downlink;
  CHECK_THROWS_AS(d.validate(10), std::invalid_argument);
  d.downlink_profile.assign(10, 0.5);
  CHECK_NOTHROW(d.validate(10));
  CHECK_THROWS_AS(d.validate(11), std::invalid_argument);
  CHECK(parse_scheme("redundancy") == Scheme::Redundancy);
  CHECK_THROWS_AS(parse_scheme("flood"), std::invalid_argument);
}

TEST_CASE("downlink with zero acceptance never links") {
  SchemeConfig d = cross(3.0);
  d.scheme = Scheme::Downlink;
  d.downlink_profile.assign(20, 0.0);
  Simulation sim(Network(20), d, 1);
  for (int i = 0; i < 10; ++i) CHECK(sim.step().links_added == 0);
  d.downlink_profile.assign(20, 1.0);
  Simulation all(Network(20), d, 1);
  CHECK(all.place_links() == 3);
}

TEST_CASE("alpha 0 reaches the absorbing fragmented state") {
  ReplicaTemplate t;
  t.initial.kind = TopologyKind::ER;
  Simulation sim = make_replica(t, 200, 0.0, 4);
  const SteadyState st = sim.run_to_steady_state({});
  CHECK(st.converged);
  CHECK(st.eta_mean < 0.02);
}

TEST_CASE("small steady state is stationary and balanced") {
  ReplicaTemplate t;
  Simulation sim = make_replica(t, 300, 3.0, 8);
  SteadyStateParams p;
  p.path_length_pairs = 5;
  const SteadyState st = sim.run_to_steady_state(p);
  CHECK(st.converged);
  CHECK(st.sizes.mass() == doctest::Approx(1.0));
  CHECK(st.mean_removed_length == doctest::Approx(3.0).epsilon(0.05));
  CHECK_FALSE(st.path_lengths.empty());
  CHECK(st.snapshot_lengths.size() > 50);
}
