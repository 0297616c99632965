#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "pathperc/smoluchowski.hpp"
#include "tree_oracle.hpp"

using namespace pathperc;

namespace {

long double brute_harmonic(double r, std::uint64_t s) {
  long double h = 0.0L;
  for (std::uint64_t j = s; j >= 1; --j) h += std::pow(static_cast<long double>(j), -static_cast<long double>(r));
  return h;
}

// Component sizes after deleting the tree path u..v.
std::vector<int> fragments(const oracle::Edges& e, int n, int u, int v) {
  const auto adj = oracle::adjacency(e, n);
  const auto path = oracle::tree_path(adj, u, v);
  std::set<std::pair<int, int>> cut;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    cut.insert({std::min(path[k], path[k + 1]), std::max(path[k], path[k + 1])});
  std::vector<int> label(n, -1), sizes;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    int count = 0;
    std::vector<int> stack{s};
    label[s] = static_cast<int>(sizes.size());
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      ++count;
      for (int y : adj[x]) {
        if (label[y] >= 0 || cut.count({std::min(x, y), std::max(x, y)})) continue;
        label[y] = label[s];
        stack.push_back(y);
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

}  // namespace

TEST_CASE("generalized harmonic numbers") {
  CHECK(generalized_harmonic(0.5, 1) == 1.0);
  CHECK(generalized_harmonic(2.0, 1) == 1.0);
  const double h4 = 1.0 + 1.0 / std::sqrt(2.0) + 1.0 / std::sqrt(3.0) + 0.5;
  CHECK(generalized_harmonic(0.5, 4) == doctest::Approx(h4).epsilon(1e-14));
  CHECK(generalized_harmonic(0.5, 4) == doctest::Approx(2.78449).epsilon(1e-4));
  for (double r : {0.5, 1.0, 1.5, 2.5, 3.0})
    for (std::uint64_t s : {10ULL, 1000ULL, 100000ULL})
      CHECK(generalized_harmonic(r, s) == doctest::Approx(static_cast<double>(brute_harmonic(r, s))).epsilon(1e-12));
  // past the direct-sum range
  const std::uint64_t big = 3000000;
  CHECK(generalized_harmonic(0.5, big) == doctest::Approx(static_cast<double>(brute_harmonic(0.5, big))).epsilon(1e-12));
  CHECK(harmonic_euler_maclaurin(1.5, 500) == doctest::Approx(static_cast<double>(brute_harmonic(1.5, 500))).epsilon(1e-10));
  // tail zeta(3/2) - H_s ~ 2/sqrt(s)
  CHECK(zeta(1.5) - generalized_harmonic(1.5, 1000000) == doctest::Approx(2e-3).epsilon(1e-3));
  const HarmonicTable t(0.5, 100);
  CHECK(t(100) == doctest::Approx(generalized_harmonic(0.5, 100)));
}

TEST_CASE("zeta against the standard library") {
  for (double r : {1.5, 2.0, 2.5, 3.0, 4.5}) CHECK(zeta(r) == doctest::Approx(std::riemann_zeta(r)).epsilon(1e-12));
  CHECK(zeta(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
  CHECK(zeta(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
  CHECK(zeta(1.5) == doctest::Approx(2.612375348685488).epsilon(1e-13));
}

TEST_CASE("Rayleigh and Borel laws") {
  const double s = 1000.0;
  CHECK(rayleigh_pdf(0.0, s) == 0.0);
  // mode at sqrt(s)
  const double m = std::sqrt(s);
  CHECK(rayleigh_pdf(m, s) > rayleigh_pdf(m - 0.5, s));
  CHECK(rayleigh_pdf(m, s) > rayleigh_pdf(m + 0.5, s));
  CHECK(rayleigh_cdf(1e9, s) == doctest::Approx(1.0));
  CHECK(mean_fragment_count(1000.0) == doctest::Approx(40.633).epsilon(1e-4));
  double total = 0.0;
  for (std::uint64_t k = 1; k <= 200000; ++k) total += borel_pmf(k);
  CHECK(total == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(borel_pmf(10000) * std::pow(10000.0, 1.5) * std::sqrt(2 * std::numbers::pi) ==
        doctest::Approx(1.0).epsilon(1e-3));
  const auto d = discretized_rayleigh(100.0, 100);
  CHECK(std::accumulate(d.begin(), d.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("exact tree laws match brute-force enumeration") {
  for (int n : {3, 5, 7}) {
    std::vector<double> frag(n, 0.0);
    double pairs = 0.0;
    oracle::for_each_tree(n, [&](const oracle::Edges& e) {
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          for (int s : fragments(e, n, u, v)) frag[s] += 1.0;
          pairs += 1.0;
        }
    });
    const auto exact = exact_tree_fragments(n);
    for (int j = 1; j < n; ++j) CHECK(exact[j] == doctest::Approx(frag[j] / pairs).epsilon(1e-12));
  }
}

TEST_CASE("kernel mass") {
  // fragments carry all nodes of the parent
  for (std::size_t sp : {2u, 10u, 100u, 1000u, 10000u}) {
    const FragmentationKernel k(sp, KernelMode::PerParent);
    double mass = 0.0;
    for (std::size_t s = 1; s < sp; ++s) mass += s * k(s, sp);
    CHECK(mass == doctest::Approx(sp).epsilon(1e-10));
  }
  const FragmentationKernel half(10000, KernelMode::AsymptoticHalf);
  double mass = 0.0;
  for (std::size_t s = 1; s < 10000; ++s) mass += s * half(s, 10000);
  CHECK(mass / 10000 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(fragmentation_kernel(1, 4, KernelMode::AsymptoticHalf) == doctest::Approx(0.5 * 2.0));

  const FragmentationKernel ex(600, KernelMode::ExactTree);
  CHECK(ex.exact_cap() == kExactKernelCap);
  for (std::size_t sp : {2u, 17u, 256u, 257u, 600u}) {
    double m = 0.0;
    for (std::size_t s = 1; s < sp; ++s) m += s * ex(s, sp);
    CHECK(m == doctest::Approx(sp).epsilon(1e-9));
  }
  CHECK_THROWS_AS(ex(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(ex(0, 5), std::invalid_argument);
}

TEST_CASE("solver converges and conserves mass") {
  for (RateEquation eq : {RateEquation::Approximate, RateEquation::FiniteSize}) {
    SolverOptions o;
    o.alpha = 2.0;
    o.s_max = 300;
    o.equation = eq;
    o.kernel = KernelMode::ExactTree;
    o.tol = 1e-11;
    const SolverState st = solve_steady_state(o);
    CHECK(st.converged);
    const double mass = std::accumulate(st.f.begin() + 1, st.f.end(), 0.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    const auto v = st.v();
    double worst = 0.0;
    for (double r : rate_imbalance(v, o)) worst = std::max(worst, std::abs(r));
    CHECK(worst < 1e-10);
    for (std::size_t s = 1; s <= o.s_max; ++s) REQUIRE(v[s] >= 0.0);
  }
  SolverOptions bad;
  bad.alpha = -1.0;
  CHECK_THROWS_AS(solve_steady_state(bad), std::invalid_argument);
}

TEST_CASE("closed forms") {
  const MomentReport big = critical_alpha_closed_form(2.25, 1000000);
  CHECK(big.alpha_star_asym / 1000.0 == doctest::Approx(0.3 * zeta(1.5)).epsilon(1e-12));
  CHECK(big.alpha_star_asym / 1000.0 == doctest::Approx(0.7837).epsilon(5e-4));
  CHECK(big.k_asym == 0.5);
  const MomentReport two = critical_alpha_closed_form(2.0, 1000000);
  CHECK(two.alpha_star_asym / 1000.0 == doctest::Approx(zeta(1.5) / 3).epsilon(1e-12));
  CHECK(balance_alpha_star(2.25, 1.0) == doctest::Approx(0.3 * std::sqrt(2 * std::numbers::pi)));
  CHECK(balance_to_moment_ratio() == doctest::Approx(0.9596).epsilon(1e-4));
  CHECK(big.alpha_star_balance / big.alpha_star_asym == doctest::Approx(balance_to_moment_ratio()));
  // k tends to 1/2
  const MomentReport k1 = critical_alpha_closed_form(2.25, 1000);
  const MomentReport k2 = critical_alpha_closed_form(2.25, 100000000);
  CHECK(std::abs(k2.k_exact - 0.5) < std::abs(k1.k_exact - 0.5));
  CHECK(std::abs(k2.k_exact - 0.5) < 0.01);
  CHECK_THROWS_AS(critical_alpha_closed_form(3.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(critical_alpha_closed_form(2.0, 1), std::invalid_argument);
}

TEST_CASE("tau selection") {
  CHECK(select_tau(AlphaScaling::Constant).tau == doctest::Approx(2.0));
  const TauSelection t = select_tau(AlphaScaling::SqrtN);
  CHECK(t.tau == doctest::Approx(2.25));
  CHECK(t.lhs_exponent == doctest::Approx(t.rhs_exponent));
}

TEST_CASE("removed length prediction") {
  // a single component size reduces to its binned Rayleigh
  std::vector<double> v(401, 0.0);
  v[400] = 1.0 / 400;
  const auto p = predict_removed_length_distribution(v);
  const auto r = discretized_rayleigh(400.0, p.size() - 1);
  for (std::size_t l = 1; l < p.size(); ++l) CHECK(p[l] == doctest::Approx(r[l]).epsilon(1e-9));
  const auto q = predict_removed_length_distribution(v, LengthKernel::ExactTree);
  const auto d = exact_tree_distance(400);
  for (std::size_t l = 1; l < q.size(); ++l) CHECK(q[l] == doctest::Approx(d[l]).epsilon(1e-9));
  const std::vector<double> singles{0.0, 1.0};
  CHECK_THROWS_AS(predict_removed_length_distribution(singles), std::invalid_argument);
}
