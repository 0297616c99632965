#include <algorithm>
#include <vector>

#include <doctest.h>

#include "pathperc/random.hpp"

using namespace pathperc;

TEST_CASE("derive_seed is injective over a million replicas") {
  for (std::uint64_t seed : {0ULL, 1ULL, 0xdeadbeefULL}) {
    std::vector<std::uint64_t> s(1000000);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = derive_seed(seed, i);
    std::sort(s.begin(), s.end());
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  }
}

TEST_CASE("uniform_index stays in range and is flat") {
  Rng rng(7);
  std::vector<int> hits(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++hits[uniform_index(rng, 7)];
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - 10000.0) * (h - 10000.0) / 10000.0;
  CHECK(chi2 < 22.5);  // 6 dof, p ~ 0.001
}

TEST_CASE("uniform01 and bernoulli edges") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_FALSE(bernoulli(rng, 0.0));
  CHECK(bernoulli(rng, 1.0));
}
