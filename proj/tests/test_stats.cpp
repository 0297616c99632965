#include <cmath>

#include <doctest.h>

#include "pathperc/phase.hpp"
#include "pathperc/random.hpp"
#include "pathperc/stats.hpp"

using namespace pathperc;

TEST_CASE("mean and stderr") {
  const std::vector<double> x{1, 2, 3, 4};
  const MeanError m = mean_and_stderr(x);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.stderr_mean == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("linear fit recovers a line") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
}

TEST_CASE("power law with cutoff recovers its parameters") {
  std::vector<double> s, v;
  for (int i = 1; i <= 200; ++i) {
    s.push_back(i);
    v.push_back(3.0 * std::pow(i, -2.0) * std::exp(-i / 40.0));
  }
  const CutoffPowerLaw f = fit_power_law_with_cutoff(s, v);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(f.cutoff == doctest::Approx(40.0).epsilon(1e-6));
}

TEST_CASE("KS on uniform data") {
  Rng rng(1);
  std::vector<double> x(2000);
  for (auto& u : x) u = uniform01(rng);
  const double d = ks_statistic(x, [](double t) { return std::clamp(t, 0.0, 1.0); });
  CHECK(ks_pvalue(d, x.size()) > 0.01);
  const double bad = ks_statistic(x, [](double t) { return std::clamp(t * t, 0.0, 1.0); });
  CHECK(ks_pvalue(bad, x.size()) < 1e-6);
  CHECK(ks_pvalue(0.0, 100) == doctest::Approx(1.0));
}

TEST_CASE("discrete KS is zero on an exact match") {
  const std::vector<std::size_t> x{1, 1, 2, 2};
  CHECK(ks_statistic_discrete(x, [](std::size_t k) { return k >= 2 ? 1.0 : k >= 1 ? 0.5 : 0.0; }) ==
        doctest::Approx(0.0));
}

TEST_CASE("crossing interpolation") {
  const std::vector<double> x{0.8, 1.0, 1.2}, d{-0.1, -0.05, 0.05};
  double xs = 0.0;
  REQUIRE(find_upward_crossing(x, d, xs));
  CHECK(xs == doctest::Approx(1.1));
  const std::vector<double> neg{-1, -1, -1};
  CHECK_FALSE(find_upward_crossing(x, neg, xs));
}
