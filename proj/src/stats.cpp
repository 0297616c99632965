#include "pathperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathperc {

MeanError mean_and_stderr(std::span<const double> xs) {
  MeanError out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double n = static_cast<double>(xs.size());
  out.mean = sum / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("linear fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

CutoffPowerLaw fit_power_law_with_cutoff(std::span<const double> s, std::span<const double> v) {
  // Normal equations for y = a + b log s + c s.
  if (s.size() != v.size() || s.size() < 3) throw std::invalid_argument("cutoff fit needs >= 3 points");
  double m[3][4] = {};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(v[i] > 0.0)) throw std::invalid_argument("cutoff fit needs positive values");
    const double f[3] = {1.0, std::log(s[i]), s[i]};
    const double y = std::log(v[i]);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += f[r] * f[c];
      m[r][3] += f[r] * y;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
    if (std::abs(m[col][col]) < 1e-300) throw std::invalid_argument("cutoff fit is singular");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  CutoffPowerLaw out;
  out.log_amplitude = m[0][3] / m[0][0];
  out.exponent = -m[1][3] / m[1][1];
  const double rate = -m[2][3] / m[2][2];
  out.cutoff = rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<BinnedPoint> log_bin(std::span<const double> values, std::span<const double> errors,
                                 std::size_t lo, std::size_t hi, double ratio) {
  if (lo < 1 || hi < lo || ratio <= 1.0) throw std::invalid_argument("bad log-bin range");
  hi = std::min(hi, values.size() - 1);
  std::vector<BinnedPoint> out;
  std::size_t start = lo;
  while (start <= hi) {
    auto end = static_cast<std::size_t>(std::floor(static_cast<double>(start) * ratio));
    end = std::clamp(end, start + 1, hi + 1);
    double sum = 0.0;
    double var = 0.0;
    for (std::size_t s = start; s < end; ++s) {
      sum += values[s];
      if (!errors.empty()) var += errors[s] * errors[s];
    }
    const double width = static_cast<double>(end - start);
    if (sum > 0.0) {
      const double centre = std::sqrt(static_cast<double>(start) * static_cast<double>(end - 1));
      out.push_back({centre, sum / width, std::sqrt(var) / width});
    }
    start = end;
  }
  return out;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("empty KS sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_statistic_discrete(std::span<const std::size_t> sample,
                             const std::function<double(std::size_t)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("empty KS sample");
  std::vector<std::size_t> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  // Both CDFs are right-continuous steps on the integers; compare at every
  // integer from 0 to the largest observation.
  for (std::size_t k = 0; k <= sorted.back(); ++k) {
    while (i < sorted.size() && sorted[i] <= k) ++i;
    d = std::max(d, std::abs(static_cast<double>(i) / n - cdf(k)));
  }
  return d;
}

double ks_pvalue(double statistic, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty KS sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
  return ks_pvalue(statistic, static_cast<std::size_t>(std::max(1.0, std::round(ne))));
}

}  // namespace pathperc
