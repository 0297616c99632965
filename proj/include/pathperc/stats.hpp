#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pathperc {

struct MeanError {
  double mean = 0.0;
  double stderr_mean = 0.0;
};
MeanError mean_and_stderr(std::span<const double> xs);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
/// Ordinary least squares y = intercept + slope x. Needs two distinct x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// log v = log A - tau log s - s / cutoff, fitted by least squares in log
/// space. `cutoff` is infinite when the fitted decay rate is not positive.
struct CutoffPowerLaw {
  double exponent = 0.0;  // tau, reported positive for a decaying law
  double cutoff = 0.0;
  double log_amplitude = 0.0;
};
CutoffPowerLaw fit_power_law_with_cutoff(std::span<const double> s, std::span<const double> v);

/// Geometric bins over [lo, hi]; returns (geometric centre, mean value per
/// integer s in the bin) for bins containing at least one positive value.
struct BinnedPoint {
  double x = 0.0;
  double y = 0.0;
  double y_err = 0.0;
};
std::vector<BinnedPoint> log_bin(std::span<const double> values, std::span<const double> errors,
                                 std::size_t lo, std::size_t hi, double ratio);

/// sup |F_n - F| for a sample against a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// sup |F_n - F| for integer data against a CDF known on the integers,
/// evaluated where both step functions jump. `cdf(k)` is P(X <= k).
double ks_statistic_discrete(std::span<const std::size_t> sample,
                             const std::function<double(std::size_t)>& cdf);

/// Asymptotic Kolmogorov p-value with Stephens' small-sample correction.
double ks_pvalue(double statistic, std::size_t n);

/// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m);

}  // namespace pathperc
