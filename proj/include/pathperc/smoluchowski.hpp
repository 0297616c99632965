#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pathperc {

// --- special functions -----------------------------------------------------

/// Riemann zeta for real r != 1 (analytic continuation for r < 1), by
/// Euler-Maclaurin summation.
double zeta(double r);

/// H_s^(r) = sum_{j=1..s} j^-r. Direct summation up to 10^6 terms, the
/// Euler-Maclaurin expansion beyond.
double generalized_harmonic(double r, std::uint64_t s);
/// The asymptotic expansion alone, valid for any s >= 1 but only accurate to
/// 1e-10 once s is in the hundreds.
double harmonic_euler_maclaurin(double r, std::uint64_t s);

/// Prefix sums H_1^(r) .. H_n^(r) for one exponent.
class HarmonicTable {
 public:
  HarmonicTable(double r, std::size_t n);
  double operator()(std::size_t s) const { return prefix_[s]; }
  double exponent() const { return r_; }
  std::size_t size() const { return prefix_.size() - 1; }

 private:
  double r_;
  std::vector<double> prefix_;
};

// --- tree reference laws ---------------------------------------------------

/// Rayleigh density (l / s) exp(-l^2 / (2 s)): distance between two uniform
/// nodes of a uniform spanning tree on s nodes, in the continuum limit.
double rayleigh_pdf(double l, double s);
double rayleigh_cdf(double l, double s);
/// Expected pieces after removing one uniform path: sqrt(pi/2) sqrt(s) + 1.
double mean_fragment_count(double s);
/// Critical Borel law e^-s s^(s-1) / s!, tail ~ s^-3/2 / sqrt(2 pi).
double borel_pmf(std::uint64_t s);

// --- fragmentation kernel --------------------------------------------------

enum class KernelMode {
  AsymptoticHalf,  // k = 1/2
  PerParent,       // k(s') = sqrt(s') / H_{s'-1}^(1/2), exact mass balance
  /// Exact expected fragment counts for a uniform tree, up to
  /// kExactKernelCap; PerParent above it.
  ExactTree,
};
constexpr std::size_t kExactKernelCap = 256;

/// Expected number of size-j pieces, j = 1..n-1 (index 0 unused), left after
/// deleting the path between two distinct uniform nodes of a uniform random
/// labelled tree on n nodes.
std::vector<double> exact_tree_fragments(std::size_t n);
std::string to_string(KernelMode mode);

/// Expected number of s-components produced by removing a path from an
/// s'-component, r(s|s') = k sqrt(s') s^-3/2.
class FragmentationKernel {
 public:
  FragmentationKernel(std::size_t max_parent, KernelMode mode);
  /// Throws std::invalid_argument unless 1 <= s < s_parent <= max_parent.
  double operator()(std::size_t s, std::size_t s_parent) const;
  double normalization(std::size_t s_parent) const;
  KernelMode mode() const { return mode_; }
  /// Parents up to this size use an explicit table (ExactTree only, else 1).
  std::size_t exact_cap() const { return exact_.empty() ? 1 : exact_.size() - 1; }
  /// Table row for a parent of size <= exact_cap().
  const std::vector<double>& exact_row(std::size_t s_parent) const { return exact_.at(s_parent); }

 private:
  KernelMode mode_;
  std::vector<double> k_;
  std::vector<std::vector<double>> exact_;
};

double fragmentation_kernel(std::size_t s, std::size_t s_parent, KernelMode mode);

// --- steady-state solver ---------------------------------------------------

enum class RateEquation {
  /// Large-component form: removal weight s^2 / <s> (s >= 2), merge loss
  /// 2 alpha s, both restricted to merges that stay within s_max.
  Approximate,
  /// Finite-N form: s(s-1) / (<s> - 1) removal weights, and merges of a
  /// uniform pair among the N(N - <s>) cross-component pairs, with the
  /// delta correction when both sides have the same size.
  FiniteSize,
};
std::string to_string(RateEquation eq);

struct SolverOptions {
  double alpha = 2.0;
  std::size_t s_max = 1000;
  double tol = 1e-10;
  double damping = 0.5;
  std::size_t max_iterations = 200000;
  KernelMode kernel = KernelMode::PerParent;
  RateEquation equation = RateEquation::Approximate;
  /// Network size for RateEquation::FiniteSize; 0 means s_max.
  std::size_t node_count = 0;
};

/// Discretised steady state, f(s) = s v(s) for s = 1..s_max (index 0 unused).
struct SolverState {
  std::vector<double> f;
  std::size_t s_max = 0;
  double alpha = 0.0;
  KernelMode kernel = KernelMode::PerParent;
  RateEquation equation = RateEquation::Approximate;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Number of negative entries clipped to zero over the run.
  std::size_t clipped = 0;

  std::vector<double> v() const;
  double mean_size() const;  // <s> = sum s f(s)
};

/// Damped fixed-point iteration of the steady-state rate balance
/// loss(s) v(s) = gain(s), renormalising sum f = 1 after every update, until
/// the largest absolute imbalance drops below `tol`.
SolverState solve_steady_state(const SolverOptions& opts);

/// Per-size imbalance gain(s) - loss(s) v(s) of `v` under the options'
/// equation. Zero at a fixed point.
std::vector<double> rate_imbalance(std::span<const double> v, const SolverOptions& opts);

// --- moment closed forms ---------------------------------------------------

struct MomentReport {
  double tau = 0.0;
  double s_max = 0.0;
  double k_exact = 0.0;
  double k_asym = 0.5;
  double alpha_star_exact = 0.0;
  double alpha_star_asym = 0.0;
  double alpha_star_balance = 0.0;
  std::map<std::pair<double, std::uint64_t>, double> harmonic_cache;
};

/// k and alpha* from the power-law ansatz v(s) ~ s^-tau up to s_max, both
/// from the harmonic-number expressions and from their leading asymptotics.
/// Throws std::invalid_argument unless 1 < tau < 3 and s_max >= 2.
MomentReport critical_alpha_closed_form(double tau, std::uint64_t s_max);

/// Leading-order alpha* from balancing mean removed path length against
/// alpha: (3 - tau)/(7 - 2 tau) sqrt(2 pi) sqrt(s_max).
double balance_alpha_star(double tau, double s_max);
/// Ratio of the balance estimate to the moment estimate, sqrt(2 pi)/zeta(3/2).
double balance_to_moment_ratio();

enum class AlphaScaling { Constant, SqrtN };

struct TauSelection {
  double tau = 0.0;
  double alpha_exponent = 0.0;  // alpha ~ s_max^c
  /// Exponents of s_max on each side of the third-moment balance at tau.
  double lhs_exponent = 0.0;  // 5 - tau
  double rhs_exponent = 0.0;  // c + 3 (3 - tau)
  std::string derivation;
};
/// Matches s_max^(5 - tau) against s_max^(c + 3(3 - tau)).
TauSelection select_tau(AlphaScaling scaling);

// --- removed path length ---------------------------------------------------

/// Rayleigh(sqrt s) integrated over [l - 1/2, l + 1/2), renormalised over
/// l >= 1. Index 0 is zero.
std::vector<double> discretized_rayleigh(double s, std::size_t l_max);

/// Distance between two distinct uniform nodes of a uniform labelled tree on
/// n nodes, P(D = l) for l = 1..n-1 (index 0 unused).
std::vector<double> exact_tree_distance(std::size_t n);

enum class LengthKernel {
  Rayleigh,   // continuum law, binned
  ExactTree,  // finite-n tree law
};
std::string to_string(LengthKernel kernel);

/// p(l) proportional to sum_s s(s-1) v(s) P(l|s). `v` is indexed by s.
/// Throws std::invalid_argument if no component has s >= 2.
std::vector<double> predict_removed_length_distribution(std::span<const double> v,
                                                        LengthKernel kernel = LengthKernel::Rayleigh);

/// Largest l worth tabulating for components up to size s_max.
std::size_t removed_length_support(std::size_t s_max);

}  // namespace pathperc
