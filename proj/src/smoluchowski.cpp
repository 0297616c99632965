#include "pathperc/smoluchowski.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pathperc {

namespace {

// B_2 .. B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,     1.0 / 42.0,           -1.0 / 30.0,       5.0 / 66.0,
    -691.0 / 2730.0,  7.0 / 6.0,       -3617.0 / 510.0,      43867.0 / 798.0,   -174611.0 / 330.0,
};

constexpr std::uint64_t kDirectLimit = 1'000'000;

// sum_{k=1..terms} B_2k/(2k)! * (r)_{2k-1} * x^(-r-2k+1), with (r)_n rising.
long double em_tail(double r, double x, int terms) {
  long double total = 0.0L;
  long double rising = r;  // (r)_1
  long double factorial = 2.0L;
  const long double lx = std::log(static_cast<long double>(x));
  for (int k = 1; k <= terms; ++k) {
    if (k > 1) {
      rising *= (r + 2 * k - 3) * static_cast<long double>(r + 2 * k - 2);
      factorial *= (2.0L * k - 1.0L) * (2.0L * k);
    }
    total += kBernoulli[k - 1] / factorial * rising * std::exp((-r - 2 * k + 1) * lx);
  }
  return total;
}

long double direct_sum(double r, std::uint64_t s) {
  // Smallest terms first when they decrease.
  long double total = 0.0L;
  if (r > 0.0) {
    for (std::uint64_t j = s; j >= 1; --j) total += std::pow(static_cast<long double>(j), -r);
  } else {
    for (std::uint64_t j = 1; j <= s; ++j) total += std::pow(static_cast<long double>(j), -r);
  }
  return total;
}

}  // namespace

double zeta(double r) {
  if (r == 1.0) throw std::invalid_argument("zeta has a pole at 1");
  constexpr std::uint64_t m = 32;
  const long double head = direct_sum(r, m - 1);
  const double x = static_cast<double>(m);
  const long double tail = std::pow(static_cast<long double>(x), 1.0L - r) / (r - 1.0L) +
                           0.5L * std::pow(static_cast<long double>(x), -static_cast<long double>(r)) +
                           em_tail(r, x, 10);
  return static_cast<double>(head + tail);
}

double harmonic_euler_maclaurin(double r, std::uint64_t s) {
  if (s == 0) return 0.0;
  const auto x = static_cast<long double>(s);
  if (r == 1.0) {
    long double h = std::log(x) + std::numbers::egamma_v<long double> + 0.5L / x;
    long double xp = x * x;
    for (int k = 1; k <= 6; ++k) {
      h -= kBernoulli[k - 1] / (2.0L * k * xp);
      xp *= x * x;
    }
    return static_cast<double>(h);
  }
  const long double h = zeta(r) + std::pow(x, 1.0L - r) / (1.0L - r) + 0.5L * std::pow(x, -static_cast<long double>(r)) -
                        em_tail(r, static_cast<double>(s), 8);
  return static_cast<double>(h);
}

double generalized_harmonic(double r, std::uint64_t s) {
  if (s <= kDirectLimit) return static_cast<double>(direct_sum(r, s));
  return harmonic_euler_maclaurin(r, s);
}

HarmonicTable::HarmonicTable(double r, std::size_t n) : r_(r), prefix_(n + 1, 0.0) {
  long double acc = 0.0L;
  for (std::size_t j = 1; j <= n; ++j) {
    acc += std::pow(static_cast<long double>(j), -static_cast<long double>(r));
    prefix_[j] = static_cast<double>(acc);
  }
}

// --- reference laws --------------------------------------------------------

double rayleigh_pdf(double l, double s) {
  if (l <= 0.0) return 0.0;
  return l / s * std::exp(-l * l / (2.0 * s));
}

double rayleigh_cdf(double l, double s) {
  if (l <= 0.0) return 0.0;
  return -std::expm1(-l * l / (2.0 * s));
}

double mean_fragment_count(double s) { return std::sqrt(std::numbers::pi / 2.0) * std::sqrt(s) + 1.0; }

double borel_pmf(std::uint64_t s) {
  if (s == 0) return 0.0;
  const double x = static_cast<double>(s);
  return std::exp(-x + (x - 1.0) * std::log(x) - std::lgamma(x + 1.0));
}

// --- kernel ----------------------------------------------------------------

std::string to_string(KernelMode mode) {
  switch (mode) {
    case KernelMode::AsymptoticHalf:
      return "asymptotic_half";
    case KernelMode::PerParent:
      return "per_parent_normalized";
    case KernelMode::ExactTree:
      return "exact_tree";
  }
  return "unknown";
}

std::vector<double> exact_tree_fragments(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need a tree of at least 2 nodes");
  std::vector<double> r(n, 0.0);
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  // P(D = l) = (l+1) prod_{i=2..l} (n-i) / n^l
  double log_prod = 0.0;
  for (std::size_t l = 1; l < n; ++l) {
    if (l >= 2) log_prod += std::log(nn - static_cast<double>(l));
    const double kk = static_cast<double>(l + 1);  // path nodes = forest roots
    const double p_len = std::exp(std::log(kk) + log_prod - static_cast<double>(l) * ln);
    if (p_len < 1e-300) break;
    // Tree hanging at one given root of a uniform forest on n nodes with k
    // given roots has j nodes with probability
    // C(n-k, j-1) j^(j-2) (k-1) (n-j)^(n-j-k) / (k n^(n-k-1)).
    const std::size_t free_nodes = n - (l + 1);
    const double base = std::log(kk - 1.0) - std::log(kk) - (nn - kk - 1.0) * ln +
                        std::lgamma(static_cast<double>(free_nodes) + 1.0);
    for (std::size_t j = 1; j <= free_nodes + 1; ++j) {
      const double jj = static_cast<double>(j);
      const double lp = base - std::lgamma(jj) - std::lgamma(static_cast<double>(free_nodes - j + 1) + 1.0) +
                        (jj - 2.0) * std::log(jj) + (nn - jj - kk) * std::log(nn - jj);
      r[j] += p_len * kk * std::exp(lp);
    }
  }
  return r;
}

FragmentationKernel::FragmentationKernel(std::size_t max_parent, KernelMode mode)
    : mode_(mode), k_(max_parent + 1, 0.5) {
  if (mode != KernelMode::AsymptoticHalf) {
    const HarmonicTable h(0.5, max_parent);
    for (std::size_t p = 2; p <= max_parent; ++p) k_[p] = std::sqrt(static_cast<double>(p)) / h(p - 1);
  }
  if (mode == KernelMode::ExactTree) {
    const std::size_t cap = std::min(max_parent, kExactKernelCap);
    exact_.resize(cap + 1);
    for (std::size_t p = 2; p <= cap; ++p) exact_[p] = exact_tree_fragments(p);
  }
}

double FragmentationKernel::normalization(std::size_t s_parent) const { return k_.at(s_parent); }

double FragmentationKernel::operator()(std::size_t s, std::size_t s_parent) const {
  if (s < 1 || s >= s_parent) throw std::invalid_argument("kernel needs 1 <= s < s_parent");
  if (s_parent >= k_.size()) throw std::invalid_argument("parent size beyond kernel table");
  if (s_parent <= exact_cap() && !exact_.empty()) return exact_[s_parent][s];
  const double sp = static_cast<double>(s_parent);
  const double sc = static_cast<double>(s);
  return k_[s_parent] * std::sqrt(sp) / (sc * std::sqrt(sc));
}

double fragmentation_kernel(std::size_t s, std::size_t s_parent, KernelMode mode) {
  if (s < 1 || s >= s_parent) throw std::invalid_argument("kernel needs 1 <= s < s_parent");
  if (mode == KernelMode::ExactTree && s_parent <= kExactKernelCap) return exact_tree_fragments(s_parent)[s];
  double k = 0.5;
  if (mode != KernelMode::AsymptoticHalf) {
    k = std::sqrt(static_cast<double>(s_parent)) / generalized_harmonic(0.5, s_parent - 1);
  }
  const double sc = static_cast<double>(s);
  return k * std::sqrt(static_cast<double>(s_parent)) / (sc * std::sqrt(sc));
}

// --- solver ----------------------------------------------------------------

std::string to_string(RateEquation eq) { return eq == RateEquation::Approximate ? "approximate" : "finite_size"; }

std::vector<double> SolverState::v() const {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t s = 1; s < f.size(); ++s) out[s] = f[s] / static_cast<double>(s);
  return out;
}

double SolverState::mean_size() const {
  double m = 0.0;
  for (std::size_t s = 1; s < f.size(); ++s) m += static_cast<double>(s) * f[s];
  return m;
}

namespace {

void check_options(const SolverOptions& o) {
  if (!(o.alpha > 0.0)) throw std::invalid_argument("solver needs alpha > 0");
  if (o.s_max < 10) throw std::invalid_argument("solver needs s_max >= 10");
  if (!(o.damping > 0.0 && o.damping <= 1.0)) throw std::invalid_argument("damping must be in (0,1]");
  if (!(o.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

/// Gain and loss rate per size, in per-site units, for the current v.
class RateTerms {
 public:
  explicit RateTerms(const SolverOptions& o)
      : o_(o),
        n_(o.node_count == 0 ? o.s_max : o.node_count),
        kernel_(o.s_max, o.kernel),
        gain_(o.s_max + 1, 0.0),
        loss_(o.s_max + 1, 0.0),
        suffix_(o.s_max + 2, 0.0),
        w_(o.s_max + 1, 0.0),
        prefix_f_(o.s_max + 1, 0.0) {
    if (o.equation == RateEquation::FiniteSize && n_ < o.s_max) {
      throw std::invalid_argument("finite-size equation needs node_count >= s_max");
    }
  }

  void evaluate(std::span<const double> v) {
    const std::size_t smax = o_.s_max;
    double second = 0.0;  // <s> = sum s^2 v(s)
    for (std::size_t s = 1; s <= smax; ++s) second += static_cast<double>(s) * static_cast<double>(s) * v[s];
    const bool finite = o_.equation == RateEquation::FiniteSize;
    const double denom = finite ? second - 1.0 : second;

    // Fragmentation gain: s^-3/2 sum_{s' > s} w(s') k(s') sqrt(s').
    suffix_[smax + 1] = 0.0;
    for (std::size_t p = smax; p >= 1; --p) {
      const double sp = static_cast<double>(p);
      const double weight = finite ? sp * (sp - 1.0) : sp * sp;
      const double w = denom > 0.0 ? weight * v[p] / denom : 0.0;
      w_[p] = w;
      const bool tabled = p <= kernel_.exact_cap();
      suffix_[p] = suffix_[p + 1] + (p >= 2 && !tabled ? w * kernel_.normalization(p) * std::sqrt(sp) : 0.0);
    }
    const double n = static_cast<double>(n_);
    // Node mass in components of size <= q; merges past s_max are dropped
    // from gain and loss alike, so the truncated system conserves mass.
    prefix_f_[0] = 0.0;
    for (std::size_t q = 1; q <= smax; ++q) prefix_f_[q] = prefix_f_[q - 1] + static_cast<double>(q) * v[q];
    // Uniform cross-component pair: N(N - <s>) ordered pairs in total.
    const double cross = finite ? n - second : 1.0;

    for (std::size_t s = 1; s <= smax; ++s) {
      const double sc = static_cast<double>(s);
      double coag = 0.0;
      for (std::size_t p = 1; p < s; ++p) {
        const std::size_t q = s - p;
        const double fp = static_cast<double>(p) * v[p];
        if (finite) {
          coag += fp * static_cast<double>(q) * std::max(0.0, n * v[q] - (q == p ? 1.0 : 0.0));
        } else {
          coag += fp * static_cast<double>(q) * v[q];
        }
      }
      gain_[s] = suffix_[s + 1] / (sc * std::sqrt(sc));
      for (std::size_t p = s + 1; p <= kernel_.exact_cap(); ++p) gain_[s] += w_[p] * kernel_.exact_row(p)[s];
      if (finite) {
        if (cross > 0.0) {
          gain_[s] += o_.alpha * coag / cross;
          // partners of size <= s_max - s, excluding the component itself
          double partners = n * prefix_f_[smax - s];
          if (s <= smax - s) partners += sc * (std::max(0.0, n * v[s] - 1.0) - n * v[s]);
          loss_[s] = 2.0 * o_.alpha * sc * partners / cross;
        } else {
          loss_[s] = 0.0;
        }
        if (s >= 2 && denom > 0.0) loss_[s] += sc * (sc - 1.0) / denom;
      } else {
        gain_[s] += o_.alpha * coag;
        // a singleton holds no pair, so it is never picked for removal
        loss_[s] = (s >= 2 ? sc * sc / denom : 0.0) + 2.0 * o_.alpha * sc * prefix_f_[smax - s];
      }
    }
  }

  std::span<const double> gain() const { return gain_; }
  std::span<const double> loss() const { return loss_; }

 private:
  const SolverOptions& o_;
  std::size_t n_;
  FragmentationKernel kernel_;
  std::vector<double> gain_;
  std::vector<double> loss_;
  std::vector<double> suffix_;
  std::vector<double> w_;
  std::vector<double> prefix_f_;
};

void normalise(std::vector<double>& v) {
  double mass = 0.0;
  for (std::size_t s = 1; s < v.size(); ++s) mass += static_cast<double>(s) * v[s];
  for (double& x : v) x /= mass;
}

}  // namespace

std::vector<double> rate_imbalance(std::span<const double> v, const SolverOptions& opts) {
  check_options(opts);
  if (v.size() != opts.s_max + 1) throw std::invalid_argument("v must have s_max + 1 entries");
  RateTerms terms(opts);
  terms.evaluate(v);
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t s = 1; s < v.size(); ++s) out[s] = terms.gain()[s] - terms.loss()[s] * v[s];
  return out;
}

SolverState solve_steady_state(const SolverOptions& opts) {
  check_options(opts);
  const std::size_t smax = opts.s_max;
  if (opts.equation == RateEquation::FiniteSize && opts.node_count != 0 && opts.node_count <= 1) {
    throw std::invalid_argument("finite-size equation needs node_count >= 2");
  }
  // Start from a cut-off s^-2 law.
  std::vector<double> v(smax + 1, 0.0);
  const double cut = 4.0 * opts.alpha * opts.alpha + 1.0;
  for (std::size_t s = 1; s <= smax; ++s) {
    const double sc = static_cast<double>(s);
    v[s] = std::exp(-sc / cut) / (sc * sc);
  }
  normalise(v);

  SolverState st;
  st.s_max = smax;
  st.alpha = opts.alpha;
  st.kernel = opts.kernel;
  st.equation = opts.equation;

  RateTerms terms(opts);
  for (st.iterations = 1; st.iterations <= opts.max_iterations; ++st.iterations) {
    terms.evaluate(v);
    const auto gain = terms.gain();
    const auto loss = terms.loss();
    double residual = 0.0;
    for (std::size_t s = 1; s <= smax; ++s) residual = std::max(residual, std::abs(gain[s] - loss[s] * v[s]));
    st.residual = residual;
    if (residual < opts.tol) {
      st.converged = true;
      break;
    }
    for (std::size_t s = 1; s <= smax; ++s) {
      const double target = loss[s] > 0.0 ? gain[s] / loss[s] : v[s];
      double next = (1.0 - opts.damping) * v[s] + opts.damping * target;
      if (next < 0.0) {
        next = 0.0;
        ++st.clipped;
      }
      v[s] = next;
    }
    normalise(v);
  }
  if (!st.converged) st.iterations = opts.max_iterations;

  st.f.assign(smax + 1, 0.0);
  for (std::size_t s = 1; s <= smax; ++s) st.f[s] = static_cast<double>(s) * v[s];
  return st;
}

// --- closed forms ----------------------------------------------------------

MomentReport critical_alpha_closed_form(double tau, std::uint64_t s_max) {
  if (!(tau > 1.0)) throw std::invalid_argument("tau must exceed 1");
  if (tau >= 3.0) throw std::invalid_argument("tau >= 3: logarithmic corrections, no sqrt scaling");
  if (s_max < 2) throw std::invalid_argument("s_max must be >= 2");
  MomentReport rep;
  rep.tau = tau;
  rep.s_max = static_cast<double>(s_max);
  auto h = [&](double r) {
    const double value = generalized_harmonic(r, s_max);
    rep.harmonic_cache[{r, s_max}] = value;
    return value;
  };
  const double h1 = h(tau - 1.0);
  const double h2 = h(tau - 2.0);
  const double h3 = h(tau - 3.0);
  const double h52 = h(tau - 2.5);
  const double zeta_half = zeta(0.5);
  const double zeta_three_halves = zeta(1.5);

  rep.k_exact = h3 / (2.0 * h3 + zeta_half * h52 - h2);
  rep.alpha_star_exact = rep.k_exact * (zeta_three_halves * h52 - 2.0 * h2 - h1) / h2 - 1.0;
  rep.k_asym = 0.5;
  const double prefactor = (3.0 - tau) / (7.0 - 2.0 * tau);
  rep.alpha_star_asym = prefactor * zeta_three_halves * std::sqrt(rep.s_max);
  rep.alpha_star_balance = balance_alpha_star(tau, rep.s_max);
  return rep;
}

double balance_alpha_star(double tau, double s_max) {
  if (tau >= 3.0) throw std::invalid_argument("tau >= 3: logarithmic corrections, no sqrt scaling");
  return (3.0 - tau) / (7.0 - 2.0 * tau) * std::sqrt(2.0 * std::numbers::pi) * std::sqrt(s_max);
}

double balance_to_moment_ratio() { return std::sqrt(2.0 * std::numbers::pi) / zeta(1.5); }

TauSelection select_tau(AlphaScaling scaling) {
  TauSelection sel;
  sel.alpha_exponent = scaling == AlphaScaling::Constant ? 0.0 : 0.5;
  // 5 - tau = c + 3 (3 - tau)  =>  tau = 2 + c / 2
  sel.tau = 2.0 + sel.alpha_exponent / 2.0;
  sel.lhs_exponent = 5.0 - sel.tau;
  sel.rhs_exponent = sel.alpha_exponent + 3.0 * (3.0 - sel.tau);
  sel.derivation = scaling == AlphaScaling::Constant
                       ? "alpha ~ s_max^0: 5 - tau = 3(3 - tau) => tau = 2"
                       : "alpha ~ s_max^(1/2): 5 - tau = 1/2 + 3(3 - tau) => tau = 9/4";
  return sel;
}

// --- removed path length ---------------------------------------------------

std::size_t removed_length_support(std::size_t s_max) {
  // exp(-l^2 / 2s) < 1e-15 beyond this.
  const double l = std::sqrt(70.0 * static_cast<double>(std::max<std::size_t>(s_max, 2)));
  return std::min<std::size_t>(s_max, static_cast<std::size_t>(std::ceil(l)) + 1);
}

std::vector<double> discretized_rayleigh(double s, std::size_t l_max) {
  std::vector<double> p(l_max + 1, 0.0);
  const double below = rayleigh_cdf(0.5, s);
  const double norm = 1.0 - below;
  for (std::size_t l = 1; l <= l_max; ++l) {
    const double lo = static_cast<double>(l) - 0.5;
    p[l] = (rayleigh_cdf(lo + 1.0, s) - rayleigh_cdf(lo, s)) / norm;
  }
  return p;
}

std::vector<double> exact_tree_distance(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need a tree of at least 2 nodes");
  std::vector<double> p(n, 0.0);
  const double nn = static_cast<double>(n);
  double log_prod = 0.0;
  for (std::size_t l = 1; l < n; ++l) {
    if (l >= 2) log_prod += std::log(nn - static_cast<double>(l));
    p[l] = std::exp(std::log(static_cast<double>(l + 1)) + log_prod - static_cast<double>(l) * std::log(nn));
  }
  return p;
}

std::string to_string(LengthKernel kernel) { return kernel == LengthKernel::Rayleigh ? "rayleigh" : "exact_tree"; }

std::vector<double> predict_removed_length_distribution(std::span<const double> v, LengthKernel kernel) {
  std::size_t top = 0;
  double total_weight = 0.0;
  for (std::size_t s = 2; s < v.size(); ++s) {
    if (v[s] > 0.0) {
      top = s;
      total_weight += static_cast<double>(s) * static_cast<double>(s - 1) * v[s];
    }
  }
  if (top == 0 || !(total_weight > 0.0)) {
    throw std::invalid_argument("no component of size >= 2: nothing to remove");
  }
  const std::size_t l_max = std::max<std::size_t>(removed_length_support(top), 1);
  std::vector<double> p(l_max + 1, 0.0);
  for (std::size_t s = 2; s <= top; ++s) {
    if (!(v[s] > 0.0)) continue;
    const double w = static_cast<double>(s) * static_cast<double>(s - 1) * v[s] / total_weight;
    const auto law = kernel == LengthKernel::Rayleigh ? discretized_rayleigh(static_cast<double>(s), l_max)
                                                      : exact_tree_distance(s);
    for (std::size_t l = 1; l <= l_max && l < law.size(); ++l) p[l] += w * law[l];
  }
  return p;
}

}  // namespace pathperc
