#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bootwalk/group.hpp"
#include "bootwalk/operators.hpp"

namespace bootwalk {

using BigInt = boost::multiprecision::cpp_int;

// binom(a, b) as an exact integer. binom(a, 0) = 1 for every a, including
// negative a (the empty product); otherwise 0 when b < 0 or b > a.
BigInt binom_big(long long a, long long b);

// Exact joint law of walk components at a fixed horizon. Cells map the
// integer coordinate tuple (first `dims` slots used, rest zero) to the
// number of increment sequences landing there, out of denominator = p^n.
struct JointPmf {
  int dims = 2;
  long long n = 0;
  int p = 2;
  BigInt denominator = 1;
  std::map<std::array<long long, 3>, BigInt> cells;

  BigInt count(long long a, long long b, long long c = 0) const {
    auto it = cells.find({a, b, c});
    return it == cells.end() ? BigInt(0) : it->second;
  }
  double probability(long long a, long long b, long long c = 0) const {
    return count(a, b, c).convert_to<double>() / denominator.convert_to<double>();
  }
};

// Closed-form joint law of (level-0, level-1) walk components after n
// steps over the two-element +-1 group. Cell (k, l) holds
//   binom((n+l)/2, (n+k+2l)/4) * binom((n-l-2)/2, (n+k-2l)/4)
// when n-k = 0 mod 4 and |2l| <= n+k, the same with the inner offsets
// shifted by +-2 when n-k = 2 mod 4 and |2l+2| <= n+k, and 0 otherwise.
JointPmf joint_pmf_2d_formula(long long n);

// Same law, but with the group argument checked (p must be 2 with labels
// +1, -1 in some order).
JointPmf joint_pmf_2d_formula(const GroupSpec& g, long long n);

// Number of sequences with level-0 endpoint k and level-1 endpoint l,
// counted by an independent route: the minus-ones split the sequence into
// runs of plus-ones whose alternating signs decide the level-1 sum, and
// run lengths are distributed by stars and bars.
BigInt count_via_bins(long long n, long long k, long long l);

// Full grid assembled from count_via_bins.
JointPmf bins_pmf(long long n);

// Exact return probability of the multi-component walk to the origin.
struct ReturnProb {
  long long steps = 0;
  int dims = 2;
  bool has_exact = false;  // exact rational kept for steps <= 64
  BigInt num = 0;
  BigInt den = 1;
  double log_prob = 0.0;  // natural log, -inf when the probability is 0
  double probability() const;
};

// dims = 2: components (level 0, level 1) over the +-1 group.
ReturnProb return_prob_2d(long long steps);
// dims = 3: components (level 0, level 1, level 2). The closed sums start
// at steps = 6; steps 2 and 4 fall back to full enumeration.
ReturnProb return_prob_3d(long long steps);

// Partial sums S_m = sum_{n <= m} P(all components back at 0 after 4n
// steps), m = 1..N: the series whose divergence (dims = 2, sums grow like
// ln N / 2 pi) or convergence (dims = 3) separates the recurrent and
// transient regimes.
std::vector<double> partial_sum_divergence(int dims, long long N);

// Return probabilities for every even step count 2, 4, ..., upto_steps,
// sharing one factorial table across the rows.
std::vector<ReturnProb> return_prob_series(int dims, long long upto_steps);

// Least squares slope of log P(return at 4m) against log m over
// n_min <= m <= n_max (3-D needs n_min >= 2: four steps never return).
double decay_exponent_2d(long long n_min, long long n_max);
double decay_exponent_3d(long long n_min, long long n_max);

inline constexpr long long kDefaultEnumBudget = 1LL << 24;

// Walks every length-n increment sequence over g (p^n of them, budget
// checked) and hands the visitor the triangle rows 0..k_max as residue
// indices. Row K position i holds the level-K increment at step i+1.
template <class Visit>
void enumerate_paths(const GroupSpec& g, int k_max, long long n, long long budget,
                     Visit&& visit) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (n < 1) throw ValidationError("n must be >= 1");
  if (budget < 1) throw ValidationError("budget must be >= 1");
  const int p = g.p;
  long long total = 1;
  for (long long i = 0; i < n; ++i) {
    if (total > budget / p) {
      throw BudgetExceededError("p^n exceeds enumeration budget " + std::to_string(budget));
    }
    total *= p;
  }
  std::vector<std::vector<uint8_t>> rows(
      static_cast<size_t>(k_max + 1), std::vector<uint8_t>(static_cast<size_t>(n), 0));
  for (long long s = 0;;) {
    for (int K = 1; K <= k_max; ++K) {
      detail::prefix_product_mod(rows[K - 1].data(), rows[K].data(),
                                 static_cast<size_t>(n), p);
    }
    visit(const_cast<const std::vector<std::vector<uint8_t>>&>(rows));
    if (++s == total) break;
    for (long long i = 0; i < n; ++i) {
      if (++rows[0][static_cast<size_t>(i)] < p) break;
      rows[0][static_cast<size_t>(i)] = 0;
    }
  }
}

// Brute-force joint law of (level-0, ..., level-k_max) endpoints by full
// enumeration. Ground truth for the closed forms. Labels must be integer
// valued; k_max is 1 or 2 (dims = k_max + 1 coordinates). Deterministic
// for any thread count: per-range counts are merged in range order.
JointPmf enumerate_oracle(const GroupSpec& g, int k_max, long long n,
                          long long budget = kDefaultEnumBudget, int threads = 1);

// P(level-1 increment = +1 after n steps) when the +-1 inputs favor +1
// with probability p_bias. Evaluates the exact sum over all 2^n sequences
// and checks it against the closed form (1 + (2 p_bias - 1)^n) / 2 before
// returning it.
double biased_eta_law(double p_bias, int n);

// Structural checks on the conditional laws of the pair walk
// (level-0 sum, level-1 sum) over the +-1 group, horizons 1..n:
//  - given the full increment history, the next pair state takes exactly
//    two values with equal probability, and which two depends on the
//    history only through the current pair state (pair is Markov);
//  - one-step pair transition laws depend on the time index (raw chain is
//    inhomogeneous), but the four-step-subsampled chain started at times
//    0, 4, 8, ... has time-invariant transitions.
// Horizons with too little room are reported as vacuous passes: the
// homogeneity comparison needs two complete four-step windows (n >= 8).
struct MarkovReport {
  long long histories_checked = 0;
  bool pair_is_markov = false;
  bool subsampled_homogeneous = false;
  bool raw_chain_time_dependent = false;
  std::vector<std::string> notes;
};

// 1 <= n <= 12; the full 2^n history tree is walked.
MarkovReport markov_checks(int n);

}  // namespace bootwalk
