#include "bootwalk/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace bootwalk {

namespace {

// p^n with a hard ceiling; counts how many sequences an enumeration visits.
long long pow_checked(int p, long long n, long long budget) {
  long long total = 1;
  for (long long i = 0; i < n; ++i) {
    if (total > budget / p) {
      throw BudgetExceededError("p^n exceeds enumeration budget " + std::to_string(budget));
    }
    total *= p;
  }
  return total;
}

// Cached log factorials; args stay within the table by construction.
class LogFact {
 public:
  explicit LogFact(size_t max_n) : f_(max_n + 1) {
    for (size_t i = 0; i <= max_n; ++i) f_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }
  // log binom(a, b); callers guarantee 0 <= b <= a except b == 0, which is
  // the empty product for any a.
  double binom(long long a, long long b) const {
    if (b == 0) return 0.0;
    return f_[static_cast<size_t>(a)] - f_[static_cast<size_t>(b)] -
           f_[static_cast<size_t>(a - b)];
  }

 private:
  std::vector<double> f_;
};

double log_sum_exp(const std::vector<double>& xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

constexpr double kLn2 = 0.6931471805599453094;

void check_even_steps(long long steps) {
  if (steps < 2) throw ValidationError("steps must be >= 2");
  if (steps % 2 != 0) {
    throw OddStepsError("return probabilities need an even step count, got " +
                        std::to_string(steps));
  }
}

// log P(both components back at 0) for the two-component walk.
double log_ret2(long long steps, const LogFact& lf) {
  if (steps % 4 == 0) {
    const long long n = steps / 4;
    return -static_cast<double>(steps) * kLn2 + lf.binom(2 * n - 1, n) + lf.binom(2 * n, n);
  }
  const long long n = (steps - 2) / 4;
  return -static_cast<double>(steps) * kLn2 + lf.binom(2 * n + 1, n + 1) + lf.binom(2 * n, n);
}

// All three components back at 0: brute count over the 2^steps sign
// sequences. Covers the step counts below the closed sums' reach.
long long ret3_count_by_enumeration(long long steps) {
  long long hits = 0;
  for (long long mask = 0; mask < (1LL << steps); ++mask) {
    long long y0 = 0, y1 = 0, y2 = 0;
    int prod1 = 1, prod2 = 1;
    for (long long i = 0; i < steps; ++i) {
      const int xi = (mask >> i) & 1 ? -1 : 1;
      prod1 *= xi;
      prod2 *= prod1;
      y0 += xi;
      y1 += prod1;
      y2 += prod2;
    }
    if (y0 == 0 && y1 == 0 && y2 == 0) ++hits;
  }
  return hits;
}

// log P(all three components back at 0). The closed sums start at 8 and 6
// steps; 2 and 4 steps sit below their reach and are settled by
// enumeration (4 steps genuinely has probability 0).
double log_ret3(long long steps, const LogFact& lf, std::vector<double>& scratch) {
  if (steps <= 4) {
    const long long c = ret3_count_by_enumeration(steps);
    if (c == 0) return -std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(c)) - static_cast<double>(steps) * kLn2;
  }
  scratch.clear();
  if (steps % 4 == 0) {
    const long long n = steps / 4;
    for (long long k = 0; k + 2 <= n; ++k) {
      scratch.push_back(lf.binom(n - 1, k) + 2.0 * lf.binom(n, k + 1) +
                        lf.binom(n - 1, k + 1));
    }
  } else {
    const long long n = (steps - 2) / 4;
    for (long long k = 1; k <= n; ++k) {
      scratch.push_back(2.0 * lf.binom(n, k) + lf.binom(n - 1, k - 1) +
                        lf.binom(n + 1, k + 1));
    }
  }
  return log_sum_exp(scratch) - static_cast<double>(steps) * kLn2;
}

BigInt exact_ret2_count(long long steps) {
  if (steps % 4 == 0) {
    const long long n = steps / 4;
    return binom_big(2 * n - 1, n) * binom_big(2 * n, n);
  }
  const long long n = (steps - 2) / 4;
  return binom_big(2 * n + 1, n + 1) * binom_big(2 * n, n);
}

BigInt exact_ret3_count(long long steps) {
  if (steps <= 4) return ret3_count_by_enumeration(steps);
  BigInt acc = 0;
  if (steps % 4 == 0) {
    const long long n = steps / 4;
    for (long long k = 0; k + 2 <= n; ++k) {
      acc += binom_big(n - 1, k) * binom_big(n, k + 1) * binom_big(n, k + 1) *
             binom_big(n - 1, k + 1);
    }
  } else {
    const long long n = (steps - 2) / 4;
    for (long long k = 1; k <= n; ++k) {
      acc += binom_big(n, k) * binom_big(n, k) * binom_big(n - 1, k - 1) *
             binom_big(n + 1, k + 1);
    }
  }
  return acc;
}

ReturnProb make_return(long long steps, int dims, BigInt count, double log_prob) {
  ReturnProb r;
  r.steps = steps;
  r.dims = dims;
  r.log_prob = log_prob;
  if (steps <= 64) {
    r.has_exact = true;
    BigInt den = BigInt(1) << static_cast<unsigned>(steps);
    if (count == 0) {
      r.num = 0;
      r.den = 1;
    } else {
      const BigInt g = boost::multiprecision::gcd(count, den);
      r.num = count / g;
      r.den = den / g;
    }
  }
  return r;
}

// Count with level-0 endpoint k and level-1 endpoint l by the closed form.
BigInt formula_count_2d(long long n, long long k, long long l) {
  if (std::llabs(k) > n || (n + k) % 2 != 0) return 0;
  if (std::llabs(l) > n || (n + l) % 2 != 0) return 0;
  const long long mod4 = ((n - k) % 4 + 4) % 4;
  if (mod4 == 0) {
    if (std::llabs(2 * l) > n + k) return 0;
    return binom_big((n + l) / 2, (n + k + 2 * l) / 4) *
           binom_big((n - l - 2) / 2, (n + k - 2 * l) / 4);
  }
  if (std::llabs(2 * l + 2) > n + k) return 0;
  return binom_big((n + l) / 2, (n + k + 2 * l + 2) / 4) *
         binom_big((n - l - 2) / 2, (n + k - 2 * l - 2) / 4);
}

BigInt stars_bars(long long balls, long long bins) {
  if (bins == 0) return balls == 0 ? BigInt(1) : BigInt(0);
  return binom_big(balls + bins - 1, bins - 1);
}

}  // namespace

BigInt binom_big(long long a, long long b) {
  if (b == 0) return 1;
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  BigInt num = 1;
  for (long long i = 1; i <= b; ++i) {
    num *= a + 1 - i;
    num /= i;  // exact: a running product of i consecutive terms divides by i!
  }
  return num;
}

double ReturnProb::probability() const {
  if (has_exact) return num.convert_to<double>() / den.convert_to<double>();
  return std::exp(log_prob);
}

JointPmf joint_pmf_2d_formula(long long n) {
  if (n < 1) throw ValidationError("n must be >= 1");
  JointPmf pmf;
  pmf.dims = 2;
  pmf.n = n;
  pmf.p = 2;
  pmf.denominator = BigInt(1) << static_cast<unsigned>(n);
  for (long long k = -n; k <= n; k += 2) {
    for (long long l = -n; l <= n; l += 2) {
      BigInt c = formula_count_2d(n, k, l);
      if (c != 0) pmf.cells[{k, l, 0}] = std::move(c);
    }
  }
  return pmf;
}

JointPmf joint_pmf_2d_formula(const GroupSpec& g, long long n) {
  const bool plus_minus = g.p == 2 && ((g.values[0] == 1.0 && g.values[1] == -1.0) ||
                                       (g.values[0] == -1.0 && g.values[1] == 1.0));
  if (!plus_minus) {
    throw UnsupportedGroupError("closed-form joint law needs the two-element +-1 group");
  }
  return joint_pmf_2d_formula(n);
}

BigInt count_via_bins(long long n, long long k, long long l) {
  if (std::llabs(k) > n || (n + k) % 2 != 0) return 0;
  if (std::llabs(l) > n || (n + l) % 2 != 0) return 0;
  const long long minus = (n - k) / 2;  // delimiters between plus runs
  const long long plus = n - minus;
  // Runs alternate sign: run j (j minuses seen) contributes (-1)^j per
  // plus, and the j-th minus contributes (-1)^j itself, which telescopes
  // to 0 or -1. alpha / beta = pluses in even- / odd-indexed runs.
  long long alpha, beta, alpha_runs, beta_runs;
  if (minus % 2 == 0) {
    if ((plus + l) % 2 != 0) return 0;
    alpha = (plus + l) / 2;
    beta = (plus - l) / 2;
    alpha_runs = minus / 2 + 1;
    beta_runs = minus / 2;
  } else {
    if ((plus + l + 1) % 2 != 0) return 0;
    alpha = (plus + l + 1) / 2;
    beta = (plus - l - 1) / 2;
    alpha_runs = (minus + 1) / 2;
    beta_runs = (minus + 1) / 2;
  }
  if (alpha < 0 || beta < 0) return 0;
  return stars_bars(alpha, alpha_runs) * stars_bars(beta, beta_runs);
}

JointPmf bins_pmf(long long n) {
  if (n < 1) throw ValidationError("n must be >= 1");
  JointPmf pmf;
  pmf.dims = 2;
  pmf.n = n;
  pmf.p = 2;
  pmf.denominator = BigInt(1) << static_cast<unsigned>(n);
  for (long long k = -n; k <= n; k += 2) {
    for (long long l = -n; l <= n; l += 2) {
      BigInt c = count_via_bins(n, k, l);
      if (c != 0) pmf.cells[{k, l, 0}] = std::move(c);
    }
  }
  return pmf;
}

ReturnProb return_prob_2d(long long steps) {
  check_even_steps(steps);
  LogFact lf(static_cast<size_t>(steps / 2 + 2));
  return make_return(steps, 2, steps <= 64 ? exact_ret2_count(steps) : BigInt(0),
                     log_ret2(steps, lf));
}

ReturnProb return_prob_3d(long long steps) {
  check_even_steps(steps);
  LogFact lf(static_cast<size_t>(steps / 4 + 3));
  std::vector<double> scratch;
  return make_return(steps, 3, steps <= 64 ? exact_ret3_count(steps) : BigInt(0),
                     log_ret3(steps, lf, scratch));
}

std::vector<double> partial_sum_divergence(int dims, long long N) {
  if (dims != 2 && dims != 3) throw ValidationError("dims must be 2 or 3");
  if (N < 1) throw ValidationError("N must be >= 1");
  LogFact lf(static_cast<size_t>(2 * N + 2));
  std::vector<double> scratch;
  std::vector<double> sums(static_cast<size_t>(N));
  double acc = 0.0;
  for (long long n = 1; n <= N; ++n) {
    const long long steps = 4 * n;
    const double lp = dims == 2 ? log_ret2(steps, lf) : log_ret3(steps, lf, scratch);
    acc += std::exp(lp);
    sums[static_cast<size_t>(n - 1)] = acc;
  }
  return sums;
}

std::vector<ReturnProb> return_prob_series(int dims, long long upto_steps) {
  if (dims != 2 && dims != 3) throw ValidationError("dims must be 2 or 3");
  check_even_steps(upto_steps);
  const long long cap = dims == 2 ? 2'000'000 : 40'000;
  if (upto_steps > cap) {
    throw BudgetExceededError("series capped at " + std::to_string(cap) +
                              " steps for this dimension");
  }
  LogFact lf(static_cast<size_t>(upto_steps / 2 + 2));
  std::vector<double> scratch;
  std::vector<ReturnProb> rows;
  rows.reserve(static_cast<size_t>(upto_steps / 2));
  for (long long steps = 2; steps <= upto_steps; steps += 2) {
    const double lp = dims == 2 ? log_ret2(steps, lf) : log_ret3(steps, lf, scratch);
    BigInt count = 0;
    if (steps <= 64) count = dims == 2 ? exact_ret2_count(steps) : exact_ret3_count(steps);
    rows.push_back(make_return(steps, dims, std::move(count), lp));
  }
  return rows;
}

namespace {

// Slope of log P(return at 4m) against log m, least squares.
double decay_exponent(int dims, long long n_min, long long n_max) {
  const long long lo = dims == 3 ? 2 : 1;
  if (n_min < lo) throw ValidationError("n_min too small for this dimension");
  if (n_max <= n_min) throw ValidationError("n_max must exceed n_min");
  LogFact lf(static_cast<size_t>(2 * n_max + 2));
  std::vector<double> scratch;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(n_max - n_min + 1);
  for (long long m = n_min; m <= n_max; ++m) {
    const double x = std::log(static_cast<double>(m));
    const double y =
        dims == 2 ? log_ret2(4 * m, lf) : log_ret3(4 * m, lf, scratch);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (sxy - sx * sy / cnt) / (sxx - sx * sx / cnt);
}

}  // namespace

double decay_exponent_2d(long long n_min, long long n_max) {
  return decay_exponent(2, n_min, n_max);
}

double decay_exponent_3d(long long n_min, long long n_max) {
  return decay_exponent(3, n_min, n_max);
}

JointPmf enumerate_oracle(const GroupSpec& g, int k_max, long long n,
                          long long budget, int threads) {
  if (k_max < 1 || k_max > 2) {
    throw ValidationError("joint endpoint law supports k_max 1 or 2");
  }
  if (n < 1) throw ValidationError("n must be >= 1");
  const int p = g.p;
  std::vector<long long> ival(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) {
    const double v = g.values[static_cast<size_t>(i)];
    if (v != std::nearbyint(v)) {
      throw BadValuesError("exact counting needs integer labels");
    }
    ival[static_cast<size_t>(i)] = static_cast<long long>(std::llround(v));
  }
  const long long total = pow_checked(p, n, budget);

  int T = std::clamp(threads, 1, 64);
  if (total < 4096) T = 1;

  using Cells = std::map<std::array<long long, 3>, BigInt>;
  std::vector<Cells> parts(static_cast<size_t>(T));

  auto work = [&](long long lo, long long hi, Cells& out) {
    std::vector<std::vector<uint8_t>> rows(
        static_cast<size_t>(k_max + 1),
        std::vector<uint8_t>(static_cast<size_t>(n), 0));
    long long s0 = lo;
    for (long long i = 0; i < n; ++i) {
      rows[0][static_cast<size_t>(i)] = static_cast<uint8_t>(s0 % p);
      s0 /= p;
    }
    for (long long s = lo; s < hi; ++s) {
      for (int K = 1; K <= k_max; ++K) {
        detail::prefix_product_mod(rows[static_cast<size_t>(K - 1)].data(),
                                   rows[static_cast<size_t>(K)].data(),
                                   static_cast<size_t>(n), p);
      }
      std::array<long long, 3> key{0, 0, 0};
      for (int K = 0; K <= k_max; ++K) {
        long long sum = 0;
        for (long long i = 0; i < n; ++i) {
          sum += ival[rows[static_cast<size_t>(K)][static_cast<size_t>(i)]];
        }
        key[static_cast<size_t>(K)] = sum;
      }
      ++out[key];
      if (s + 1 == hi) break;
      for (long long i = 0; i < n; ++i) {
        if (++rows[0][static_cast<size_t>(i)] < p) break;
        rows[0][static_cast<size_t>(i)] = 0;
      }
    }
  };

  if (T == 1) {
    work(0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
      const long long lo = total / T * t + std::min<long long>(t, total % T);
      const long long hi = lo + total / T + (t < total % T ? 1 : 0);
      pool.emplace_back(work, lo, hi, std::ref(parts[static_cast<size_t>(t)]));
    }
    for (auto& th : pool) th.join();
  }

  JointPmf pmf;
  pmf.dims = k_max + 1;
  pmf.n = n;
  pmf.p = p;
  pmf.denominator = total;
  for (auto& part : parts) {
    for (auto& kv : part) pmf.cells[kv.first] += kv.second;
  }
  return pmf;
}

double biased_eta_law(double p_bias, int n) {
  if (!(p_bias > 0.0 && p_bias < 1.0)) {
    throw ValidationError("bias must lie strictly between 0 and 1");
  }
  if (n < 1) throw ValidationError("n must be >= 1");
  if (n > 24) throw BudgetExceededError("biased enumeration capped at n = 24");

  std::vector<double> pow_p(static_cast<size_t>(n + 1), 1.0);
  std::vector<double> pow_q(static_cast<size_t>(n + 1), 1.0);
  for (int j = 1; j <= n; ++j) {
    pow_p[static_cast<size_t>(j)] = pow_p[static_cast<size_t>(j - 1)] * p_bias;
    pow_q[static_cast<size_t>(j)] = pow_q[static_cast<size_t>(j - 1)] * (1.0 - p_bias);
  }
  double total = 0.0;
  const uint32_t lim = 1u << n;
  for (uint32_t mask = 0; mask < lim; ++mask) {
    const int minus = __builtin_popcount(mask);
    if (minus % 2 == 0) {
      total += pow_p[static_cast<size_t>(n - minus)] * pow_q[static_cast<size_t>(minus)];
    }
  }
  const double closed = 0.5 * (1.0 + std::pow(2.0 * p_bias - 1.0, n));
  if (std::abs(total - closed) > 1e-12) {
    throw ContractError("biased level-1 law disagrees with its closed form");
  }
  return total;
}

MarkovReport markov_checks(int n) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (n > 12) throw BudgetExceededError("structural enumeration capped at n = 12");

  MarkovReport rep;
  rep.histories_checked = 1LL << n;

  // sign_by_state[(m, X, Y)] = product of the first m inputs, checked to be
  // a function of the pair state and the time alone.
  std::map<std::array<int, 3>, int> sign_by_state;
  bool markov_ok = true;

  // Subsampled transition counts: start times 0, 4, ..., n-4.
  const int starts = n / 4;
  using State = std::array<int, 2>;
  std::vector<std::map<State, std::map<State, long long>>> c4(static_cast<size_t>(starts));
  std::vector<std::map<State, long long>> tot4(static_cast<size_t>(starts));

  const uint32_t lim = 1u << n;
  std::vector<State> checkpoints(static_cast<size_t>(starts + 1));
  for (uint32_t mask = 0; mask < lim; ++mask) {
    int X = 0, Y = 0, s = 1;
    checkpoints[0] = {0, 0};
    for (int m = 0; m < n; ++m) {
      if (markov_ok) {
        auto [it, inserted] = sign_by_state.try_emplace({m, X, Y}, s);
        if (!inserted && it->second != s) {
          markov_ok = false;
          rep.notes.push_back("pair state (" + std::to_string(X) + "," + std::to_string(Y) +
                              ") at time " + std::to_string(m) + " seen with both signs");
        }
      }
      const int xi = (mask >> m) & 1 ? -1 : 1;
      s *= xi;
      X += xi;
      Y += s;
      if ((m + 1) % 4 == 0) checkpoints[static_cast<size_t>((m + 1) / 4)] = {X, Y};
    }
    for (int t = 0; t < starts; ++t) {
      c4[static_cast<size_t>(t)][checkpoints[static_cast<size_t>(t)]]
        [checkpoints[static_cast<size_t>(t + 1)]]++;
      tot4[static_cast<size_t>(t)][checkpoints[static_cast<size_t>(t)]]++;
    }
  }
  rep.pair_is_markov = markov_ok;

  // Raw one-step laws: the sign decides them, so time dependence at a
  // fixed pair state is a sign that changes with m.
  std::map<std::array<int, 2>, std::map<int, int>> sign_history;
  for (const auto& kv : sign_by_state) {
    sign_history[{kv.first[1], kv.first[2]}][kv.second] = kv.first[0];
  }
  for (const auto& kv : sign_history) {
    if (kv.second.size() > 1) {
      rep.raw_chain_time_dependent = true;
      rep.notes.push_back("pair state (" + std::to_string(kv.first[0]) + "," +
                          std::to_string(kv.first[1]) +
                          ") steps differently at different times");
      break;
    }
  }

  // Subsampled chain: for a state visited from several start times, the
  // conditional landing laws must agree exactly (cross-multiplied counts).
  // With fewer than two complete windows there is nothing to compare.
  bool homo_ok = true;
  if (starts < 2) {
    rep.notes.push_back("fewer than two four-step windows at n = " + std::to_string(n) +
                        ": homogeneity holds vacuously");
  }
  for (int t1 = 0; t1 < starts && homo_ok; ++t1) {
    for (int t2 = t1 + 1; t2 < starts && homo_ok; ++t2) {
      for (const auto& kv : c4[static_cast<size_t>(t1)]) {
        const State& w = kv.first;
        auto it2 = c4[static_cast<size_t>(t2)].find(w);
        if (it2 == c4[static_cast<size_t>(t2)].end()) continue;
        const long long n1 = tot4[static_cast<size_t>(t1)].at(w);
        const long long n2 = tot4[static_cast<size_t>(t2)].at(w);
        std::map<State, long long> all = kv.second;
        for (const auto& kv2 : it2->second) all.emplace(kv2.first, 0);
        for (const auto& target : all) {
          auto get = [](const std::map<State, long long>& m2, const State& k2) {
            auto it = m2.find(k2);
            return it == m2.end() ? 0LL : it->second;
          };
          const long long a = get(kv.second, target.first);
          const long long b = get(it2->second, target.first);
          if (a * n2 != b * n1) {
            homo_ok = false;
            rep.notes.push_back("four-step law from state (" + std::to_string(w[0]) + "," +
                                std::to_string(w[1]) + ") differs between start times " +
                                std::to_string(4 * t1) + " and " + std::to_string(4 * t2));
            break;
          }
        }
        if (!homo_ok) break;
      }
    }
  }
  rep.subsampled_homogeneous = homo_ok;
  return rep;
}

}  // namespace bootwalk
