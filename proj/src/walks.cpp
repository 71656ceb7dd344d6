#include "bootwalk/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "bootwalk/nu.hpp"
#include "bootwalk/rng.hpp"

namespace bootwalk {

namespace {

void check_zero_mean(const GroupSpec& g) {
  double scale = 1.0;
  for (double v : g.values) scale = std::max(scale, std::abs(v));
  if (std::abs(label_mean(g)) > 1e-12 * scale * static_cast<double>(g.p)) {
    throw NonZeroMeanError("labels must sum to zero for centered walks");
  }
}

// All level walks of one replica, advanced one input at a time. state[K]
// is the current level-K increment (unit before the first step); the
// level recurrence eta(K, m) = eta(K, m-1) * eta(K-1, m) updates in one
// ascending sweep.
struct LevelWalker {
  const GroupSpec& g;
  int k_max;
  std::vector<int> state;
  std::vector<double> pos;

  LevelWalker(const GroupSpec& spec, int k) : g(spec), k_max(k) { reset(); }

  void reset() {
    state.assign(static_cast<size_t>(k_max + 1), 0);
    pos.assign(static_cast<size_t>(k_max + 1), 0.0);
  }

  void step(int xi_index) {
    state[0] = xi_index;
    pos[0] += g.values[static_cast<size_t>(xi_index)];
    for (int K = 1; K <= k_max; ++K) {
      int s = state[static_cast<size_t>(K)] + state[static_cast<size_t>(K - 1)];
      if (s >= g.p) s -= g.p;
      state[static_cast<size_t>(K)] = s;
      pos[static_cast<size_t>(K)] += g.values[static_cast<size_t>(s)];
    }
  }
};

constexpr long long kBlock = 4096;

// Replica loop with scheduling-independent results: replicas fall into
// fixed blocks, each block accumulates locally in replica order, and the
// block partials fold in block order no matter which thread ran them.
template <class Fn>
std::vector<double> run_blocks(long long replicas, int threads, size_t width, Fn&& fn) {
  const long long nblocks = (replicas + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(static_cast<size_t>(nblocks));
  int T = std::clamp(threads, 1, 64);
  if (nblocks < 2) T = 1;

  std::atomic<long long> next{0};
  auto work = [&]() {
    for (;;) {
      const long long b = next.fetch_add(1);
      if (b >= nblocks) break;
      auto& acc = partial[static_cast<size_t>(b)];
      acc.assign(width, 0.0);
      const long long lo = b * kBlock;
      const long long hi = std::min(replicas, lo + kBlock);
      for (long long r = lo; r < hi; ++r) fn(r, acc);
    }
  };
  if (T == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::vector<double> out(width, 0.0);
  for (long long b = 0; b < nblocks; ++b) {
    for (size_t i = 0; i < width; ++i) out[i] += partial[static_cast<size_t>(b)][i];
  }
  return out;
}

}  // namespace

WalkPath simulate_path(const GroupSpec& g, long long k_max, long long n, uint64_t seed) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (n < 1) throw ValidationError("n must be >= 1");
  check_zero_mean(g);

  CounterRng rng = CounterRng::for_replica(seed, 0);
  ElementSeq xi{g, std::vector<Element>(static_cast<size_t>(n))};
  for (long long i = 0; i < n; ++i) {
    xi.items[static_cast<size_t>(i)] = Element{rng.next_index(g.p)};
  }
  WalkPath w;
  w.group = g;
  w.k_max = k_max;
  w.n = n;
  w.triangle = build_triangle(xi, k_max);
  w.paths.assign(static_cast<size_t>(k_max + 1),
                 std::vector<double>(static_cast<size_t>(n + 1), 0.0));
  for (long long K = 0; K <= k_max; ++K) {
    const auto& row = w.triangle.rows[static_cast<size_t>(K)];
    auto& path = w.paths[static_cast<size_t>(K)];
    for (long long i = 0; i < n; ++i) {
      path[static_cast<size_t>(i + 1)] =
          path[static_cast<size_t>(i)] + g.value_of(row[static_cast<size_t>(i)]);
    }
  }
  return w;
}

std::pair<std::vector<double>, std::vector<double>> step_recursion_path(long long n,
                                                                        uint64_t seed) {
  if (n < 1) throw ValidationError("n must be >= 1");
  CounterRng rng = CounterRng::for_replica(seed, 0);
  std::vector<double> X(static_cast<size_t>(n + 1), 0.0);
  std::vector<double> Y(static_cast<size_t>(n + 1), 0.0);
  long long Xi = 0;
  double Yi = 0.0;
  for (long long m = 0; m < n; ++m) {
    const int xi = rng.next_index(2) == 0 ? 1 : -1;
    // (m - X_m)/2 counts the minus inputs so far; its parity is the
    // current level-1 increment sign.
    const int sign = ((m - Xi) / 2) % 2 == 0 ? 1 : -1;
    Yi += sign * xi;
    Xi += xi;
    X[static_cast<size_t>(m + 1)] = static_cast<double>(Xi);
    Y[static_cast<size_t>(m + 1)] = Yi;
  }
  return {std::move(X), std::move(Y)};
}

CovarianceReport covariance_check(const GroupSpec& g, int k_max, long long m,
                                  long long n, long long replicas, uint64_t seed,
                                  int threads) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (m < 1 || m > n) throw ValidationError("need 1 <= m <= n");
  if (replicas < 2) throw ValidationError("need at least 2 replicas");
  check_zero_mean(g);

  const int levels = k_max + 1;
  const size_t pairs = static_cast<size_t>(levels) * static_cast<size_t>(levels);
  // layout: [pairs] products, [pairs] squared products
  const size_t width = 2 * pairs;

  auto per_replica = [&](long long r, std::vector<double>& acc) {
    CounterRng rng = CounterRng::for_replica(seed, static_cast<uint64_t>(r));
    LevelWalker w(g, k_max);
    std::vector<double> at_m(static_cast<size_t>(levels));
    for (long long i = 0; i < n; ++i) {
      w.step(rng.next_index(g.p));
      if (i + 1 == m) at_m = w.pos;
    }
    for (int K = 0; K < levels; ++K) {
      for (int J = 0; J < levels; ++J) {
        const size_t idx = static_cast<size_t>(K * levels + J);
        const double prod = at_m[static_cast<size_t>(K)] * w.pos[static_cast<size_t>(J)];
        acc[idx] += prod;
        acc[pairs + idx] += prod * prod;
      }
    }
  };
  const std::vector<double> acc = run_blocks(replicas, threads, width, per_replica);

  CovarianceReport rep;
  rep.exact = false;
  rep.samples = replicas;
  rep.sigma2 = sigma2(g);
  const double R = static_cast<double>(replicas);
  for (int K = 0; K < levels; ++K) {
    for (int J = 0; J < levels; ++J) {
      const size_t idx = static_cast<size_t>(K * levels + J);
      CovarianceEntry e;
      e.K = K;
      e.J = J;
      e.m = m;
      e.n = n;
      e.theory = static_cast<double>(omega(std::abs(K - J), g.p).cap(m)) * rep.sigma2;
      e.estimate = acc[idx] / R;
      const double var = std::max(0.0, acc[pairs + idx] / R - e.estimate * e.estimate);
      e.std_error = std::sqrt(var / R);
      e.z = e.std_error > 0 ? (e.estimate - e.theory) / e.std_error : 0.0;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

CovarianceReport covariance_check_exact(const GroupSpec& g, int k_max, long long m,
                                        long long n, long long budget) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (m < 1 || m > n) throw ValidationError("need 1 <= m <= n");
  check_zero_mean(g);

  const int levels = k_max + 1;
  const size_t pairs = static_cast<size_t>(levels) * static_cast<size_t>(levels);
  std::vector<double> sums(pairs, 0.0);
  std::vector<double> at_m(static_cast<size_t>(levels));
  std::vector<double> at_n(static_cast<size_t>(levels));
  long long total = 0;
  enumerate_paths(g, k_max, n, budget,
                  [&](const std::vector<std::vector<uint8_t>>& rows) {
                    for (int K = 0; K < levels; ++K) {
                      double s = 0.0;
                      const auto& row = rows[static_cast<size_t>(K)];
                      for (long long i = 0; i < m; ++i) {
                        s += g.values[row[static_cast<size_t>(i)]];
                      }
                      at_m[static_cast<size_t>(K)] = s;
                      for (long long i = m; i < n; ++i) {
                        s += g.values[row[static_cast<size_t>(i)]];
                      }
                      at_n[static_cast<size_t>(K)] = s;
                    }
                    for (int K = 0; K < levels; ++K) {
                      for (int J = 0; J < levels; ++J) {
                        sums[static_cast<size_t>(K * levels + J)] +=
                            at_m[static_cast<size_t>(K)] * at_n[static_cast<size_t>(J)];
                      }
                    }
                    ++total;
                  });

  CovarianceReport rep;
  rep.exact = true;
  rep.samples = total;
  rep.sigma2 = sigma2(g);
  for (int K = 0; K < levels; ++K) {
    for (int J = 0; J < levels; ++J) {
      CovarianceEntry e;
      e.K = K;
      e.J = J;
      e.m = m;
      e.n = n;
      e.theory = static_cast<double>(omega(std::abs(K - J), g.p).cap(m)) * rep.sigma2;
      e.estimate = sums[static_cast<size_t>(K * levels + J)] / static_cast<double>(total);
      rep.entries.push_back(e);
    }
  }
  return rep;
}

EnsembleStats fclt_diagnostics(const GroupSpec& g, int k_max, long long n,
                               long long replicas, uint64_t seed, int threads) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (n < 100) throw ValidationError("n must be >= 100");
  if (replicas < 1000) throw ValidationError("need at least 1000 replicas");
  check_zero_mean(g);

  const int levels = k_max + 1;
  const size_t L = static_cast<size_t>(levels);
  // quarter points of the path
  std::array<long long, 4> q{n / 4, n / 2, 3 * n / 4, n};
  // layout per level: sum Y, sum Y^2, sum Y^4 at the endpoint,
  // then sum Y, sum Y^2 at each earlier quarter point (3 of them),
  // then one slot per unordered level pair for sum Y_K * Y_J.
  const size_t per_level = 3 + 3 * 2;
  const size_t npairs = L * (L - 1) / 2;
  const size_t width = L * per_level + npairs;

  auto pair_slot = [&](int K, int J) {  // K < J
    size_t s = 0;
    for (int a = 0; a < K; ++a) s += static_cast<size_t>(levels - 1 - a);
    return L * per_level + s + static_cast<size_t>(J - K - 1);
  };

  auto per_replica = [&](long long r, std::vector<double>& acc) {
    CounterRng rng = CounterRng::for_replica(seed, static_cast<uint64_t>(r));
    LevelWalker w(g, k_max);
    std::array<std::vector<double>, 3> quarters;
    for (long long i = 0; i < n; ++i) {
      w.step(rng.next_index(g.p));
      for (int t = 0; t < 3; ++t) {
        if (i + 1 == q[static_cast<size_t>(t)]) quarters[static_cast<size_t>(t)] = w.pos;
      }
    }
    for (int K = 0; K < levels; ++K) {
      const double y = w.pos[static_cast<size_t>(K)];
      double* base = acc.data() + static_cast<size_t>(K) * per_level;
      base[0] += y;
      base[1] += y * y;
      base[2] += y * y * y * y;
      for (int t = 0; t < 3; ++t) {
        const double yt = quarters[static_cast<size_t>(t)][static_cast<size_t>(K)];
        base[3 + 2 * t] += yt;
        base[4 + 2 * t] += yt * yt;
      }
    }
    for (int K = 0; K < levels; ++K) {
      for (int J = K + 1; J < levels; ++J) {
        acc[pair_slot(K, J)] +=
            w.pos[static_cast<size_t>(K)] * w.pos[static_cast<size_t>(J)];
      }
    }
  };
  const std::vector<double> acc = run_blocks(replicas, threads, width, per_replica);

  EnsembleStats out;
  out.n = n;
  out.replicas = replicas;
  out.sigma2 = sigma2(g);
  const double R = static_cast<double>(replicas);
  const double s2 = out.sigma2;

  std::vector<double> mean(L), var(L), sd(L);
  for (int K = 0; K < levels; ++K) {
    const double* base = acc.data() + static_cast<size_t>(K) * per_level;
    mean[static_cast<size_t>(K)] = base[0] / R;
    var[static_cast<size_t>(K)] =
        std::max(0.0, base[1] / R - mean[static_cast<size_t>(K)] * mean[static_cast<size_t>(K)]);
    sd[static_cast<size_t>(K)] = std::sqrt(var[static_cast<size_t>(K)]);
  }

  out.cross_moments.assign(L, std::vector<double>(L, 0.0));
  out.correlations.assign(L, std::vector<double>(L, 1.0));
  for (int K = 0; K < levels; ++K) {
    const double* base = acc.data() + static_cast<size_t>(K) * per_level;
    out.cross_moments[static_cast<size_t>(K)][static_cast<size_t>(K)] = base[1] / R;
    for (int J = K + 1; J < levels; ++J) {
      const double m11 = acc[pair_slot(K, J)] / R;
      out.cross_moments[static_cast<size_t>(K)][static_cast<size_t>(J)] = m11;
      out.cross_moments[static_cast<size_t>(J)][static_cast<size_t>(K)] = m11;
      const double denom = sd[static_cast<size_t>(K)] * sd[static_cast<size_t>(J)];
      const double c =
          denom > 0
              ? (m11 - mean[static_cast<size_t>(K)] * mean[static_cast<size_t>(J)]) / denom
              : 0.0;
      out.correlations[static_cast<size_t>(K)][static_cast<size_t>(J)] = c;
      out.correlations[static_cast<size_t>(J)][static_cast<size_t>(K)] = c;
    }
  }

  // Endpoint correlations: the limit processes are independent, and at
  // finite n the exact cross moment is min(n, omega-1) sigma2, so the true
  // correlation is min(n, omega-1)/n. Allow that plus 4 standard errors.
  for (int K = 0; K < levels; ++K) {
    for (int J = K + 1; J < levels; ++J) {
      const double corr = out.correlations[static_cast<size_t>(K)][static_cast<size_t>(J)];
      const double truth =
          static_cast<double>(omega(J - K, g.p).cap(n)) / static_cast<double>(n);
      EnsembleStat st;
      st.name = "corr_" + std::to_string(K) + "_" + std::to_string(J);
      st.value = corr;
      st.target = 0.0;
      st.tolerance = truth + 4.0 / std::sqrt(R);
      st.pass = std::abs(corr) <= st.tolerance;
      out.stats.push_back(st);
    }
  }
  // Endpoint variance against sigma2 n; chi-square spread 4 sqrt(2/R).
  for (int K = 0; K < levels; ++K) {
    EnsembleStat st;
    st.name = "var_ratio_" + std::to_string(K);
    st.value = var[static_cast<size_t>(K)] / (s2 * static_cast<double>(n));
    st.target = 1.0;
    st.tolerance = 4.0 * std::sqrt(2.0 / R);
    st.pass = std::abs(st.value - 1.0) <= st.tolerance;
    out.stats.push_back(st);
  }
  // Endpoint fourth moment against the Gaussian value 3 (sigma2 n)^2.
  // Var of the Y^4 average is 96 sigma_Y^8 in the limit, giving the
  // 4 se band below, widened by an O(1/n) finite-horizon allowance.
  for (int K = 0; K < levels; ++K) {
    const double* base = acc.data() + static_cast<size_t>(K) * per_level;
    const double m4 = base[2] / R;
    EnsembleStat st;
    st.name = "m4_ratio_" + std::to_string(K);
    st.value = m4 / (3.0 * s2 * s2 * static_cast<double>(n) * static_cast<double>(n));
    st.target = 1.0;
    st.tolerance = 4.0 * std::sqrt(96.0 / 9.0) / std::sqrt(R) + 20.0 / static_cast<double>(n);
    st.pass = std::abs(st.value - 1.0) <= st.tolerance;
    out.stats.push_back(st);
  }
  // Variance growth along the path: Var(Y at n t) = sigma2 * floor(n t).
  for (int K = 0; K < levels; ++K) {
    const double* base = acc.data() + static_cast<size_t>(K) * per_level;
    for (int t = 0; t < 3; ++t) {
      const double mt = base[3 + 2 * t] / R;
      const double vt = std::max(0.0, base[4 + 2 * t] / R - mt * mt);
      EnsembleStat st;
      st.name = "var_ratio_" + std::to_string(K) + "_q" + std::to_string(t + 1);
      st.value = vt / (s2 * static_cast<double>(q[static_cast<size_t>(t)]));
      st.target = 1.0;
      st.tolerance = 4.0 * std::sqrt(2.0 / R);
      st.pass = std::abs(st.value - 1.0) <= st.tolerance;
      out.stats.push_back(st);
    }
  }
  return out;
}

std::vector<std::vector<double>> ensemble_terminals(const GroupSpec& g, int k_max,
                                                    long long n, long long replicas,
                                                    uint64_t seed, int threads) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (n < 1) throw ValidationError("n must be >= 1");
  if (replicas < 1) throw ValidationError("need at least 1 replica");
  check_zero_mean(g);

  std::vector<std::vector<double>> out(static_cast<size_t>(replicas));
  const long long nblocks = (replicas + kBlock - 1) / kBlock;
  int T = std::clamp(threads, 1, 64);
  if (nblocks < 2) T = 1;
  std::atomic<long long> next{0};
  auto work = [&]() {
    for (;;) {
      const long long b = next.fetch_add(1);
      if (b >= nblocks) break;
      const long long lo = b * kBlock;
      const long long hi = std::min(replicas, lo + kBlock);
      for (long long r = lo; r < hi; ++r) {
        CounterRng rng = CounterRng::for_replica(seed, static_cast<uint64_t>(r));
        LevelWalker w(g, k_max);
        for (long long i = 0; i < n; ++i) w.step(rng.next_index(g.p));
        out[static_cast<size_t>(r)] = w.pos;
      }
    }
  };
  if (T == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

VisitReport return_statistics(int dims, long long n_steps, long long replicas,
                              uint64_t seed, int threads) {
  if (dims != 2 && dims != 3) throw ValidationError("dims must be 2 or 3");
  if (n_steps < 1) throw ValidationError("n_steps must be >= 1");
  if (replicas < 1) throw ValidationError("need at least 1 replica");

  std::vector<long long> horizons;
  for (long long h = 100; h < n_steps && h <= 100000; h *= 10) horizons.push_back(h);
  horizons.push_back(n_steps);

  const GroupSpec g = sign_group();
  const int k_max = dims - 1;

  auto per_replica = [&](long long r, std::vector<double>& acc) {
    CounterRng rng = CounterRng::for_replica(seed, static_cast<uint64_t>(r));
    std::vector<int> state(static_cast<size_t>(k_max + 1), 0);
    std::vector<long long> pos(static_cast<size_t>(k_max + 1), 0);
    long long visits = 0;
    size_t hidx = 0;
    for (long long i = 1; i <= n_steps; ++i) {
      const int xi = rng.next_index(2);
      state[0] = xi;
      pos[0] += xi == 0 ? 1 : -1;
      for (int K = 1; K <= k_max; ++K) {
        int s = state[static_cast<size_t>(K)] + state[static_cast<size_t>(K - 1)];
        if (s >= 2) s -= 2;
        state[static_cast<size_t>(K)] = s;
        pos[static_cast<size_t>(K)] += s == 0 ? 1 : -1;
      }
      bool origin = true;
      for (int K = 0; K <= k_max; ++K) {
        if (pos[static_cast<size_t>(K)] != 0) {
          origin = false;
          break;
        }
      }
      if (origin) ++visits;
      if (i == horizons[hidx]) {
        acc[hidx] += static_cast<double>(visits);
        ++hidx;
      }
    }
  };
  const std::vector<double> acc = run_blocks(replicas, threads, horizons.size(), per_replica);

  VisitReport rep;
  rep.dims = dims;
  rep.n_steps = n_steps;
  rep.replicas = replicas;
  for (size_t i = 0; i < horizons.size(); ++i) {
    rep.mean_visits.emplace_back(horizons[i], acc[i] / static_cast<double>(replicas));
  }
  return rep;
}

}  // namespace bootwalk
