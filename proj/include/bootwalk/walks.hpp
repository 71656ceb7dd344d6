#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bootwalk/exact.hpp"
#include "bootwalk/group.hpp"
#include "bootwalk/operators.hpp"

namespace bootwalk {

// One realization: increment triangle plus the walk of each level.
// paths[K][i] is the level-K walk after i steps, paths[K][0] = 0.
struct WalkPath {
  GroupSpec group;
  long long k_max = 0;
  long long n = 0;
  IncrementTriangle triangle;
  std::vector<std::vector<double>> paths;
};

// Draws n uniform increments from replica stream 0 of `seed` and builds
// all levels 0..k_max. Labels must sum to zero (NonZeroMeanError), else
// the walks drift.
WalkPath simulate_path(const GroupSpec& g, long long k_max, long long n, uint64_t seed);

// The level-1 walk over the +-1 group, computed without any triangle:
// the next level-1 step is the fresh input times a sign read off the
// current level-0 position, sign = (-1)^((m - X_m)/2). Consumes the same
// stream as simulate_path, so the two must agree path for path.
// Returns (level-0 path, level-1 path), both with leading 0.
std::pair<std::vector<double>, std::vector<double>> step_recursion_path(long long n,
                                                                        uint64_t seed);

// One covariance cell: estimate of E[level-K walk at m * level-J walk
// at n] against the closed form min(m, omega_{|K-J|} - 1) * sigma2.
struct CovarianceEntry {
  int K = 0;
  int J = 0;
  long long m = 0;
  long long n = 0;
  double theory = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;  // 0 in exact mode
  double z = 0.0;          // (estimate - theory) / std_error, 0 in exact mode
};

struct CovarianceReport {
  bool exact = false;
  long long samples = 0;  // replicas, or enumerated sequences in exact mode
  double sigma2 = 0.0;
  std::vector<CovarianceEntry> entries;  // all ordered pairs (K, J), K,J <= k_max
};

// Monte Carlo over `replicas` independent paths. Deterministic for any
// thread count: replicas are accumulated in fixed blocks merged in block
// order.
CovarianceReport covariance_check(const GroupSpec& g, int k_max, long long m,
                                  long long n, long long replicas, uint64_t seed,
                                  int threads = 1);

// Same cells by full enumeration; estimate is then the exact expectation
// and must equal theory to rounding.
CovarianceReport covariance_check_exact(const GroupSpec& g, int k_max, long long m,
                                        long long n,
                                        long long budget = kDefaultEnumBudget);

// Scaling-limit diagnostics of the level walks at horizon n:
//  - pairwise correlations of endpoints (limits are independent, so these
//    shrink like sqrt(omega/n));
//  - endpoint variance over sigma2 * n (tends to 1);
//  - endpoint fourth moment over 3 sigma2^2 n^2 (Gaussian fourth moment);
//  - variance ratio at the quarter points of the path (linear growth).
// Each statistic carries the tolerance a Gaussian-limit sampling error
// analysis allows at 4 standard errors.
struct EnsembleStat {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct EnsembleStats {
  long long n = 0;
  long long replicas = 0;
  double sigma2 = 0.0;
  // Endpoint moment matrices, indexed [K][J], K, J = 0..k_max; both
  // symmetric by construction.
  std::vector<std::vector<double>> cross_moments;  // E[Y_K(n) Y_J(n)] estimates
  std::vector<std::vector<double>> correlations;   // unit diagonal
  std::vector<EnsembleStat> stats;
  bool all_pass() const {
    for (const auto& s : stats) {
      if (!s.pass) return false;
    }
    return true;
  }
};

// Needs n >= 100 and replicas >= 1000: below that the tolerances the
// stats carry would not separate signal from noise.
EnsembleStats fclt_diagnostics(const GroupSpec& g, int k_max, long long n,
                               long long replicas, uint64_t seed, int threads = 1);

// Endpoint of every level walk per replica, row r = replica r. Matches
// fclt_diagnostics replica for replica.
std::vector<std::vector<double>> ensemble_terminals(const GroupSpec& g, int k_max,
                                                    long long n, long long replicas,
                                                    uint64_t seed, int threads = 1);

// Mean number of joint returns to the origin of the first `dims` level
// walks (+-1 group) within growing horizons. Recurrent regimes keep
// growing, transient ones flatten out.
struct VisitReport {
  int dims = 2;
  long long n_steps = 0;
  long long replicas = 0;
  std::vector<std::pair<long long, double>> mean_visits;  // (horizon, mean)
};

VisitReport return_statistics(int dims, long long n_steps, long long replicas,
                              uint64_t seed, int threads = 1);

}  // namespace bootwalk
