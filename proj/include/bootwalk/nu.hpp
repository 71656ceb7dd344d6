#pragma once

#include <algorithm>
#include <vector>

#include "bootwalk/errors.hpp"

namespace bootwalk {

// Multiplicity table of the iterated recycling operator, reduced mod p.
// Entry (K, n) is the exponent with which the input n steps back enters
// level K; it equals binom(n+K-2, n-1) mod p. Row 0 is the identity row
// 1, 0, 0, ...; column n = 1 is all ones.
struct NuTable {
  int p = 2;
  long long k_max = 0;
  long long n_max = 1;
  std::vector<int> data;  // row-major, K in 0..k_max, n in 1..n_max

  int at(long long K, long long n) const {
    return data[static_cast<size_t>(K * n_max + (n - 1))];
  }
};

// Fills the table by the defining two-term recurrence
// entry(K, n) = entry(K, n-1) + entry(K-1, n) mod p.
NuTable build_nu_recurrence(int p, long long k_max, long long n_max);

// Single entry via base-p digit products (no table, O(log n) time).
int nu_lucas(long long K, long long n, int p);

// First lag n >= 2 with a nonzero entry in row K. Level K and level 0 of a
// recycled sequence decouple exactly at this lag. Row 0 has no such lag;
// that case is returned as infinite.
struct Omega {
  bool finite = true;
  long long value = 2;

  // min(m, value - 1), saturating at m when infinite.
  long long cap(long long m) const { return finite ? std::min(m, value - 1) : m; }
};

Omega omega(long long K, int p);

// Determinant over Z_p of the K x K window (entry(k, l+1))_{1<=k,l<=K}.
// Nonzero for every K and p; SingularMatrixError means the contract broke.
int nu_matrix_nonsingular(long long K, int p);

}  // namespace bootwalk
