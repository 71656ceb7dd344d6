#include "bootwalk/nu.hpp"

#include <string>

#include "bootwalk/group.hpp"

namespace bootwalk {

namespace {

// binom(a, b) mod p for digits 0 <= a < p. Products stay far below 2^63
// for any prime that fits a digit table (p <= 61 is already generous).
int digit_binom_mod(int a, int b, int p) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  long long num = 1;
  long long den = 1;
  for (int i = 1; i <= b; ++i) {
    num *= a + 1 - i;
    den *= i;
  }
  return static_cast<int>((num / den) % p);
}

void check_prime(int p) {
  if (!is_prime(p)) {
    throw NonPrimeError("modulus must be prime, got " + std::to_string(p));
  }
}

}  // namespace

NuTable build_nu_recurrence(int p, long long k_max, long long n_max) {
  check_prime(p);
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");

  NuTable t{p, k_max, n_max,
            std::vector<int>(static_cast<size_t>((k_max + 1) * n_max), 0)};
  t.data[0] = 1;  // (K=0, n=1); the rest of row 0 stays 0
  for (long long K = 1; K <= k_max; ++K) {
    int* row = t.data.data() + K * n_max;
    const int* above = t.data.data() + (K - 1) * n_max;
    row[0] = 1;
    for (long long n = 2; n <= n_max; ++n) {
      int v = row[n - 2] + above[n - 1];
      if (v >= p) v -= p;
      row[n - 1] = v;
    }
  }
  return t;
}

int nu_lucas(long long K, long long n, int p) {
  check_prime(p);
  if (K < 0) throw ValidationError("K must be >= 0");
  if (n < 1) throw ValidationError("n must be >= 1");
  if (K == 0) return n == 1 ? 1 : 0;

  long long top = n + K - 2;
  long long bot = n - 1;
  int res = 1;
  while (bot > 0) {
    const int td = static_cast<int>(top % p);
    const int bd = static_cast<int>(bot % p);
    if (bd > td) return 0;
    res = res * digit_binom_mod(td, bd, p) % p;
    top /= p;
    bot /= p;
  }
  return res;
}

Omega omega(long long K, int p) {
  check_prime(p);
  if (K < 0) throw ValidationError("K must be >= 0");
  if (K == 0) return Omega{false, 0};

  // The first nonzero lag sits at p^ceil(log_p K) + 1 in the worst case
  // (K itself a power of p); the cap leaves room beyond it.
  long long pw = 1;
  while (pw < K) pw *= p;
  const long long cap = 2 * pw + 2;
  for (long long n = 2; n <= cap; ++n) {
    if (nu_lucas(K, n, p) != 0) return Omega{true, n};
  }
  throw ScanCapError("no nonzero entry in row " + std::to_string(K) +
                     " within scan cap " + std::to_string(cap));
}

int nu_matrix_nonsingular(long long K, int p) {
  check_prime(p);
  if (K < 1) throw ValidationError("K must be >= 1");

  const int k = static_cast<int>(K);
  std::vector<std::vector<int>> m(static_cast<size_t>(k),
                                  std::vector<int>(static_cast<size_t>(k)));
  for (int r = 1; r <= k; ++r) {
    for (int c = 1; c <= k; ++c) {
      m[r - 1][c - 1] = nu_lucas(r, c + 1, p);
    }
  }

  // Gaussian elimination over Z_p; inverses via Fermat.
  auto mod_pow = [p](long long base, long long e) {
    long long acc = 1 % p;
    base %= p;
    while (e > 0) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return acc;
  };

  long long det = 1;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      throw SingularMatrixError("multiplicity window " + std::to_string(K) +
                                " x " + std::to_string(K) + " singular mod " +
                                std::to_string(p));
    }
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = (p - det % p) % p;
    }
    const long long pv = m[col][col];
    det = det * pv % p;
    const long long inv = mod_pow(pv, p - 2);
    for (int r = col + 1; r < k; ++r) {
      if (m[r][col] == 0) continue;
      const long long f = m[r][col] * inv % p;
      for (int c = col; c < k; ++c) {
        m[r][c] = static_cast<int>(((m[r][c] - f * m[col][c]) % p + p) % p);
      }
    }
  }
  if (det == 0) {
    throw SingularMatrixError("multiplicity window " + std::to_string(K) +
                              " x " + std::to_string(K) + " singular mod " +
                              std::to_string(p));
  }
  return static_cast<int>(det);
}

}  // namespace bootwalk
