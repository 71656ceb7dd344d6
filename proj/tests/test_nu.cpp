#include <doctest.h>

#include <vector>

#include "bootwalk/exact.hpp"
#include "bootwalk/nu.hpp"

using namespace bootwalk;

namespace {

// Independent reference for a single entry: the exact binomial
// binom(n + K - 2, n - 1) reduced mod p, computed in big integers.
int entry_by_binomial(long long K, long long n, int p) {
  const BigInt b = binom_big(n + K - 2, n - 1);
  return static_cast<int>(b % p);
}

// Fraction-free integer determinant (Bareiss) of the unreduced binomial
// window, then reduced mod p. Shares no code path with the library's
// modular elimination.
int window_det_mod(long long K, int p) {
  const size_t m = static_cast<size_t>(K);
  std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m));
  for (size_t r = 0; r < m; ++r) {
    for (size_t c = 0; c < m; ++c) {
      const long long k = static_cast<long long>(r) + 1;
      const long long n = static_cast<long long>(c) + 2;
      a[r][c] = binom_big(n + k - 2, n - 1);
    }
  }
  BigInt sign = 1;
  BigInt prev = 1;
  for (size_t col = 0; col + 1 < m; ++col) {
    if (a[col][col] == 0) {
      size_t piv = col + 1;
      while (piv < m && a[piv][col] == 0) ++piv;
      if (piv == m) return 0;
      std::swap(a[col], a[piv]);
      sign = -sign;
    }
    for (size_t r = col + 1; r < m; ++r) {
      for (size_t c = col + 1; c < m; ++c) {
        a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[col][col];
  }
  BigInt det = sign * a[m - 1][m - 1];
  BigInt res = det % p;
  if (res < 0) res += p;
  return static_cast<int>(res);
}

}  // namespace

TEST_CASE("recurrence table, digit products, and binomials all agree") {
  const long long k_max = 64, n_max = 64;
  for (int p : {2, 3, 5, 7}) {
    const NuTable t = build_nu_recurrence(p, k_max, n_max);
    CHECK(t.p == p);
    for (long long K = 0; K <= k_max; ++K) {
      for (long long n = 1; n <= n_max; ++n) {
        const int want = entry_by_binomial(K, n, p);
        CHECK(t.at(K, n) == want);
        CHECK(nu_lucas(K, n, p) == want);
      }
    }
  }
}

TEST_CASE("table edges and the defining recurrence") {
  const NuTable t = build_nu_recurrence(5, 30, 30);
  CHECK(t.at(0, 1) == 1);
  for (long long n = 2; n <= 30; ++n) CHECK(t.at(0, n) == 0);
  for (long long K = 0; K <= 30; ++K) CHECK(t.at(K, 1) == 1);
  for (long long K = 1; K <= 30; ++K) {
    for (long long n = 2; n <= 30; ++n) {
      CHECK(t.at(K, n) == (t.at(K, n - 1) + t.at(K - 1, n)) % 5);
    }
  }
}

TEST_CASE("frozen entries") {
  CHECK(nu_lucas(2, 2, 2) == 0);
  CHECK(nu_lucas(2, 4, 2) == 0);
  CHECK(nu_lucas(4, 5, 2) == 1);
  // Row K = 2 over p = 2 alternates 1, 0, 1, 0.
  const NuTable t = build_nu_recurrence(2, 2, 4);
  CHECK(t.at(2, 1) == 1);
  CHECK(t.at(2, 2) == 0);
  CHECK(t.at(2, 3) == 1);
  CHECK(t.at(2, 4) == 0);
}

TEST_CASE("entry is symmetric in level and lag") {
  for (int p : {2, 3, 5}) {
    for (long long K = 1; K <= 256; ++K) {
      for (long long n = K; n <= 256; ++n) {
        CHECK(nu_lucas(K, n, p) == nu_lucas(n, K, p));
      }
    }
  }
}

TEST_CASE("prime-power rows and columns") {
  for (int p : {2, 3, 5}) {
    long long q = 1;
    for (int l = 1; l <= 3; ++l) {
      q *= p;
      // Row K = p^l vanishes for lags 2..p^l.
      for (long long n = 2; n <= q; ++n) CHECK(nu_lucas(q, n, p) == 0);
      // Column n = p^l vanishes for levels 2..p^l, but not at level 1.
      CHECK(nu_lucas(1, q, p) == 1);
      for (long long K = 2; K <= q; ++K) CHECK(nu_lucas(K, q, p) == 0);
      // Column n = p^l + 1 is all ones up to level p^l.
      for (long long K = 1; K <= q; ++K) CHECK(nu_lucas(K, q + 1, p) == 1);
      // The anti-diagonal K + n = p^l + 1 never vanishes.
      for (long long K = 1; K <= q; ++K) CHECK(nu_lucas(K, q - K + 1, p) != 0);
    }
  }
}

TEST_CASE("first nonzero lag per row") {
  CHECK(omega(1, 2).value == 2);
  CHECK(omega(2, 2).value == 3);
  CHECK(omega(3, 2).value == 2);
  CHECK(omega(4, 2).value == 5);
  CHECK(omega(1, 3).value == 2);
  CHECK(omega(2, 3).value == 2);
  CHECK(omega(3, 3).value == 4);
  CHECK(omega(5, 5).value == 6);
  for (int p : {2, 3, 5, 7}) CHECK(omega(1, p).value == 2);

  // Row 0 has no nonzero lag at all.
  const Omega o0 = omega(0, 2);
  CHECK_FALSE(o0.finite);
  CHECK(o0.cap(7) == 7);
  CHECK(o0.cap(123456) == 123456);

  // cap(m) = min(m, omega - 1) when finite.
  CHECK(omega(2, 2).cap(7) == 2);
  CHECK(omega(2, 2).cap(1) == 1);
  CHECK(omega(4, 2).cap(100) == 4);
}

TEST_CASE("first nonzero lag matches a direct scan") {
  for (int p : {2, 3, 5, 7}) {
    for (long long K = 1; K <= 40; ++K) {
      const Omega o = omega(K, p);
      REQUIRE(o.finite);
      long long scanned = -1;
      for (long long n = 2; n <= 400; ++n) {
        if (entry_by_binomial(K, n, p) != 0) {
          scanned = n;
          break;
        }
      }
      CHECK(o.value == scanned);
    }
  }
}

TEST_CASE("window determinant matches an integer elimination oracle") {
  for (int p : {2, 3, 5, 7}) {
    for (long long K = 1; K <= 8; ++K) {
      const int got = nu_matrix_nonsingular(K, p);
      CHECK(got == window_det_mod(K, p));
      CHECK(got != 0);
    }
  }
}

TEST_CASE("window determinant stays nonzero at larger sizes") {
  for (int p : {2, 3, 5, 7}) {
    for (long long K = 9; K <= 12; ++K) {
      CHECK(nu_matrix_nonsingular(K, p) != 0);
    }
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(build_nu_recurrence(4, 3, 3), NonPrimeError);
  CHECK_THROWS_AS(build_nu_recurrence(2, -1, 3), ValidationError);
  CHECK_THROWS_AS(build_nu_recurrence(2, 3, 0), ValidationError);
  CHECK_THROWS_AS(nu_lucas(-1, 1, 2), ValidationError);
  CHECK_THROWS_AS(nu_lucas(1, 0, 2), ValidationError);
  CHECK_THROWS_AS(nu_lucas(1, 1, 6), NonPrimeError);
  CHECK_THROWS_AS(omega(-1, 2), ValidationError);
  CHECK_THROWS_AS(omega(1, 9), NonPrimeError);
  CHECK_THROWS_AS(nu_matrix_nonsingular(0, 2), ValidationError);
  CHECK_THROWS_AS(nu_matrix_nonsingular(2, 10), NonPrimeError);
}
