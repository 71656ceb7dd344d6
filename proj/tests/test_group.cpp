#include <doctest.h>

#include <set>
#include <vector>

#include "bootwalk/group.hpp"

using namespace bootwalk;

TEST_CASE("primality by trial division") {
  const long long primes[] = {2, 3, 5, 7, 11, 13, 101, 7919};
  const long long composites[] = {-7, 0, 1, 4, 6, 8, 9, 10, 12, 100, 7917};
  for (long long v : primes) CHECK(is_prime(v));
  for (long long v : composites) CHECK_FALSE(is_prime(v));
}

TEST_CASE("make_group validates order and labels") {
  CHECK_NOTHROW(make_group(2, {1.0, -1.0}));
  CHECK_NOTHROW(make_group(5, {0.0, 1.5, -1.5, 2.0, -2.0}));
  CHECK_THROWS_AS(make_group(4, {0.0, 1.0, 2.0, 3.0}), NonPrimeError);
  CHECK_THROWS_AS(make_group(1, {0.0}), NonPrimeError);
  CHECK_THROWS_AS(make_group(0, {}), NonPrimeError);
  CHECK_THROWS_AS(make_group(-3, {0.0, 1.0, 2.0}), NonPrimeError);
  CHECK_THROWS_AS(make_group(3, {0.0, 1.0}), BadValuesError);        // too few labels
  CHECK_THROWS_AS(make_group(3, {0.0, 1.0, 1.0}), BadValuesError);   // duplicate
  CHECK_THROWS_AS(make_group(2, {0.5, 0.5}), BadValuesError);
}

TEST_CASE("sign group labels") {
  const GroupSpec g = sign_group();
  CHECK(g.p == 2);
  CHECK(g.value_of(g.unit()) == 1.0);
  CHECK(g.value_of(Element{1}) == -1.0);
  CHECK(sigma2(g) == 1.0);
  CHECK(label_mean(g) == 0.0);
}

TEST_CASE("centered groups have zero-mean ascending integer labels") {
  CHECK(centered_group(2).values == std::vector<double>{1.0, -1.0});
  CHECK(centered_group(3).values == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(centered_group(5).values == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const GroupSpec g = centered_group(p);
    CHECK(g.p == p);
    CHECK(label_mean(g) == 0.0);
  }
  CHECK_THROWS_AS(centered_group(9), NonPrimeError);
}

TEST_CASE("mean square label") {
  CHECK(sigma2(centered_group(3)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(sigma2(centered_group(5)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("frozen operation values") {
  const GroupSpec g2 = centered_group(2);
  const GroupSpec g3 = centered_group(3);
  const GroupSpec g7 = centered_group(7);
  CHECK(op(Element{1}, Element{1}, g2) == Element{0});
  CHECK(op(Element{1}, Element{2}, g3) == Element{0});
  CHECK(power(Element{3}, 5, g7) == Element{1});  // 3 * 5 = 15 = 1 mod 7
}

TEST_CASE("group axioms hold elementwise") {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const GroupSpec g = centered_group(p);
    for (int a = 0; a < p; ++a) {
      const Element ea{a};
      CHECK(op(ea, g.unit(), g) == ea);
      CHECK(op(g.unit(), ea, g) == ea);
      CHECK(op(ea, inverse(ea, g), g) == g.unit());
      for (int b = 0; b < p; ++b) {
        const Element eb{b};
        CHECK(op(ea, eb, g) == op(eb, ea, g));
        for (int c = 0; c < p; ++c) {
          const Element ec{c};
          CHECK(op(ea, op(eb, ec, g), g) == op(op(ea, eb, g), ec, g));
        }
      }
    }
  }
}

TEST_CASE("powers reduce mod p and nothing else") {
  for (int p : {2, 3, 5, 7}) {
    const GroupSpec g = centered_group(p);
    for (int a = 0; a < p; ++a) {
      const Element ea{a};
      CHECK(power(ea, 0, g) == g.unit());
      CHECK(power(ea, 1, g) == ea);
      CHECK(power(ea, p, g) == g.unit());
      for (long long m = -3 * p; m <= 3 * p; ++m) {
        for (long long w = -3 * p; w <= 3 * p; ++w) {
          const bool same = power(ea, m, g) == power(ea, w, g);
          const bool congruent = ((m - w) % p + p) % p == 0;
          if (a != 0) {
            CHECK(same == congruent);
          } else {
            CHECK(same);  // the unit absorbs every exponent
          }
        }
      }
    }
  }
}

TEST_CASE("every non-unit element generates the whole group") {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const GroupSpec g = centered_group(p);
    for (int a = 1; a < p; ++a) {
      std::set<int> orbit;
      for (int k = 0; k < p; ++k) orbit.insert(power(Element{a}, k, g).index);
      CHECK(orbit.size() == static_cast<size_t>(p));
    }
  }
}

TEST_CASE("element equality is index equality") {
  CHECK(Element{2} == Element{2});
  CHECK_FALSE(Element{2} == Element{3});
  CHECK(Element{} == Element{0});
}
