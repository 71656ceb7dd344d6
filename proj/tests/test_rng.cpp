#include <doctest.h>

#include <array>
#include <cstdint>
#include <vector>

#include "bootwalk/rng.hpp"

using bootwalk::CounterRng;

TEST_CASE("draws are a pure function of key and counter") {
  CounterRng a(12345);
  CounterRng b(12345);
  for (int i = 0; i < 200; ++i) CHECK(a.next() == b.next());

  // Random access reproduces the sequential stream.
  CounterRng c(9876);
  for (uint64_t i = 0; i < 50; ++i) CHECK(c.next() == CounterRng::at(9876, i));

  // A counter offset starts mid-stream.
  CounterRng d(9876, 7);
  CHECK(d.next() == CounterRng::at(9876, 7));
  CHECK(d.counter() == 8);
}

TEST_CASE("replica streams separate cleanly") {
  const uint64_t master = 42;
  CounterRng r0 = CounterRng::for_replica(master, 0);
  CounterRng r1 = CounterRng::for_replica(master, 1);
  CHECK(r0.key() != r1.key());

  int agreements = 0;
  for (int i = 0; i < 64; ++i) {
    if (r0.next() == r1.next()) ++agreements;
  }
  CHECK(agreements == 0);

  // Same master and replica means the same stream.
  CounterRng r0b = CounterRng::for_replica(master, 0);
  CHECK(r0b.key() == CounterRng::for_replica(master, 0).key());

  // Different masters give different replica-0 streams.
  CHECK(CounterRng::for_replica(1, 0).key() != CounterRng::for_replica(2, 0).key());
}

TEST_CASE("next_index stays in range and fills every residue") {
  for (int p : {2, 3, 5, 7}) {
    CounterRng rng(777);
    std::vector<long long> counts(static_cast<size_t>(p), 0);
    const long long draws = 60000;
    for (long long i = 0; i < draws; ++i) {
      const int w = rng.next_index(p);
      REQUIRE(w >= 0);
      REQUIRE(w < p);
      counts[static_cast<size_t>(w)]++;
    }
    // Each residue should land near draws / p; 5 sigma of a binomial is
    // well under a 6% relative window at this sample size.
    const double expect = static_cast<double>(draws) / p;
    for (int v = 0; v < p; ++v) {
      CHECK(static_cast<double>(counts[static_cast<size_t>(v)]) > 0.94 * expect);
      CHECK(static_cast<double>(counts[static_cast<size_t>(v)]) < 1.06 * expect);
    }
  }
}

TEST_CASE("next_index is deterministic per seed") {
  CounterRng a(31415), b(31415);
  for (int i = 0; i < 500; ++i) CHECK(a.next_index(7) == b.next_index(7));
}

TEST_CASE("next_unit lands in the half-open unit interval") {
  CounterRng rng(2718);
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  const double mean = sum / draws;
  CHECK(mean > 0.48);
  CHECK(mean < 0.52);
}
