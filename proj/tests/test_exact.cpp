#include <doctest.h>

#include <cmath>
#include <vector>

#include "bootwalk/exact.hpp"

using namespace bootwalk;

namespace {

BigInt pow_big(long long base, long long e) {
  BigInt r = 1;
  for (long long i = 0; i < e; ++i) r *= base;
  return r;
}

void check_same_pmf(const JointPmf& a, const JointPmf& b) {
  CHECK(a.denominator == b.denominator);
  REQUIRE(a.cells.size() == b.cells.size());
  for (const auto& kv : a.cells) {
    CHECK(b.count(kv.first[0], kv.first[1], kv.first[2]) == kv.second);
  }
}

}  // namespace

TEST_CASE("exact binomials, including the degenerate corners") {
  CHECK(binom_big(4, 2) == 6);
  CHECK(binom_big(10, 0) == 1);
  CHECK(binom_big(0, 0) == 1);
  CHECK(binom_big(-1, 0) == 1);  // empty product, any upper index
  CHECK(binom_big(-2, 1) == 0);
  CHECK(binom_big(5, 6) == 0);
  CHECK(binom_big(5, -1) == 0);
  CHECK(binom_big(52, 26) == BigInt("495918532948104"));
}

TEST_CASE("frozen joint law at one and two steps") {
  const JointPmf one = joint_pmf_2d_formula(1);
  CHECK(one.denominator == 2);
  CHECK(one.cells.size() == 2);
  CHECK(one.count(1, 1) == 1);
  CHECK(one.count(-1, -1) == 1);
  CHECK(one.count(0, 0) == 0);

  const JointPmf two = joint_pmf_2d_formula(2);
  CHECK(two.denominator == 4);
  CHECK(two.cells.size() == 4);
  CHECK(two.count(2, 2) == 1);
  CHECK(two.count(0, 0) == 1);
  CHECK(two.count(0, -2) == 1);
  CHECK(two.count(-2, 0) == 1);
  CHECK(two.probability(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("closed form, enumeration, and run counting give one law") {
  for (long long n = 1; n <= 12; ++n) {
    const JointPmf formula = joint_pmf_2d_formula(n);
    const JointPmf oracle = enumerate_oracle(sign_group(), 1, n);
    const JointPmf bins = bins_pmf(n);
    check_same_pmf(formula, oracle);
    check_same_pmf(formula, bins);

    // Total mass p^n, every stored cell carries positive weight with the
    // same parity as the horizon.
    BigInt total = 0;
    for (const auto& kv : formula.cells) {
      CHECK(kv.second > 0);
      CHECK((n - kv.first[0]) % 2 == 0);
      CHECK((n - kv.first[1]) % 2 == 0);
      total += kv.second;
    }
    CHECK(total == pow_big(2, n));
  }
}

TEST_CASE("frozen run-counting cells") {
  CHECK(count_via_bins(4, 4, 4) == 1);
  CHECK(count_via_bins(2, 0, 0) == 1);
  CHECK(count_via_bins(2, 0, -2) == 1);
  CHECK(count_via_bins(3, 1, 1) == 1);  // only +,+,- lands there
}

TEST_CASE("closed form demands the two-element group") {
  CHECK_NOTHROW(joint_pmf_2d_formula(sign_group(), 3));
  CHECK_NOTHROW(joint_pmf_2d_formula(make_group(2, {-1.0, 1.0}), 3));
  CHECK_THROWS_AS(joint_pmf_2d_formula(centered_group(3), 3), UnsupportedGroupError);
  CHECK_THROWS_AS(joint_pmf_2d_formula(make_group(2, {1.0, -2.0}), 3),
                  UnsupportedGroupError);
  CHECK_THROWS_AS(joint_pmf_2d_formula(0), ValidationError);
}

TEST_CASE("frozen return probabilities") {
  CHECK(return_prob_2d(2).num == 1);
  CHECK(return_prob_2d(2).den == 4);
  CHECK(return_prob_2d(4).num == 1);
  CHECK(return_prob_2d(4).den == 8);
  CHECK(return_prob_2d(6).num == 3);
  CHECK(return_prob_2d(6).den == 32);
  CHECK(return_prob_3d(2).num == 1);
  CHECK(return_prob_3d(2).den == 4);
  CHECK(return_prob_3d(4).num == 0);
  CHECK(return_prob_3d(4).probability() == 0.0);
  CHECK(return_prob_3d(6).num == 1);
  CHECK(return_prob_3d(6).den == 64);
  CHECK(return_prob_3d(8).num == 1);
  CHECK(return_prob_3d(8).den == 64);
  CHECK(return_prob_3d(10).num == 13);
  CHECK(return_prob_3d(10).den == 1024);
}

TEST_CASE("return probabilities match the enumerated origin cell") {
  for (long long steps = 2; steps <= 14; steps += 2) {
    const JointPmf o2 = enumerate_oracle(sign_group(), 1, steps);
    const ReturnProb r2 = return_prob_2d(steps);
    REQUIRE(r2.has_exact);
    CHECK(r2.num * pow_big(2, steps) == r2.den * o2.count(0, 0));

    const JointPmf o3 = enumerate_oracle(sign_group(), 2, steps);
    const ReturnProb r3 = return_prob_3d(steps);
    REQUIRE(r3.has_exact);
    CHECK(r3.num * pow_big(2, steps) == r3.den * o3.count(0, 0, 0));
  }
}

TEST_CASE("log form tracks the exact rational") {
  for (long long steps = 2; steps <= 64; steps += 2) {
    for (int dims : {2, 3}) {
      const ReturnProb r = dims == 2 ? return_prob_2d(steps) : return_prob_3d(steps);
      REQUIRE(r.has_exact);
      if (r.num == 0) {
        CHECK(std::isinf(r.log_prob));
        CHECK(r.log_prob < 0);
      } else {
        const double exact =
            r.num.convert_to<double>() / r.den.convert_to<double>();
        CHECK(std::exp(r.log_prob) == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }
  // Far beyond the rational window the log form is all there is.
  const ReturnProb big = return_prob_2d(2000);
  CHECK_FALSE(big.has_exact);
  CHECK(big.log_prob < 0.0);
  CHECK(std::isfinite(big.log_prob));
}

TEST_CASE("step-count validation") {
  CHECK_THROWS_AS(return_prob_2d(7), OddStepsError);
  CHECK_THROWS_AS(return_prob_3d(9), OddStepsError);
  CHECK_THROWS_AS(return_prob_2d(0), ValidationError);
  CHECK_THROWS_AS(return_prob_3d(-2), ValidationError);
}

TEST_CASE("return series shares rows with the single queries") {
  const std::vector<ReturnProb> rows = return_prob_series(2, 12);
  REQUIRE(rows.size() == 6);
  for (size_t i = 0; i < rows.size(); ++i) {
    const long long steps = 2 * static_cast<long long>(i + 1);
    CHECK(rows[i].steps == steps);
    CHECK(rows[i].log_prob ==
          doctest::Approx(return_prob_2d(steps).log_prob).epsilon(1e-13));
  }
  const std::vector<ReturnProb> rows3 = return_prob_series(3, 10);
  REQUIRE(rows3.size() == 5);
  CHECK(rows3[3].num == 1);  // 8 steps
  CHECK(rows3[3].den == 64);

  CHECK_THROWS_AS(return_prob_series(2, 2'000'002), BudgetExceededError);
  CHECK_THROWS_AS(return_prob_series(3, 40'002), BudgetExceededError);
  CHECK_THROWS_AS(return_prob_series(4, 10), ValidationError);
}

TEST_CASE("partial sums of the quarter-step return series") {
  const std::vector<double> s2 = partial_sum_divergence(2, 50);
  REQUIRE(s2.size() == 50);
  CHECK(s2[0] == doctest::Approx(0.125).epsilon(1e-13));  // one term: 4 steps
  const std::vector<double> s3 = partial_sum_divergence(3, 50);
  CHECK(s3[0] == 0.0);                                     // 4 steps never return
  CHECK(s3[1] == doctest::Approx(1.0 / 64.0).epsilon(1e-13));

  // Increments are the return probabilities at 4m steps.
  for (long long m = 2; m <= 50; ++m) {
    const double inc2 = s2[static_cast<size_t>(m - 1)] - s2[static_cast<size_t>(m - 2)];
    CHECK(inc2 ==
          doctest::Approx(std::exp(return_prob_2d(4 * m).log_prob)).epsilon(1e-11));
    const double inc3 = s3[static_cast<size_t>(m - 1)] - s3[static_cast<size_t>(m - 2)];
    CHECK(inc3 ==
          doctest::Approx(std::exp(return_prob_3d(4 * m).log_prob)).epsilon(1e-11));
  }
  // Monotone, and the planar sums clearly outgrow the spatial ones.
  CHECK(s2[49] > s2[9]);
  CHECK(s3[49] < 0.08);

  CHECK_THROWS_AS(partial_sum_divergence(4, 10), ValidationError);
  CHECK_THROWS_AS(partial_sum_divergence(2, 0), ValidationError);
}

TEST_CASE("log-log decay slopes") {
  CHECK(decay_exponent_2d(100, 1000) == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(decay_exponent_3d(10, 100) <= -1.1);
  CHECK(decay_exponent_3d(100, 1000) <= -1.3);
  CHECK_THROWS_AS(decay_exponent_2d(0, 10), ValidationError);
  CHECK_THROWS_AS(decay_exponent_3d(1, 100), ValidationError);
  CHECK_THROWS_AS(decay_exponent_2d(10, 10), ValidationError);
}

TEST_CASE("biased level-1 law") {
  CHECK(biased_eta_law(0.75, 2) == doctest::Approx(0.625).epsilon(1e-12));
  for (double bias : {0.6, 0.75}) {
    for (int n = 1; n <= 8; ++n) {
      const double want = 0.5 * (1.0 + std::pow(2.0 * bias - 1.0, n));
      CHECK(biased_eta_law(bias, n) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  for (int n = 1; n <= 6; ++n) {
    CHECK(biased_eta_law(0.5, n) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(biased_eta_law(0.0, 2), ValidationError);
  CHECK_THROWS_AS(biased_eta_law(1.0, 2), ValidationError);
  CHECK_THROWS_AS(biased_eta_law(0.5, 0), ValidationError);
  CHECK_THROWS_AS(biased_eta_law(0.5, 25), BudgetExceededError);
}

TEST_CASE("path enumeration visits every sequence once") {
  const GroupSpec g = centered_group(3);
  long long visits = 0;
  enumerate_paths(g, 2, 4, 1000, [&](const std::vector<std::vector<uint8_t>>& rows) {
    REQUIRE(rows.size() == 3);
    // Each row is the running product of the one above.
    for (int K = 1; K <= 2; ++K) {
      int acc = 0;
      for (size_t i = 0; i < 4; ++i) {
        acc = (acc + rows[static_cast<size_t>(K - 1)][i]) % 3;
        CHECK(static_cast<int>(rows[static_cast<size_t>(K)][i]) == acc);
      }
    }
    ++visits;
  });
  CHECK(visits == 81);

  CHECK_THROWS_AS(enumerate_paths(sign_group(), 1, 3, 7, [](const auto&) {}),
                  BudgetExceededError);
  CHECK_NOTHROW(enumerate_paths(sign_group(), 1, 3, 8, [](const auto&) {}));
}

TEST_CASE("enumeration oracle is schedule independent") {
  // 3^9 = 19683 sequences spans several work blocks, so extra threads
  // genuinely split the range.
  const GroupSpec g = centered_group(3);
  const JointPmf a = enumerate_oracle(g, 2, 9, kDefaultEnumBudget, 1);
  const JointPmf b = enumerate_oracle(g, 2, 9, kDefaultEnumBudget, 4);
  const JointPmf c = enumerate_oracle(g, 2, 9, kDefaultEnumBudget, 2);
  check_same_pmf(a, b);
  check_same_pmf(a, c);
  CHECK(a.denominator == pow_big(3, 9));
}

TEST_CASE("enumeration oracle validation") {
  CHECK_THROWS_AS(enumerate_oracle(sign_group(), 3, 4), ValidationError);
  CHECK_THROWS_AS(enumerate_oracle(sign_group(), 1, 0), ValidationError);
  CHECK_THROWS_AS(enumerate_oracle(sign_group(), 1, 40), BudgetExceededError);
  CHECK_THROWS_AS(enumerate_oracle(make_group(2, {0.5, -0.5}), 1, 4), BadValuesError);
}

TEST_CASE("pair chain structure at small horizons") {
  // Horizon 1: nothing to compare yet, every check passes vacuously.
  const MarkovReport r1 = markov_checks(1);
  CHECK(r1.histories_checked == 2);
  CHECK(r1.pair_is_markov);
  CHECK(r1.subsampled_homogeneous);
  CHECK_FALSE(r1.raw_chain_time_dependent);
  bool noted = false;
  for (const auto& s : r1.notes) {
    if (s.find("vacuously") != std::string::npos) noted = true;
  }
  CHECK(noted);

  // Horizon 5: the Markov property is testable, homogeneity is not.
  const MarkovReport r5 = markov_checks(5);
  CHECK(r5.histories_checked == 32);
  CHECK(r5.pair_is_markov);
  CHECK(r5.subsampled_homogeneous);
  CHECK(r5.raw_chain_time_dependent);

  // Two full four-step windows: homogeneity becomes a real comparison.
  for (int n : {8, 12}) {
    const MarkovReport r = markov_checks(n);
    CHECK(r.histories_checked == (1LL << n));
    CHECK(r.pair_is_markov);
    CHECK(r.subsampled_homogeneous);
    CHECK(r.raw_chain_time_dependent);
    for (const auto& s : r.notes) {
      CHECK(s.find("vacuously") == std::string::npos);
    }
  }

  CHECK_THROWS_AS(markov_checks(0), ValidationError);
  CHECK_THROWS_AS(markov_checks(13), BudgetExceededError);
}
