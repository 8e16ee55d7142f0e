#include <gtest/gtest.h>

#include <random>

#include "nilcap/arith.hpp"

using namespace nilcap::arith;

namespace {

// Legendre's formula for vp(n!), so vp(C(n,a)) needs no big integers.
std::uint64_t vp_factorial(std::uint64_t n, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::uint64_t q = p; q <= n; q *= p) v += n / q;
  return v;
}

}  // namespace

TEST(Valuation, SmallValues) {
  EXPECT_TRUE(vp(std::uint64_t{0}, 5).is_infinite());
  EXPECT_EQ(vp(std::uint64_t{1}, 3), Valuation(0));
  EXPECT_EQ(vp(std::uint64_t{72}, 2), Valuation(3));
  EXPECT_EQ(vp(std::uint64_t{72}, 3), Valuation(2));
  EXPECT_THROW(Valuation::infinity().value(), std::logic_error);
}

TEST(Valuation, BigIntegerAgreesWithMachineWords) {
  for (std::uint64_t a = 1; a < 2000; ++a) {
    for (std::uint64_t p : {2, 3, 5, 7}) EXPECT_EQ(vp(BigInt(a), p), vp(a, p));
  }
  EXPECT_EQ(vp(binomial(1000, 500), 2).value(), vp_factorial(1000, 2) - 2 * vp_factorial(500, 2));
}

TEST(Valuation, RejectsComposites) {
  EXPECT_THROW(vp(std::uint64_t{10}, 4), std::invalid_argument);
  EXPECT_THROW(require_prime(1), std::invalid_argument);
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
}

TEST(Kummer, Examples) {
  EXPECT_EQ(kummer_binom_val(2, 3, 4), 1u);
  EXPECT_EQ(kummer_binom_val(3, 2, 3), 1u);
  EXPECT_EQ(kummer_binom_val(5, 1, 5), 0u);
}

TEST(Kummer, MatchesLegendre) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::uint64_t n = 1; n <= 4; ++n) {
      const std::uint64_t top = checked_pow(p, n);
      for (std::uint64_t a = 1; a <= top; ++a) {
        const std::uint64_t expect = vp_factorial(top, p) - vp_factorial(a, p) - vp_factorial(top - a, p);
        ASSERT_EQ(kummer_binom_val(p, n, a), expect) << p << " " << n << " " << a;
      }
    }
  }
}

TEST(BinomialSums, Examples) {
  EXPECT_EQ(binom_sum_bound(2, 4, 3), 3u);
  EXPECT_EQ(binom_sum_bound(3, 2, 1), 2u);
  EXPECT_EQ(binom_sum_bound(2, 3, 8), 0u);
}

TEST(BinomialSums, RandomCombinationsAreDivisible) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> coef(-50, 50);
  for (std::uint64_t p : {2, 3}) {
    for (std::uint64_t n = 1; n <= 3; ++n) {
      const std::uint64_t top = checked_pow(p, n);
      for (std::uint64_t m = 1; m <= top; ++m) {
        const BigInt mod = checked_pow(p, binom_sum_bound(p, n, m));
        for (int t = 0; t < 30; ++t) {
          BigInt s = 0;
          for (std::uint64_t i = 1; i <= m; ++i) s += BigInt(coef(rng)) * binomial(top, i);
          ASSERT_EQ(s % mod, 0) << p << " " << n << " " << m;
        }
      }
    }
  }
}

TEST(HallBound, Examples) {
  EXPECT_EQ(hall_bound_max(5, 3).max, 2u);
  EXPECT_EQ(hall_bound_max(5, 3).argmax, 2u);
  EXPECT_EQ(hall_bound_max(1, 2).max, 1u);
  EXPECT_EQ(hall_bound_max(1, 2).argmax, 1u);
  EXPECT_EQ(hall_bound_max(2, 5).max, 0u);
}

TEST(HallBound, MaximumAgreesWithTestLocalSearch) {
  for (std::uint64_t k = 1; k <= 40; ++k) {
    for (std::uint64_t n = 2; n <= 6; ++n) {
      std::uint64_t best = 0;
      for (std::uint64_t s = 1; s <= k; ++s) best = std::max(best, (k - s) / (n - 1) + floor_log(n, s + 1));
      EXPECT_EQ(hall_bound_max(k, n).max, best);
      EXPECT_EQ(hall_bound_max_brute(k, n).max, best);
    }
  }
}

TEST(Slack, Examples) {
  EXPECT_EQ(capability_slack(3, 2), 0u);
  EXPECT_EQ(capability_slack(2, 2), 1u);
  EXPECT_EQ(capability_slack(2, 4), 3u);
  EXPECT_EQ(capability_slack(5, 9), 2u);
}

TEST(Helpers, PowersLogsAndChoose) {
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_THROW(checked_pow(10, 30), std::overflow_error);
  EXPECT_EQ(floor_log(2, 8), 3u);
  EXPECT_EQ(floor_log(3, 8), 1u);
  EXPECT_EQ(choose2(4), 6);
  EXPECT_EQ(choose2(-2), 3);
  EXPECT_EQ(binomial(9, 3), 84);
}
