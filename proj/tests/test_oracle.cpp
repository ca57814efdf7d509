#include <doctest.h>

#include "hamming_shift/oracle.hpp"

using namespace hamming_shift;

TEST_CASE("brute_force_joint small tables") {
  const BitString alpha = BitString::from_binary_text("01");
  const auto dist = oracle::brute_force_joint(alpha, Modulus::pow2(2));
  CHECK(dist.count(0, 1) == 1);
  CHECK(dist.count(1, 1) == 1);
  CHECK(dist.count(1, 2) == 1);
  CHECK(dist.count(2, 0) == 1);
  CHECK(dist.sum() == 4);

  const auto diag = oracle::brute_force_joint(BitString::zeros(3), Modulus::pow2(3));
  for (std::size_t x = 0; x <= 3; ++x) CHECK(diag.count(x, x) == binomial(3, x));
  CHECK(diag.sum() == 8);
}

TEST_CASE("brute_force_joint totals") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const BitString alpha = BitString::from_integer(BigInt(5) % (pow2(n) - 1), n);
    CHECK(oracle::brute_force_joint(alpha, Modulus::pow2(n)).sum() == pow2(n));
    CHECK(oracle::brute_force_joint(alpha, Modulus::pow2_minus_1(n)).sum() == pow2(n) - 1);
  }
}

TEST_CASE("brute_force_joint width guard") {
  CHECK_THROWS_WITH_AS(oracle::brute_force_joint(BitString::zeros(25), Modulus::pow2(25)),
                       doctest::Contains("n <= 24"), Error);
}

TEST_CASE("brute_force_block examples") {
  const auto tally = oracle::brute_force_block(1, 2, 0);
  CHECK(tally.total == 4);
  CHECK(tally.counts.at({0, 2, 0}) == 1);
  CHECK(tally.counts.at({1, 0, 1}) == 1);
  CHECK(tally.counts.at({1, 1, 1}) == 1);
  CHECK(tally.counts.at({2, 1, 1}) == 1);
  CHECK(tally.count_with_carry_out(1) == 3);

  const auto zero = oracle::brute_force_block(0, 1, 0);
  CHECK(zero.counts.at({0, 0, 0}) == 1);
  CHECK(zero.counts.at({1, 1, 0}) == 1);

  const auto carried = oracle::brute_force_block(1, 1, 1);
  CHECK(carried.counts.at({0, 0, 1}) == 1);
  CHECK(carried.counts.at({1, 1, 1}) == 1);
}

TEST_CASE("brute_force_block totals and guard") {
  for (std::size_t L = 1; L <= 10; ++L)
    CHECK(oracle::brute_force_block(1, L, 0).total == (std::uint64_t{1} << L));
  CHECK_THROWS_AS(oracle::brute_force_block(1, 21, 0), Error);
}
