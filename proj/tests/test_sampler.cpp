#include <doctest.h>

#include <cstdlib>

#include "hamming_shift/exact_dp.hpp"
#include "hamming_shift/sampler.hpp"
#include "hamming_shift/serialize.hpp"

using namespace hamming_shift;

TEST_CASE("estimate_fraction is zero for alpha = 0") {
  const auto est = estimate_fraction(BitString::zeros(32), Modulus::pow2(32), 5000, 9);
  CHECK(est.hits == 0);
  CHECK(est.estimate == 0.0);
  CHECK(est.standard_error == 0.0);
}

TEST_CASE("estimate_fraction agrees with the exact DP within 3 sigma") {
  const std::size_t n = 32;
  const BitString alpha = parse_alpha("pat:(01)^16", n);
  const auto r = shift_report(alpha, Modulus::pow2(n));
  const double exact =
      Rational(r.light_to_heavy, r.total).convert_to<double>();
  const auto est = estimate_fraction(alpha, Modulus::pow2(n), 100000, 31337);
  CHECK(std::abs(est.estimate - exact) <= 3.0 * est.standard_error);
}

TEST_CASE("seed determinism across thread budgets") {
  const BitString alpha = parse_alpha("pat:(01)^16", 32);
  const auto a = estimate_fraction(alpha, Modulus::pow2(32), 40000, 7);

  setenv("HAMMING_SHIFT_THREADS", "1", 1);
  const auto b = estimate_fraction(alpha, Modulus::pow2(32), 40000, 7);
  unsetenv("HAMMING_SHIFT_THREADS");

  CHECK(a.hits == b.hits);
  CHECK(json_of(a).dump() == json_of(b).dump());
}

TEST_CASE("sample_joint basics") {
  SUBCASE("alpha = 0 leaves only diagonal support") {
    const auto joint = sample_joint(BitString::zeros(24), Modulus::pow2(24), 3000, 4);
    std::uint64_t total = 0;
    for (const auto& [xy, c] : joint.counts) {
      CHECK(xy.first == xy.second);
      total += c;
    }
    CHECK(total == 3000);
  }
  SUBCASE("a single sample is a single unit count") {
    const auto joint = sample_joint(BitString::zeros(8), Modulus::pow2(8), 1, 4);
    CHECK(joint.counts.size() == 1);
    CHECK(joint.counts.begin()->second == 1);
  }
  SUBCASE("deterministic across thread budgets") {
    const BitString alpha = parse_alpha("pat:(0101)^4", 16);
    const auto a = sample_joint(alpha, Modulus::pow2(16), 20000, 99);
    setenv("HAMMING_SHIFT_THREADS", "1", 1);
    const auto b = sample_joint(alpha, Modulus::pow2(16), 20000, 99);
    unsetenv("HAMMING_SHIFT_THREADS");
    CHECK(a.counts == b.counts);
  }
}

TEST_CASE("empirical joint approaches the exact law in total variation") {
  const std::size_t n = 16;
  const BitString alpha = parse_alpha("pat:(01)^8", n);
  const auto exact = joint_distribution(alpha, Modulus::pow2(n));
  const auto emp = sample_joint(alpha, Modulus::pow2(n), 1000000, 1234);

  Rational tv = 0;
  for (std::size_t x = 0; x <= n; ++x)
    for (std::size_t y = 0; y <= n; ++y) {
      const auto it = emp.counts.find({x, y});
      const Rational p_emp(it == emp.counts.end() ? 0 : it->second, emp.samples);
      const Rational p_exact(exact.count(x, y), exact.total());
      tv += p_emp > p_exact ? p_emp - p_exact : p_exact - p_emp;
    }
  tv /= 2;
  CHECK(tv.convert_to<double>() <= 0.01);
}

TEST_CASE("pow2m1 sampling rejects the all-ones string") {
  const std::size_t n = 8;
  const BitString alpha = BitString::from_integer(3, n);
  // Large enough that an unrejected 1^8 (p = 1/256 per draw) would appear.
  const auto joint = sample_joint(alpha, Modulus::pow2_minus_1(n), 100000, 5);
  for (const auto& [xy, c] : joint.counts) CHECK(xy.first < n);
  CHECK_THROWS_AS(estimate_fraction(BitString::ones(n), Modulus::pow2_minus_1(n), 10, 1), Error);
}

TEST_CASE("sampling guards") {
  CHECK_THROWS_AS(estimate_fraction(BitString::zeros(8), Modulus::pow2(8), 0, 1), Error);
  CHECK_THROWS_AS(sample_joint(BitString::zeros(8), Modulus::pow2(8), 0, 1), Error);
  CHECK_THROWS_AS(estimate_fraction(BitString::zeros(8), Modulus::pow2(9), 10, 1), Error);
}

TEST_CASE("stderr formula") {
  const BitString alpha = parse_alpha("pat:(01)^16", 32);
  const auto est = estimate_fraction(alpha, Modulus::pow2(32), 50000, 3);
  const double p = est.estimate;
  CHECK(est.standard_error == doctest::Approx(std::sqrt(p * (1 - p) / 50000.0)));
  CHECK(est.generator == std::string("splitmix64"));
  CHECK(est.estimate >= 0.0);
  CHECK(est.estimate <= 1.0);
}

TEST_CASE("very wide strings: weights and estimates at n = 4096") {
  // Frozen pilot threshold: the alternating alpha keeps a fraction near 0.3
  // at large widths; 0.02 is a deliberately loose floor.
  const std::size_t n = 4096;
  const BitString alpha = parse_alpha("pat:(01)^2048", n);
  const auto est = estimate_fraction(alpha, Modulus::pow2(n), 100000, 77);
  CHECK(est.estimate > 0.02);
}

TEST_CASE("widths up to 2^20 bits work") {
  const std::size_t n = std::size_t{1} << 20;
  SplitMix64 g(123);
  const BitString s = random_bits(g, n);
  const BitString t = add(s, BitString::from_integer(1, n), Modulus::pow2(n));
  // Adding one flips the trailing-ones run: weight moves by 1 - z.
  std::size_t z = 0;
  while (s.bit(z)) ++z;
  CHECK(t.weight() == s.weight() + 1 - z);
}
