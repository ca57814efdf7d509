#include <doctest.h>

#include <functional>

#include "hamming_shift/bitstring.hpp"
#include "hamming_shift/sampler.hpp"

using namespace hamming_shift;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("hamming weight basics") {
  CHECK(BitString::zeros(4).weight() == 0);
  CHECK(BitString::from_binary_text("0101").weight() == 2);
  for (std::size_t n : {1u, 7u, 64u, 65u, 200u}) CHECK(BitString::ones(n).weight() == n);
}

TEST_CASE("text and integer round trips") {
  const BitString s = BitString::from_binary_text("110100");
  CHECK(s.width() == 6);
  CHECK(s.to_integer() == 52);
  CHECK(s.to_binary_text() == "110100");
  CHECK(BitString::from_integer(52, 6) == s);
  CHECK(s.to_hex_text() == "0x34");

  SplitMix64 g(7);
  for (std::size_t n : {1u, 63u, 64u, 65u, 130u}) {
    const BitString r = random_bits(g, n);
    CHECK(BitString::from_binary_text(r.to_binary_text()) == r);
    CHECK(BitString::from_integer(r.to_integer(), n) == r);
  }
}

TEST_CASE("addition examples") {
  const Modulus p2 = Modulus::pow2(2);
  CHECK(add(BitString::from_binary_text("10"), BitString::from_binary_text("11"), p2) ==
        BitString::from_binary_text("01"));

  const Modulus p2m1 = Modulus::pow2_minus_1(2);
  CHECK(add(BitString::from_binary_text("10"), BitString::from_binary_text("10"), p2m1) ==
        BitString::from_binary_text("01"));

  const Modulus p4 = Modulus::pow2(4);
  for (std::uint64_t a = 0; a < 16; ++a) {
    const BitString alpha = BitString::from_integer(a, 4);
    CHECK(add(BitString::zeros(4), alpha, p4) == alpha);
  }
}

TEST_CASE("addition matches integer arithmetic for every small operand pair") {
  for (std::size_t n = 1; n <= 9; ++n) {
    const Modulus p2 = Modulus::pow2(n);
    const BigInt order = pow2(n);
    for (BigInt s = 0; s < order; ++s)
      for (BigInt a = 0; a < order; ++a) {
        const BigInt want = (s + a) % order;
        CHECK(add(BitString::from_integer(s, n), BitString::from_integer(a, n), p2).to_integer() ==
              want);
      }
  }
  for (std::size_t n = 2; n <= 9; ++n) {
    const Modulus m = Modulus::pow2_minus_1(n);
    const BigInt order = pow2(n) - 1;
    for (BigInt s = 0; s < order; ++s)
      for (BigInt a = 0; a < order; ++a) {
        const BigInt want = (s + a) % order;
        CHECK(add(BitString::from_integer(s, n), BitString::from_integer(a, n), m).to_integer() ==
              want);
      }
  }
}

TEST_CASE("addition across word boundaries") {
  // Carries must ripple through whole 64-bit words.
  const std::size_t n = 130;
  const BitString ones_low = BitString::from_integer(pow2(129) - 1, n);
  const BitString one = BitString::from_integer(1, n);
  CHECK(add(ones_low, one, Modulus::pow2(n)).to_integer() == pow2(129));

  const BitString near_top = BitString::from_integer(pow2(n) - 2, n);
  CHECK(add(near_top, one, Modulus::pow2(n)).to_integer() == pow2(n) - 1);
  // 2^n - 2 is the largest residue; adding 1 wraps to zero mod 2^n - 1.
  CHECK(add(near_top, one, Modulus::pow2_minus_1(n)).is_zero());
}

TEST_CASE("pow2m1 result is the pow2 result or one more") {
  for (std::size_t n = 2; n <= 10; ++n) {
    const BigInt order = pow2(n);
    for (BigInt a = 0; a < order - 1; ++a) {
      const BitString alpha = BitString::from_integer(a, n);
      for (BigInt s = 0; s < order - 1; ++s) {
        const BitString str = BitString::from_integer(s, n);
        const BigInt plain = add(str, alpha, Modulus::pow2(n)).to_integer();
        const BigInt wrapped = add(str, alpha, Modulus::pow2_minus_1(n)).to_integer();
        CHECK((wrapped == plain || wrapped == (plain + 1) % order));
      }
    }
  }
}

TEST_CASE("addition error cases") {
  CHECK(kind_of([] {
          add(BitString::zeros(3), BitString::zeros(4), Modulus::pow2(4));
        }) == ErrorKind::WidthMismatch);
  CHECK(kind_of([] {
          add(BitString::ones(4), BitString::zeros(4), Modulus::pow2_minus_1(4));
        }) == ErrorKind::InvalidResidue);
  CHECK(kind_of([] {
          add(BitString::zeros(4), BitString::ones(4), Modulus::pow2_minus_1(4));
        }) == ErrorKind::InvalidResidue);
  CHECK(kind_of([] { Modulus::pow2_minus_1(1); }) == ErrorKind::InvalidLength);
}

TEST_CASE("block decomposition") {
  const auto d = decompose_blocks(BitString::from_binary_text("110100"));
  REQUIRE(d.block_count() == 4);
  CHECK(d.blocks == std::vector<Block>{{1, 2}, {0, 1}, {1, 1}, {0, 2}});

  const auto z = decompose_blocks(BitString::zeros(4));
  CHECK(z.blocks == std::vector<Block>{{0, 4}});

  const auto alt = decompose_blocks(BitString::from_binary_text("0101"));
  CHECK(alt.block_count() == 4);
  CHECK(alt.blocks == std::vector<Block>{{0, 1}, {1, 1}, {0, 1}, {1, 1}});
}

TEST_CASE("decompose/reassemble round trip is the identity") {
  for (std::size_t n = 1; n <= 16; ++n)
    for (BigInt v = 0; v < pow2(n); ++v) {
      const BitString s = BitString::from_integer(v, n);
      const auto d = decompose_blocks(s);
      std::size_t total = 0;
      for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        total += d.blocks[i].length;
        CHECK(d.blocks[i].length >= 1);
        if (i > 0) CHECK(d.blocks[i].digit != d.blocks[i - 1].digit);
      }
      CHECK(total == n);
      CHECK(reassemble(d) == s);
    }
  SplitMix64 g(3);
  for (int rep = 0; rep < 50; ++rep) {
    const BitString s = random_bits(g, 999);
    CHECK(reassemble(decompose_blocks(s)) == s);
  }
}

TEST_CASE("addition is a bijection") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const BitString alpha = BitString::from_integer(BigInt(0x35) % pow2(n), n);
    std::vector<bool> seen(std::size_t{1} << n, false);
    for (BigInt s = 0; s < pow2(n); ++s) {
      const auto t = add(BitString::from_integer(s, n), alpha, Modulus::pow2(n)).to_integer();
      const auto idx = t.convert_to<std::size_t>();
      CHECK(!seen[idx]);
      seen[idx] = true;
    }
    // Pow2Minus1: bijection on the 2^n - 1 residues.
    std::vector<bool> seen_m1(std::size_t{1} << n, false);
    const BitString alpha_m1 = BitString::from_integer(BigInt(0x35) % (pow2(n) - 1), n);
    for (BigInt s = 0; s < pow2(n) - 1; ++s) {
      const auto t =
          add(BitString::from_integer(s, n), alpha_m1, Modulus::pow2_minus_1(n)).to_integer();
      const auto idx = t.convert_to<std::size_t>();
      CHECK(idx + 1 < seen_m1.size());  // never the all-ones word
      CHECK(!seen_m1[idx]);
      seen_m1[idx] = true;
    }
  }
}

TEST_CASE("alpha_with_blocks") {
  std::vector<Block> pattern;
  for (int i = 0; i < 8; ++i) {
    pattern.push_back({0, 1});
    pattern.push_back({1, 1});
  }
  CHECK(alpha_with_blocks(pattern, 16).to_binary_text() == "0101010101010101");
  CHECK(alpha_with_blocks({{1, 16}}, 16) == BitString::ones(16));
  CHECK(alpha_with_blocks({{1, 2}, {0, 2}, {1, 2}, {0, 2}}, 8).to_binary_text() == "11001100");

  CHECK(kind_of([] { alpha_with_blocks({{1, 3}}, 4); }) == ErrorKind::LengthMismatch);
  CHECK(kind_of([] { alpha_with_blocks({{1, 2}, {1, 2}}, 4); }) == ErrorKind::NonMaximalPattern);
}

TEST_CASE("alpha_from_rational") {
  CHECK(alpha_from_rational(1, -1, 3, 4).to_binary_text() == "0101");
  CHECK(alpha_from_rational(1, -1, 3, 6).to_binary_text() == "010101");
  CHECK(alpha_from_rational(1, -1, 7, 6).to_binary_text() == "001001");

  CHECK(alpha_from_rational(2, -2, 3, 4).to_integer() == 10);

  CHECK(kind_of([] { alpha_from_rational(1, -1, 3, 5); }) == ErrorKind::NotDivisible);
  CHECK(kind_of([] { alpha_from_rational(1, -1, 4, 4); }) == ErrorKind::OutOfRange);  // even q
  CHECK(kind_of([] { alpha_from_rational(-1, 1, 3, 4); }) == ErrorKind::OutOfRange);  // negative
  CHECK(kind_of([] { alpha_from_rational(2, 1, 3, 2); }) == ErrorKind::OutOfRange);   // = 2^n - 1
  CHECK(kind_of([] { alpha_from_rational(3, 1, 3, 4); }) == ErrorKind::OutOfRange);   // |a| >= q
}

TEST_CASE("parse_alpha formats") {
  CHECK(parse_alpha("0b0101", 4).to_binary_text() == "0101");
  CHECK(parse_alpha("0x5", 4).to_binary_text() == "0101");
  CHECK(parse_alpha("5", 4).to_binary_text() == "0101");
  CHECK(parse_alpha("rat:1,-1,3", 4).to_binary_text() == "0101");
  CHECK(parse_alpha("pat:(01)^2", 4).to_binary_text() == "0101");
  CHECK(parse_alpha("pat:01(10)^3", 8).to_binary_text() == "01101010");
  CHECK(parse_alpha("pat:(1100)^4", 16) ==
        alpha_with_blocks({{1, 2}, {0, 2}, {1, 2}, {0, 2}, {1, 2}, {0, 2}, {1, 2}, {0, 2}}, 16));

  CHECK(kind_of([] { parse_alpha("0b01", 4); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_alpha("pat:(01)^3", 4); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_alpha("pat:(01", 4); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_alpha("xyz", 4); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_alpha("16", 4); }) == ErrorKind::OutOfRange);
}

TEST_CASE("weight is invariant under adding zero") {
  SplitMix64 g(11);
  for (std::size_t n : {5u, 32u, 77u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const BitString s = random_bits(g, n);
      CHECK(add(s, BitString::zeros(n), Modulus::pow2(n)).weight() == s.weight());
      if (n >= 2 && !s.is_all_ones())
        CHECK(add(s, BitString::zeros(n), Modulus::pow2_minus_1(n)).weight() == s.weight());
    }
  }
}
