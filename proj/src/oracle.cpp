#include "hamming_shift/oracle.hpp"

#include <bit>

namespace hamming_shift {
namespace oracle {

JointWeightDistribution brute_force_joint(const BitString& alpha, const Modulus& mod) {
  const std::size_t n = alpha.width();
  if (n != mod.width) throw Error(ErrorKind::WidthMismatch, "alpha width vs modulus width");
  if (n > 24) throw Error(ErrorKind::TooWide, "brute_force_joint is guarded to n <= 24");
  if (mod.kind == Modulus::Kind::Pow2Minus1 && alpha.is_all_ones())
    throw Error(ErrorKind::InvalidResidue, "alpha = 1^n");

  const std::uint64_t a = alpha.to_integer().convert_to<std::uint64_t>();
  const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  JointWeightDistribution dist(n, mod);
  if (mod.kind == Modulus::Kind::Pow2) {
    for (std::uint64_t s = 0; s <= mask; ++s) {
      const std::uint64_t t = (s + a) & mask;
      dist.count(std::popcount(s), std::popcount(t)) += 1;
    }
  } else {
    const std::uint64_t order = mask;  // 2^n - 1
    for (std::uint64_t s = 0; s < order; ++s) {
      std::uint64_t t = s + a;
      if (t >= order) t -= order;
      dist.count(std::popcount(s), std::popcount(t)) += 1;
    }
  }
  return dist;
}

std::uint64_t BlockTally::count_with_carry_out(int carry_out) const {
  std::uint64_t total = 0;
  for (const auto& [key, v] : counts)
    if (std::get<2>(key) == carry_out) total += v;
  return total;
}

BlockTally brute_force_block(int digit, std::size_t length, int carry_in) {
  if (length == 0) throw Error(ErrorKind::InvalidLength, "block length must be >= 1");
  if (length > 20) throw Error(ErrorKind::TooWide, "brute_force_block is guarded to L <= 20");

  BlockTally tally;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << length); ++s) {
    int carry = carry_in;
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const int sbit = (s >> i) & 1u;
      const int total = sbit + digit + carry;
      t |= static_cast<std::uint64_t>(total & 1) << i;
      carry = total >> 1;
    }
    const auto key = std::make_tuple(static_cast<std::size_t>(std::popcount(s)),
                                     static_cast<std::size_t>(std::popcount(t)), carry);
    tally.counts[key] += 1;
    tally.total += 1;
  }
  return tally;
}

}  // namespace oracle
}  // namespace hamming_shift
