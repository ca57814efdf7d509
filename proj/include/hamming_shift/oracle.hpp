#pragma once

#include <cstdint>
#include <map>
#include <tuple>

#include "hamming_shift/exact_dp.hpp"

namespace hamming_shift {
namespace oracle {

// Brute-force references. Addition is deliberately reimplemented here with
// plain integer arithmetic so a bug in the bitstring adder cannot mask
// itself in the DP-vs-oracle comparison.

/// Enumerate every residue S, tally (wt(S), wt(S+alpha)). Guarded to n <= 24.
JointWeightDistribution brute_force_joint(const BitString& alpha, const Modulus& mod);

/// Tallies over (x, y, carry_out) from adding every L-bit value to digit^L
/// with the given incoming carry, via an explicit per-bit ripple. L <= 20.
struct BlockTally {
  std::map<std::tuple<std::size_t, std::size_t, int>, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t count_with_carry_out(int carry_out) const;
};

BlockTally brute_force_block(int digit, std::size_t length, int carry_in);

}  // namespace oracle
}  // namespace hamming_shift
