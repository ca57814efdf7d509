#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hamming_shift/bitstring.hpp"
#include "hamming_shift/numeric.hpp"

namespace hamming_shift {

/// A string is light when 2*wt <= n, so weight exactly n/2 (even n) is light.
inline bool is_light(std::size_t weight, std::size_t width) { return 2 * weight <= width; }

/// Exact joint law of (wt(S), wt(S + alpha)) over uniform S, as integer
/// counts on [0,n]^2. Total is 2^n (Pow2) or 2^n - 1 (Pow2Minus1).
class JointWeightDistribution {
 public:
  JointWeightDistribution(std::size_t width, Modulus modulus);

  std::size_t width() const { return width_; }
  const Modulus& modulus() const { return modulus_; }
  const BigInt& total() const { return total_; }

  const BigInt& count(std::size_t x, std::size_t y) const {
    return counts_[x * (width_ + 1) + y];
  }
  BigInt& count(std::size_t x, std::size_t y) { return counts_[x * (width_ + 1) + y]; }

  std::vector<BigInt> marginal_x() const;
  std::vector<BigInt> marginal_y() const;
  BigInt sum() const;

  friend bool operator==(const JointWeightDistribution&, const JointWeightDistribution&) = default;

 private:
  std::size_t width_;
  Modulus modulus_;
  std::vector<BigInt> counts_;  // row-major, (n+1) x (n+1)
  BigInt total_;
};

/// Carry DP over bit positions, low to high. Pow2 keeps state = carry;
/// Pow2Minus1 additionally tracks the trailing-ones run of the mod-2^n sum,
/// which determines how the end-around increment changes the final weight.
JointWeightDistribution joint_distribution(const BitString& alpha, const Modulus& mod);

/// Definition-1 statistics: M is the light set, union_size = |M u (alpha+M)|,
/// epsilon = union_size/total - 1/2.
struct ShiftReport {
  std::size_t width = 0;
  Modulus modulus{Modulus::Kind::Pow2, 1};
  std::string alpha_binary;
  BigInt total;
  BigInt light_count;
  BigInt heavy_count;
  BigInt light_to_heavy;
  BigInt light_to_light;
  BigInt heavy_to_light;
  BigInt heavy_to_heavy;
  BigInt union_size;
  Rational epsilon;
};

ShiftReport shift_report(const JointWeightDistribution& dist, const BitString& alpha);
ShiftReport shift_report(const BitString& alpha, const Modulus& mod);

/// Masses of the four weight transitions as exact fractions of the total.
/// Second quadrant of the centered plot = light_to_heavy, fourth = heavy_to_light.
struct QuadrantMasses {
  Rational light_to_heavy;
  Rational light_to_light;
  Rational heavy_to_light;
  Rational heavy_to_heavy;
};

QuadrantMasses quadrant_masses(const JointWeightDistribution& dist);

}  // namespace hamming_shift
