#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamming_shift/bitstring.hpp"
#include "hamming_shift/numeric.hpp"

namespace hamming_shift {

/// The four carry-conditioned block classes. Carries flow from block i+1
/// (less significant) into block i; "trivial" means the incoming carry makes
/// the block addition a no-op (digit 1 with carry 1, digit 0 with carry 0).
enum class BlockType {
  T1,  // trivial -> nontrivial: diagonal binomial law
  T2,  // nontrivial -> trivial: point mass at (0,L) / (L,0)
  T3,  // nontrivial -> nontrivial, L = 1: point mass, zero covariance
  T4,  // nontrivial -> nontrivial, L >= 2: the only invertible-covariance type
};

const char* to_string(BlockType type);

/// Exact per-block law of (wt(S_i), wt(T_i)) under the stated conditioning.
struct BlockDistribution {
  int digit = 0;
  std::size_t length = 0;
  int carry_in = 0;
  std::optional<int> carry_out;  // present when conditioned on both carries
  std::optional<BlockType> type;

  std::map<std::pair<std::size_t, std::size_t>, Rational> support;

  Rational probability(std::size_t x, std::size_t y) const;
  Rational total_mass() const;
  Rational mean_x() const;
  Rational mean_y() const;
};

/// Block law conditioned on the incoming carry only.
BlockDistribution dist_given_carry_in(int digit, std::size_t length, int carry_in);

/// Block law conditioned on both carries. Throws InfeasibleCarries for
/// pairs the digit cannot produce (digit 1 never maps carry 1 to carry 0).
BlockDistribution dist_given_both_carries(int digit, std::size_t length, int carry_in,
                                          int carry_out);

/// Law of the trailing-zeros count Z of a uniform length-L weight-x string:
/// point mass at L when x = 0, else C(L-z-1, x-1)/C(L, x) for z <= L-x.
std::map<std::size_t, Rational> trailing_zero_dist(std::size_t length, std::size_t weight);

/// Probability of each outgoing carry given the incoming one (mixing weights
/// between the single-carry and two-carry laws).
std::map<int, Rational> carry_out_probabilities(int digit, std::size_t length, int carry_in);

BlockType block_type_for(int digit, std::size_t length, int carry_in, int carry_out);

/// Closed-form second moments and the mean split (L/2, L/2) + k*(1, -1).
/// var_x = var_y for every type; the T4 entries are the closed-form c and d.
struct CovarianceSummary {
  std::size_t length = 0;
  BlockType type = BlockType::T1;
  Rational var_x;
  Rational var_y;
  Rational cov;
  Rational mean_x;
  Rational mean_y;
  Rational translation_k;
};

CovarianceSummary covariance(int digit, std::size_t length, BlockType type);

/// The T4 covariance entries alone (shared by covariance and the CLT pipeline).
Rational t4_cov_c(std::size_t length);
Rational t4_cov_d(std::size_t length);

/// Realized carry bits at block boundaries, most-significant block first.
/// carry_in(i) = carry_out(i+1); the least significant block takes the
/// adder's entry carry (0 for plain addition).
class CarryFixing {
 public:
  CarryFixing() = default;
  explicit CarryFixing(std::vector<std::uint8_t> carry_out_msf, std::uint8_t entry_carry = 0);

  std::size_t size() const { return carry_out_.size(); }
  int carry_out(std::size_t block) const { return carry_out_[block]; }
  int carry_in(std::size_t block) const {
    return block + 1 < carry_out_.size() ? carry_out_[block + 1] : entry_carry_;
  }

 private:
  std::vector<std::uint8_t> carry_out_;  // MSF order, parallel to the blocks
  std::uint8_t entry_carry_ = 0;
};

/// Read off the carries S induces at the boundaries of alpha's blocks.
CarryFixing realized_carries(const BitString& s, const BlockDecomposition& alpha_blocks);

struct Classification {
  std::vector<BlockType> types;     // MSF order
  std::array<std::size_t, 4> counts{};  // indexed T1..T4

  std::size_t count(BlockType t) const { return counts[static_cast<std::size_t>(t)]; }
};

Classification classify_blocks(const BlockDecomposition& alpha_blocks, const CarryFixing& carries);

/// A length with maximal multiplicity, ties broken toward smaller lengths.
/// Returns (length, multiplicity). Throws EmptyInput.
std::pair<std::size_t, std::size_t> most_frequent_length(const std::vector<std::size_t>& lengths);

/// Decomposition after consolidation: unit-length block pairs
/// matching the majority pattern are fused into length-2 pseudo-blocks whose
/// no-carry ("01") or full-carry ("10") law is the length-2 T4 law.
struct ConsolidatedBlock {
  bool fused = false;
  int digit = 0;          // plain blocks: the run digit; fused: leading digit
  std::size_t length = 0;

  const char* pattern() const { return digit == 0 ? "01" : "10"; }  // fused only
};

struct ConsolidatedDecomposition {
  std::vector<ConsolidatedBlock> blocks;  // MSF order
  std::size_t width = 0;
};

struct Consolidation {
  std::string majority_pattern;  // "01" or "10"
  Rational fraction;             // matching pairs / total disjoint pairs
  ConsolidatedDecomposition consolidated;
};

/// Pair successive blocks disjointly ((1,2), (3,4), ...) and fuse every
/// all-unit pair matching the majority pattern.
Consolidation consolidate_unit_pairs(const BlockDecomposition& alpha_blocks);

}  // namespace hamming_shift
