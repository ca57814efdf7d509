#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hamming_shift/error.hpp"
#include "hamming_shift/numeric.hpp"

namespace hamming_shift {

/// A fixed-width bit string. Bits are stored least-significant-first in
/// packed 64-bit words (carry propagation walks low to high); all textual
/// I/O renders most-significant-first. Leading zeros are part of the value.
/// Immutable in practice: operations return new strings.
class BitString {
 public:
  explicit BitString(std::size_t width);

  static BitString zeros(std::size_t width) { return BitString(width); }
  static BitString ones(std::size_t width);

  /// Parse an MSB-first run of '0'/'1' characters. Width is the text length.
  static BitString from_binary_text(std::string_view text);

  /// Value must satisfy 0 <= value < 2^width.
  static BitString from_integer(const BigInt& value, std::size_t width);

  /// Adopt LSB-first packed words; bits beyond the width are masked off.
  static BitString from_words(std::vector<std::uint64_t> words, std::size_t width);

  std::size_t width() const { return width_; }

  bool bit(std::size_t index) const;
  void set_bit(std::size_t index, bool value);

  /// Hamming weight, via word popcounts.
  std::size_t weight() const;

  bool is_zero() const;
  bool is_all_ones() const;

  BigInt to_integer() const;
  std::string to_binary_text() const;  // MSB-first
  std::string to_hex_text() const;     // "0x..", zero-padded to width

  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t word(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  friend BitString add(const BitString&, const BitString&, const struct Modulus&);

  std::size_t width_;
  std::vector<std::uint64_t> words_;  // LSB-first; top word masked to width
};

struct Modulus {
  enum class Kind { Pow2, Pow2Minus1 };

  Kind kind;
  std::size_t width;

  static Modulus pow2(std::size_t width);
  static Modulus pow2_minus_1(std::size_t width);

  /// Group order: 2^n or 2^n - 1.
  BigInt total() const;

  friend bool operator==(const Modulus&, const Modulus&) = default;
};

std::string to_string(Modulus::Kind kind);

/// (s + alpha) in the chosen group. Pow2 drops the final carry; Pow2Minus1
/// applies the end-around carry and maps the all-ones sum to zero, so the
/// result is always a residue representative in [0, 2^n-1).
BitString add(const BitString& s, const BitString& alpha, const Modulus& mod);

/// A maximal run of equal digits.
struct Block {
  int digit;           // 0 or 1
  std::size_t length;  // >= 1

  friend bool operator==(const Block&, const Block&) = default;
};

/// Maximal uniform runs, most-significant block first. A most-significant
/// run of zeros counts as a block: the blocks partition the full width.
struct BlockDecomposition {
  std::vector<Block> blocks;  // MSF order
  std::size_t width = 0;

  std::size_t block_count() const { return blocks.size(); }
  std::size_t count_length_at_least(std::size_t min_length) const;
};

BlockDecomposition decompose_blocks(const BitString& alpha);

/// Inverse of decompose_blocks: concatenate the runs MSB-first.
BitString reassemble(const BlockDecomposition& decomposition);

/// Build alpha from an explicit run pattern. Lengths must sum to the width
/// and adjacent digits must differ (each run maximal).
BitString alpha_with_blocks(const std::vector<Block>& pattern, std::size_t width);

/// The n-bit representation of (a*2^n + b) / q for odd q > 1, 0 < |a|,|b| < q.
/// Such values have eventually-periodic binary expansions (the family behind
/// q-th roots). The quotient must be exact and lie in [0, 2^n - 1).
BitString alpha_from_rational(long long a, long long b, long long q, std::size_t width);

/// Accepted everywhere an alpha is textual input:
///   "0b0101.."           binary literal (width must match)
///   "0x1f"               hex, zero-extended to width
///   "37"                 decimal integer, must fit the width
///   "rat:a,b,q"          alpha_from_rational
///   "pat:(01)^8" etc.    run pattern: groups "(bits)^k" or bare bits,
///                        concatenated MSB-first; expansion must match width
BitString parse_alpha(std::string_view spec, std::size_t width);

}  // namespace hamming_shift
