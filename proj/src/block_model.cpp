#include "hamming_shift/block_model.hpp"

#include <algorithm>

namespace hamming_shift {

const char* to_string(BlockType type) {
  switch (type) {
    case BlockType::T1: return "T1";
    case BlockType::T2: return "T2";
    case BlockType::T3: return "T3";
    case BlockType::T4: return "T4";
  }
  return "?";
}

Rational BlockDistribution::probability(std::size_t x, std::size_t y) const {
  const auto it = support.find({x, y});
  return it == support.end() ? Rational(0) : it->second;
}

Rational BlockDistribution::total_mass() const {
  Rational total = 0;
  for (const auto& [xy, p] : support) total += p;
  return total;
}

Rational BlockDistribution::mean_x() const {
  Rational m = 0;
  for (const auto& [xy, p] : support) m += Rational(xy.first) * p;
  return m;
}

Rational BlockDistribution::mean_y() const {
  Rational m = 0;
  for (const auto& [xy, p] : support) m += Rational(xy.second) * p;
  return m;
}

namespace {

void require_block_args(int digit, std::size_t length) {
  if (length == 0) throw Error(ErrorKind::InvalidLength, "block length must be >= 1");
  if (digit != 0 && digit != 1) throw Error(ErrorKind::OutOfRange, "digit must be 0 or 1");
}

void add_diagonal_binomial(BlockDistribution& dist, std::size_t L, const BigInt& denom) {
  for (std::size_t x = 0; x <= L; ++x)
    dist.support[{x, x}] = Rational(binomial(L, x), denom);
}

// The skewed nontrivial law for digit 1: C(L-y+x-2, x-1) on L-1 >= y >= x-1 >= 0.
// The digit-0 law is the same table with x and y swapped.
void add_ripple_law(BlockDistribution& dist, std::size_t L, const BigInt& denom, bool swap_xy) {
  for (std::size_t x = 1; x <= L; ++x)
    for (std::size_t y = x - 1; y + 1 <= L; ++y) {
      const BigInt ways = binomial(L - y + x - 2, x - 1);
      if (ways == 0) continue;
      if (swap_xy)
        dist.support[{y, x}] = Rational(ways, denom);
      else
        dist.support[{x, y}] = Rational(ways, denom);
    }
}

}  // namespace

BlockDistribution dist_given_carry_in(int digit, std::size_t length, int carry_in) {
  require_block_args(digit, length);
  BlockDistribution dist;
  dist.digit = digit;
  dist.length = length;
  dist.carry_in = carry_in;
  const BigInt denom = pow2(length);
  const bool trivial = (digit == 1) == (carry_in == 1);
  if (trivial) {
    add_diagonal_binomial(dist, length, denom);
  } else if (digit == 1) {
    dist.support[{0, length}] = Rational(1, denom);
    add_ripple_law(dist, length, denom, /*swap_xy=*/false);
  } else {
    dist.support[{length, 0}] = Rational(1, denom);
    add_ripple_law(dist, length, denom, /*swap_xy=*/true);
  }
  return dist;
}

BlockType block_type_for(int digit, std::size_t length, int carry_in, int carry_out) {
  require_block_args(digit, length);
  const bool in_trivial = (digit == 1) == (carry_in == 1);
  const bool out_trivial_carry = (digit == 1) ? (carry_out == 0) : (carry_out == 1);
  if (in_trivial) {
    // A trivial block reproduces its carry; anything else cannot happen.
    if (carry_out != carry_in)
      throw Error(ErrorKind::InfeasibleCarries,
                  "trivial carry-in forces an equal carry-out");
    return BlockType::T1;
  }
  if (out_trivial_carry) return BlockType::T2;
  return length == 1 ? BlockType::T3 : BlockType::T4;
}

BlockDistribution dist_given_both_carries(int digit, std::size_t length, int carry_in,
                                          int carry_out) {
  const BlockType type = block_type_for(digit, length, carry_in, carry_out);
  BlockDistribution dist;
  dist.digit = digit;
  dist.length = length;
  dist.carry_in = carry_in;
  dist.carry_out = carry_out;
  dist.type = type;
  switch (type) {
    case BlockType::T1:
      add_diagonal_binomial(dist, length, pow2(length));
      break;
    case BlockType::T2:
      if (digit == 1)
        dist.support[{0, length}] = Rational(1);
      else
        dist.support[{length, 0}] = Rational(1);
      break;
    case BlockType::T3:
      if (digit == 1)
        dist.support[{1, 0}] = Rational(1);
      else
        dist.support[{0, 1}] = Rational(1);
      break;
    case BlockType::T4:
      add_ripple_law(dist, length, pow2(length) - 1, /*swap_xy=*/digit == 0);
      break;
  }
  return dist;
}

std::map<std::size_t, Rational> trailing_zero_dist(std::size_t length, std::size_t weight) {
  if (weight > length) throw Error(ErrorKind::OutOfRange, "weight exceeds block length");
  std::map<std::size_t, Rational> law;
  if (weight == 0) {
    law[length] = Rational(1);
    return law;
  }
  const BigInt denom = binomial(length, weight);
  for (std::size_t z = 0; z + weight <= length; ++z)
    law[z] = Rational(binomial(length - z - 1, weight - 1), denom);
  return law;
}

std::map<int, Rational> carry_out_probabilities(int digit, std::size_t length, int carry_in) {
  require_block_args(digit, length);
  std::map<int, Rational> probs;
  const bool trivial = (digit == 1) == (carry_in == 1);
  if (trivial) {
    probs[carry_in] = Rational(1);
    return probs;
  }
  // Nontrivial: exactly one block value (0 or 1^L) keeps the carry trivial.
  const BigInt denom = pow2(length);
  const int rare = digit == 1 ? 0 : 1;
  probs[rare] = Rational(1, denom);
  probs[1 - rare] = Rational(denom - 1, denom);
  return probs;
}

Rational t4_cov_c(std::size_t length) {
  if (length < 2) throw Error(ErrorKind::InfeasibleType, "T4 needs L >= 2");
  const BigInt N = pow2(length) - 1;
  const Rational u = Rational(N + 1, N);  // 1 + 1/(2^L - 1)
  return Rational(length, 4) * u - Rational(length * length, 4) * u / Rational(N);
}

Rational t4_cov_d(std::size_t length) {
  if (length < 2) throw Error(ErrorKind::InfeasibleType, "T4 needs L >= 2");
  const BigInt N = pow2(length) - 1;
  const Rational u = Rational(N + 1, N);
  return Rational(length, 4) * u + Rational(length * length, 4) * u / Rational(N) - 1;
}

CovarianceSummary covariance(int digit, std::size_t length, BlockType type) {
  require_block_args(digit, length);
  CovarianceSummary s;
  s.length = length;
  s.type = type;
  const Rational half_len(length, 2);
  switch (type) {
    case BlockType::T1:
      s.var_x = s.var_y = s.cov = Rational(length, 4);
      s.translation_k = 0;
      break;
    case BlockType::T2:
      s.var_x = s.var_y = s.cov = 0;
      s.translation_k = digit == 1 ? -half_len : half_len;
      break;
    case BlockType::T3:
      if (length != 1) throw Error(ErrorKind::InfeasibleType, "T3 needs L = 1");
      s.var_x = s.var_y = s.cov = 0;
      s.translation_k = digit == 1 ? Rational(1, 2) : Rational(-1, 2);
      break;
    case BlockType::T4: {
      s.var_x = s.var_y = t4_cov_c(length);
      s.cov = t4_cov_d(length);
      const Rational k = half_len / Rational(pow2(length) - 1);
      s.translation_k = digit == 1 ? k : -k;
      break;
    }
  }
  s.mean_x = half_len + s.translation_k;
  s.mean_y = half_len - s.translation_k;
  return s;
}

CarryFixing::CarryFixing(std::vector<std::uint8_t> carry_out_msf, std::uint8_t entry_carry)
    : carry_out_(std::move(carry_out_msf)), entry_carry_(entry_carry) {}

CarryFixing realized_carries(const BitString& s, const BlockDecomposition& alpha_blocks) {
  if (s.width() != alpha_blocks.width)
    throw Error(ErrorKind::WidthMismatch, "string width vs decomposition width");
  const std::size_t m = alpha_blocks.block_count();
  std::vector<std::uint8_t> carry_out(m, 0);
  std::size_t pos = 0;  // LSB bit index
  int carry = 0;
  for (std::size_t j = m; j-- > 0;) {  // least significant block first
    const Block& b = alpha_blocks.blocks[j];
    if (b.digit == 1) {
      // S_chunk + 1^L + c overflows unless the chunk is zero and c = 0.
      bool chunk_zero = true;
      for (std::size_t i = pos; i < pos + b.length && chunk_zero; ++i)
        chunk_zero = !s.bit(i);
      carry = (!chunk_zero || carry) ? 1 : 0;
    } else {
      // S_chunk + 0 + c overflows only if the chunk is all ones and c = 1.
      bool chunk_ones = true;
      for (std::size_t i = pos; i < pos + b.length && chunk_ones; ++i)
        chunk_ones = s.bit(i);
      carry = (chunk_ones && carry) ? 1 : 0;
    }
    carry_out[j] = static_cast<std::uint8_t>(carry);
    pos += b.length;
  }
  return CarryFixing(std::move(carry_out));
}

Classification classify_blocks(const BlockDecomposition& alpha_blocks,
                               const CarryFixing& carries) {
  if (carries.size() != alpha_blocks.block_count())
    throw Error(ErrorKind::InfeasibleCarries, "carry fixing size vs block count");
  Classification result;
  result.types.reserve(alpha_blocks.block_count());
  for (std::size_t i = 0; i < alpha_blocks.block_count(); ++i) {
    const Block& b = alpha_blocks.blocks[i];
    const BlockType t = block_type_for(b.digit, b.length, carries.carry_in(i), carries.carry_out(i));
    result.types.push_back(t);
    result.counts[static_cast<std::size_t>(t)] += 1;
  }
  return result;
}

std::pair<std::size_t, std::size_t> most_frequent_length(const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw Error(ErrorKind::EmptyInput, "no lengths");
  std::map<std::size_t, std::size_t> multiplicity;
  for (std::size_t len : lengths) multiplicity[len] += 1;
  std::pair<std::size_t, std::size_t> best{0, 0};
  for (const auto& [len, count] : multiplicity) {
    if (count > best.second) best = {len, count};  // map order breaks ties small-first
  }
  return best;
}

Consolidation consolidate_unit_pairs(const BlockDecomposition& alpha_blocks) {
  const auto& blocks = alpha_blocks.blocks;
  const std::size_t pairs = blocks.size() / 2;
  std::size_t count01 = 0, count10 = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const Block& first = blocks[2 * p];
    const Block& second = blocks[2 * p + 1];
    if (first.length != 1 || second.length != 1) continue;
    (first.digit == 0 ? count01 : count10) += 1;
  }
  Consolidation result;
  result.majority_pattern = count10 > count01 ? "10" : "01";
  result.fraction = pairs == 0 ? Rational(0)
                               : Rational(std::max(count01, count10), pairs);
  result.consolidated.width = alpha_blocks.width;
  const int wanted_first_digit = result.majority_pattern == "01" ? 0 : 1;
  for (std::size_t p = 0; p < pairs; ++p) {
    const Block& first = blocks[2 * p];
    const Block& second = blocks[2 * p + 1];
    if (first.length == 1 && second.length == 1 && first.digit == wanted_first_digit) {
      result.consolidated.blocks.push_back(ConsolidatedBlock{true, first.digit, 2});
    } else {
      result.consolidated.blocks.push_back(ConsolidatedBlock{false, first.digit, first.length});
      result.consolidated.blocks.push_back(ConsolidatedBlock{false, second.digit, second.length});
    }
  }
  if (blocks.size() % 2 == 1) {
    const Block& last = blocks.back();
    result.consolidated.blocks.push_back(ConsolidatedBlock{false, last.digit, last.length});
  }
  return result;
}

}  // namespace hamming_shift
