#include "hamming_shift/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace hamming_shift {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::InvalidResidue: return "InvalidResidue";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonMaximalPattern: return "NonMaximalPattern";
    case ErrorKind::InvalidLength: return "InvalidLength";
    case ErrorKind::InfeasibleCarries: return "InfeasibleCarries";
    case ErrorKind::InfeasibleType: return "InfeasibleType";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::TooWide: return "TooWide";
    case ErrorKind::NoEligibleBlocks: return "NoEligibleBlocks";
    case ErrorKind::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorKind::WrongTypes: return "WrongTypes";
    case ErrorKind::DegenerateEllipse: return "DegenerateEllipse";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

BigInt pow2(std::size_t exponent) { return BigInt(1) << exponent; }

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::size_t i = 0; i < k; ++i) {
    result *= static_cast<unsigned long long>(n - i);
    result /= static_cast<unsigned long long>(i + 1);
  }
  return result;
}

std::string to_fraction_string(const Rational& v) {
  return numerator(v).str() + "/" + denominator(v).str();
}

double log_of(const Rational& v) {
  using boost::multiprecision::msb;
  const BigInt num = numerator(v);
  const BigInt den = denominator(v);
  if (num <= 0) throw Error(ErrorKind::OutOfRange, "log of non-positive rational");
  // Shift both parts near 2^52 so the double conversion keeps full precision
  // even when num/den individually overflow a double.
  auto scaled_log = [](const BigInt& x) {
    const long bits = static_cast<long>(msb(x));
    const long shift = bits - 52;
    BigInt m = shift > 0 ? BigInt(x >> shift) : x;
    return std::log(m.convert_to<double>()) + static_cast<double>(std::max(shift, 0L)) * std::log(2.0);
  };
  return scaled_log(num) - scaled_log(den);
}

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

std::uint64_t top_word_mask(std::size_t width) {
  const std::size_t rem = width % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

}  // namespace

BitString::BitString(std::size_t width) : width_(width), words_(word_count(width), 0) {
  if (width == 0) throw Error(ErrorKind::InvalidLength, "width must be positive");
}

BitString BitString::ones(std::size_t width) {
  BitString s(width);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.words_.back() &= top_word_mask(width);
  return s;
}

BitString BitString::from_binary_text(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty binary literal");
  BitString s(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[text.size() - 1 - i];  // text is MSB-first
    if (c != '0' && c != '1')
      throw Error(ErrorKind::ParseError, "binary literal digit must be 0 or 1");
    s.set_bit(i, c == '1');
  }
  return s;
}

BitString BitString::from_integer(const BigInt& value, std::size_t width) {
  if (value < 0 || value >= pow2(width))
    throw Error(ErrorKind::OutOfRange, "value does not fit in " + std::to_string(width) + " bits");
  BitString s(width);
  BigInt v = value;
  for (std::size_t i = 0; i < s.words_.size() && v != 0; ++i) {
    s.words_[i] = static_cast<std::uint64_t>(v & 0xFFFFFFFFFFFFFFFFull);
    v >>= kWordBits;
  }
  return s;
}

BitString BitString::from_words(std::vector<std::uint64_t> words, std::size_t width) {
  if (words.size() != word_count(width))
    throw Error(ErrorKind::LengthMismatch, "word count does not match width");
  BitString s(width);
  s.words_ = std::move(words);
  s.words_.back() &= top_word_mask(width);
  return s;
}

bool BitString::bit(std::size_t index) const {
  return (words_[index / kWordBits] >> (index % kWordBits)) & 1u;
}

void BitString::set_bit(std::size_t index, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (index % kWordBits);
  if (value)
    words_[index / kWordBits] |= mask;
  else
    words_[index / kWordBits] &= ~mask;
}

std::size_t BitString::weight() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitString::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitString::is_all_ones() const {
  for (std::size_t i = 0; i + 1 < words_.size(); ++i)
    if (words_[i] != ~std::uint64_t{0}) return false;
  return words_.back() == top_word_mask(width_);
}

BigInt BitString::to_integer() const {
  BigInt v = 0;
  for (std::size_t i = words_.size(); i-- > 0;) {
    v <<= kWordBits;
    v += words_[i];
  }
  return v;
}

std::string BitString::to_binary_text() const {
  std::string text(width_, '0');
  for (std::size_t i = 0; i < width_; ++i)
    if (bit(i)) text[width_ - 1 - i] = '1';
  return text;
}

std::string BitString::to_hex_text() const {
  static const char* digits = "0123456789abcdef";
  const std::size_t nibbles = (width_ + 3) / 4;
  std::string text = "0x";
  for (std::size_t i = nibbles; i-- > 0;) {
    const std::uint64_t w = word(i * 4 / kWordBits);
    text += digits[(w >> (i * 4 % kWordBits)) & 0xF];
  }
  return text;
}

Modulus Modulus::pow2(std::size_t width) {
  if (width < 1) throw Error(ErrorKind::InvalidLength, "Pow2 modulus needs width >= 1");
  return Modulus{Kind::Pow2, width};
}

Modulus Modulus::pow2_minus_1(std::size_t width) {
  if (width < 2) throw Error(ErrorKind::InvalidLength, "Pow2Minus1 modulus needs width >= 2");
  return Modulus{Kind::Pow2Minus1, width};
}

BigInt Modulus::total() const {
  return kind == Kind::Pow2 ? hamming_shift::pow2(width) : hamming_shift::pow2(width) - 1;
}

std::string to_string(Modulus::Kind kind) {
  return kind == Modulus::Kind::Pow2 ? "pow2" : "pow2m1";
}

BitString add(const BitString& s, const BitString& alpha, const Modulus& mod) {
  if (s.width() != alpha.width() || s.width() != mod.width)
    throw Error(ErrorKind::WidthMismatch, "operands and modulus must share one width");
  if (mod.kind == Modulus::Kind::Pow2Minus1 && (s.is_all_ones() || alpha.is_all_ones()))
    throw Error(ErrorKind::InvalidResidue, "all-ones is not a residue of Z_{2^n-1}");

  const std::size_t n = s.width();
  BitString result(n);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < result.words_.size(); ++i) {
    const std::uint64_t a = s.words_[i];
    const std::uint64_t b = alpha.words_[i];
    const std::uint64_t partial = a + b;
    const std::uint64_t total = partial + carry;
    result.words_[i] = total;
    carry = static_cast<std::uint64_t>(partial < a) | static_cast<std::uint64_t>(total < partial);
  }
  // Carry out of bit n-1 lives inside the top word when n % 64 != 0.
  const std::size_t rem = n % kWordBits;
  if (rem != 0) {
    std::uint64_t& top = result.words_.back();
    carry = (top >> rem) & 1u;
    top &= top_word_mask(n);
  }
  if (mod.kind == Modulus::Kind::Pow2) return result;

  // End-around: sum >= 2^n means subtract 2^n - 1, i.e. feed the carry back
  // at bit 0 (a second overflow is impossible for valid residues). The exact
  // sum 2^n - 1 is the zero residue.
  if (carry) {
    for (std::size_t i = 0; i < result.words_.size(); ++i)
      if (++result.words_[i] != 0) break;
  } else if (result.is_all_ones()) {
    result = BitString::zeros(n);
  }
  return result;
}

std::size_t BlockDecomposition::count_length_at_least(std::size_t min_length) const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(),
                    [&](const Block& b) { return b.length >= min_length; }));
}

BlockDecomposition decompose_blocks(const BitString& alpha) {
  BlockDecomposition d;
  d.width = alpha.width();
  for (std::size_t i = alpha.width(); i-- > 0;) {
    const int digit = alpha.bit(i) ? 1 : 0;
    if (!d.blocks.empty() && d.blocks.back().digit == digit)
      d.blocks.back().length += 1;
    else
      d.blocks.push_back(Block{digit, 1});
  }
  return d;
}

BitString reassemble(const BlockDecomposition& decomposition) {
  BitString s(decomposition.width);
  std::size_t pos = decomposition.width;
  for (const Block& b : decomposition.blocks) {
    for (std::size_t i = 0; i < b.length; ++i) s.set_bit(--pos, b.digit == 1);
  }
  return s;
}

BitString alpha_with_blocks(const std::vector<Block>& pattern, std::size_t width) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i].length == 0)
      throw Error(ErrorKind::LengthMismatch, "zero-length block");
    if (pattern[i].digit != 0 && pattern[i].digit != 1)
      throw Error(ErrorKind::NonMaximalPattern, "block digit must be 0 or 1");
    if (i > 0 && pattern[i].digit == pattern[i - 1].digit)
      throw Error(ErrorKind::NonMaximalPattern, "adjacent blocks share a digit");
    total += pattern[i].length;
  }
  if (total != width)
    throw Error(ErrorKind::LengthMismatch, "block lengths sum to " + std::to_string(total) +
                                               ", width is " + std::to_string(width));
  return reassemble(BlockDecomposition{pattern, width});
}

BitString alpha_from_rational(long long a, long long b, long long q, std::size_t width) {
  if (q <= 1 || q % 2 == 0)
    throw Error(ErrorKind::OutOfRange, "q must be odd and > 1");
  if (a == 0 || b == 0 || std::abs(a) >= q || std::abs(b) >= q)
    throw Error(ErrorKind::OutOfRange, "need 0 < |a|,|b| < q");
  const BigInt numerator = BigInt(a) * pow2(width) + b;
  if (numerator % q != 0)
    throw Error(ErrorKind::NotDivisible,
                "q does not divide a*2^n + b for n=" + std::to_string(width));
  const BigInt value = numerator / q;
  if (value < 0 || value >= pow2(width) - 1)
    throw Error(ErrorKind::OutOfRange, "(a*2^n + b)/q lies outside [0, 2^n - 1)");
  return BitString::from_integer(value, width);
}

namespace {

BigInt parse_decimal_bigint(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty integer");
  try {
    return BigInt(std::string(text));
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad integer '" + std::string(text) + "'");
  }
}

long long parse_small_int(std::string_view text) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorKind::ParseError, "bad integer '" + std::string(text) + "'");
  return v;
}

// Pattern grammar: a sequence of "(bits)^count" groups and bare bit runs,
// expanded MSB-first, e.g. "(01)^8", "1(10)^3 ", "0^4" is not supported --
// repetition always needs parentheses.
std::string expand_pattern(std::string_view pat) {
  std::string out;
  std::size_t i = 0;
  while (i < pat.size()) {
    const char c = pat[i];
    if (c == '0' || c == '1') {
      out += c;
      ++i;
    } else if (c == '(') {
      const std::size_t close = pat.find(')', i);
      if (close == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "unclosed '(' in pattern");
      const std::string_view group = pat.substr(i + 1, close - i - 1);
      if (group.empty() || group.find_first_not_of("01") != std::string_view::npos)
        throw Error(ErrorKind::ParseError, "pattern group must be nonempty bits");
      i = close + 1;
      if (i >= pat.size() || pat[i] != '^')
        throw Error(ErrorKind::ParseError, "pattern group needs '^count'");
      ++i;
      std::size_t j = i;
      while (j < pat.size() && std::isdigit(static_cast<unsigned char>(pat[j]))) ++j;
      const long long reps = parse_small_int(pat.substr(i, j - i));
      if (reps <= 0) throw Error(ErrorKind::ParseError, "pattern repeat count must be positive");
      for (long long r = 0; r < reps; ++r) out += group;
      i = j;
    } else {
      throw Error(ErrorKind::ParseError, std::string("unexpected '") + c + "' in pattern");
    }
  }
  return out;
}

}  // namespace

BitString parse_alpha(std::string_view spec, std::size_t width) {
  if (spec.empty()) throw Error(ErrorKind::ParseError, "empty alpha spec");
  if (spec.starts_with("0b") || spec.starts_with("0B")) {
    const auto bits = spec.substr(2);
    if (bits.size() != width)
      throw Error(ErrorKind::ParseError, "binary literal has " + std::to_string(bits.size()) +
                                             " bits, width is " + std::to_string(width));
    return BitString::from_binary_text(bits);
  }
  if (spec.starts_with("0x") || spec.starts_with("0X")) {
    BigInt v;
    try {
      v = BigInt("0x" + std::string(spec.substr(2)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad hex literal '" + std::string(spec) + "'");
    }
    return BitString::from_integer(v, width);
  }
  if (spec.starts_with("rat:")) {
    const std::string body(spec.substr(4));
    const auto c1 = body.find(',');
    const auto c2 = body.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw Error(ErrorKind::ParseError, "rational form is rat:a,b,q");
    return alpha_from_rational(parse_small_int(body.substr(0, c1)),
                               parse_small_int(body.substr(c1 + 1, c2 - c1 - 1)),
                               parse_small_int(body.substr(c2 + 1)), width);
  }
  if (spec.starts_with("pat:")) {
    const std::string bits = expand_pattern(spec.substr(4));
    if (bits.size() != width)
      throw Error(ErrorKind::ParseError, "pattern expands to " + std::to_string(bits.size()) +
                                             " bits, width is " + std::to_string(width));
    return BitString::from_binary_text(bits);
  }
  if (spec.find_first_not_of("0123456789") != std::string_view::npos)
    throw Error(ErrorKind::ParseError, "unrecognized alpha spec '" + std::string(spec) + "'");
  return BitString::from_integer(parse_decimal_bigint(spec), width);
}

}  // namespace hamming_shift
