#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>

namespace hamming_shift {

// Exact integer counts can exceed 2^256; probabilities must stay exact
// rationals, never floats.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt pow2(std::size_t exponent);

// C(n, k) with the usual convention: 0 when k > n.
BigInt binomial(std::size_t n, std::size_t k);

inline std::string to_decimal(const BigInt& v) { return v.str(); }

// "num/den" in lowest terms, denominator always present ("3/4", "5/1").
std::string to_fraction_string(const Rational& v);

double log_of(const Rational& v);

}  // namespace hamming_shift
