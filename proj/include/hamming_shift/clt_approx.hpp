#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamming_shift/block_model.hpp"
#include "hamming_shift/sampler.hpp"

namespace hamming_shift {

/// Covariance and ellipse geometry of the Gaussian formed by l identical
/// T4 blocks of length L inside an n-bit string. Axis squares are the
/// rotated-ellipse dimensions 2(c+d)l (along y=x) and 2(c-d)l (along y=-x).
struct GaussianSummary {
  std::size_t block_length = 0;  // L
  std::size_t block_count = 0;   // l
  std::size_t ambient_width = 0; // n
  Rational cov_c;
  Rational cov_d;
  Rational m_entry_var;  // c*l
  Rational m_entry_cov;  // d*l
  Rational axis_sq_major;
  Rational axis_sq_minor;
  double density_floor_log = 0.0;  // log(1/(pi*n)) - 144*n/l
};

GaussianSummary gaussian_summary(std::size_t block_length, std::size_t block_count,
                                 std::size_t ambient_width);

/// Semi-axis squares of x^2 - 2a*xy + y^2 = b after the pi/4 rotation:
/// b/(1+a) along the y=-x direction, b/(1-a) along y=x.
struct EllipseAxes {
  Rational axis_sq_along_diff;  // y = -x
  Rational axis_sq_along_sum;   // y = +x
};

EllipseAxes rotated_ellipse_axes(const Rational& a, const Rational& b);

struct RemainderBlock {
  BlockType type = BlockType::T1;  // only T1 and T4 are admissible
  int digit = 0;
  std::size_t length = 0;
};

/// Summed covariance of the leftover T1/T4 blocks plus the Chebyshev radius:
/// sqrt(n/2) via the one-dimensional route when every entry is T1 (C = D),
/// sqrt(2n) via the two-dimensional inequality otherwise. Mass bound 1/2.
struct RemainderSummary {
  Rational c_sum;
  Rational d_sum;
  std::size_t total_length = 0;
  bool all_type1 = true;
  double radius = 0.0;
  double mass_bound = 0.5;
};

RemainderSummary remainder_summary(const std::vector<RemainderBlock>& blocks,
                                   std::size_t ambient_width);

/// Carry-arrangement statistic: sample S, read the realized carries, and
/// estimate the probability that more than m'/4 of the eligible blocks come
/// out T4. Eligible blocks are those of length >= 2, or the fused
/// pseudo-blocks of a consolidated decomposition.
MonteCarloEstimate type4_arrangement_probability(const BlockDecomposition& alpha_blocks,
                                                 std::uint64_t trials, std::uint64_t seed);
MonteCarloEstimate type4_arrangement_probability(const ConsolidatedDecomposition& consolidated,
                                                 std::uint64_t trials, std::uint64_t seed);

struct WalkthroughOptions {
  std::uint64_t trials = 20000;   // sampled carry fixings
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 100000;  // fraction estimate when exact DP is out of reach
  bool force_sampling = false;
};

/// Every quantitative step of the main theorem for one concrete alpha.
/// Log-space fields use natural logs; the theorem constant exists only in
/// log space (e^{-92160000/c^2} underflows every standard float).
struct TheoremReport {
  std::string alpha_binary;
  std::size_t width = 0;
  Modulus modulus{Modulus::Kind::Pow2, 1};
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  std::size_t m_blocks = 0;      // total blocks
  std::size_t wide_blocks = 0;   // blocks of length >= 2
  bool consolidated = false;     // unit-pair consolidation path taken
  std::string consolidation_pattern;
  Rational consolidation_fraction;
  std::size_t eligible_blocks = 0;  // m' (plain wide blocks or fused pairs)

  MonteCarloEstimate arrangement;   // Pr(T4 count > m'/4)
  std::array<std::size_t, 4> type_counts{};  // chosen fixing, T1..T4
  std::string chosen_carries;       // carry-out bits of the chosen fixing, MSF
  std::size_t chosen_length = 0;    // L
  std::size_t chosen_count = 0;     // l

  GaussianSummary gaussian;
  RemainderSummary remainder;
  Rational translation_k;           // net (1,-1) offset over all blocks

  double predicted_quadrant_floor_log = 0.0;  // log((2/pi) e^{-144n/l})
  double theorem_constant_log = 0.0;          // log((2/pi) e^{-92160000/c^2}), c = m/n
  double final_bound_log = 0.0;               // theorem constant minus log 12

  Rational measured_fraction;       // light->heavy mass
  bool measured_exact = false;
  double measured_stderr = 0.0;
  std::uint64_t measured_samples = 0;
};

TheoremReport theorem_walkthrough(const BitString& alpha, const Modulus& mod,
                                  const WalkthroughOptions& options);

}  // namespace hamming_shift
