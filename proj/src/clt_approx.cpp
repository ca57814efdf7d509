#include "hamming_shift/clt_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "hamming_shift/exact_dp.hpp"

namespace hamming_shift {

GaussianSummary gaussian_summary(std::size_t block_length, std::size_t block_count,
                                 std::size_t ambient_width) {
  if (block_length < 2) throw Error(ErrorKind::OutOfRange, "need L >= 2");
  if (block_count < 1) throw Error(ErrorKind::OutOfRange, "need l >= 1");
  if (ambient_width < block_length * block_count)
    throw Error(ErrorKind::OutOfRange, "blocks exceed the ambient width");

  GaussianSummary g;
  g.block_length = block_length;
  g.block_count = block_count;
  g.ambient_width = ambient_width;
  g.cov_c = t4_cov_c(block_length);
  g.cov_d = t4_cov_d(block_length);
  const Rational l(block_count);
  g.m_entry_var = g.cov_c * l;
  g.m_entry_cov = g.cov_d * l;
  g.axis_sq_major = 2 * (g.cov_c + g.cov_d) * l;
  g.axis_sq_minor = 2 * (g.cov_c - g.cov_d) * l;
  g.density_floor_log = -std::log(std::numbers::pi * static_cast<double>(ambient_width)) -
                        144.0 * static_cast<double>(ambient_width) / static_cast<double>(block_count);
  return g;
}

EllipseAxes rotated_ellipse_axes(const Rational& a, const Rational& b) {
  if (a < 0 || a >= 1) throw Error(ErrorKind::DegenerateEllipse, "need 0 <= a < 1");
  if (b <= 0) throw Error(ErrorKind::DegenerateEllipse, "need b > 0");
  return EllipseAxes{b / (1 + a), b / (1 - a)};
}

RemainderSummary remainder_summary(const std::vector<RemainderBlock>& blocks,
                                   std::size_t ambient_width) {
  RemainderSummary r;
  for (const RemainderBlock& b : blocks) {
    if (b.type == BlockType::T1) {
      r.c_sum += Rational(b.length, 4);
      r.d_sum += Rational(b.length, 4);
    } else if (b.type == BlockType::T4) {
      r.c_sum += t4_cov_c(b.length);
      r.d_sum += t4_cov_d(b.length);
      r.all_type1 = false;
    } else {
      throw Error(ErrorKind::WrongTypes, "remainder admits only T1 and T4 blocks");
    }
    r.total_length += b.length;
  }
  const double n = static_cast<double>(ambient_width);
  // All-T1 remainders collapse to the diagonal (X_R, X_R); the 1-D Chebyshev
  // route gives radius sqrt(n/2). Otherwise the 2-D inequality with t = 2
  // bounds the ellipse inside radius sqrt(2n).
  r.radius = r.all_type1 ? std::sqrt(n / 2.0) : std::sqrt(2.0 * n);
  return r;
}

namespace {

// A walkthrough works over segments: plain blocks, or the fused "01"/"10"
// unit pairs of a consolidation. A fused pair behaves as one T4
// block of length 2 exactly when the carries around it match its pattern.
struct Segment {
  bool fused = false;
  int digit = 0;            // plain: run digit; fused: leading (upper) digit
  std::size_t length = 0;
  bool eligible = false;    // counts toward the arrangement statistic m'
  int t4_carry_in = 0;
  int t4_carry_out = 0;
};

struct SegmentPlan {
  std::vector<Segment> segments;  // MSF order
  std::size_t width = 0;
  std::size_t eligible_count = 0;
};

void set_t4_pattern(Segment& seg) {
  if (seg.fused) {
    // "01" is T4 under no carry in/out; "10" under carry in and out.
    seg.t4_carry_in = seg.digit == 0 ? 0 : 1;
    seg.t4_carry_out = seg.t4_carry_in;
  } else {
    seg.t4_carry_in = seg.digit == 1 ? 0 : 1;
    seg.t4_carry_out = 1 - seg.t4_carry_in;
  }
  seg.eligible = seg.fused || seg.length >= 2;
}

SegmentPlan plan_from(const BlockDecomposition& decomposition) {
  SegmentPlan plan;
  plan.width = decomposition.width;
  for (const Block& b : decomposition.blocks) {
    Segment seg;
    seg.digit = b.digit;
    seg.length = b.length;
    set_t4_pattern(seg);
    plan.eligible_count += seg.eligible;
    plan.segments.push_back(seg);
  }
  return plan;
}

SegmentPlan plan_from(const ConsolidatedDecomposition& decomposition) {
  SegmentPlan plan;
  plan.width = decomposition.width;
  for (const ConsolidatedBlock& b : decomposition.blocks) {
    Segment seg;
    seg.fused = b.fused;
    seg.digit = b.digit;
    seg.length = b.length;
    set_t4_pattern(seg);
    plan.eligible_count += seg.eligible;
    plan.segments.push_back(seg);
  }
  return plan;
}

struct RealizedSegment {
  int carry_in = 0;
  int carry_mid = 0;  // fused segments: carry between the two unit halves
  int carry_out = 0;
  bool is_t4 = false;
};

// Carry out of a digit-d chunk: digit 1 overflows unless (chunk = 0, c = 0);
// digit 0 overflows only when (chunk = 1^L, c = 1).
int chunk_carry(const BitString& s, std::size_t pos, std::size_t length, int digit, int carry) {
  if (digit == 1) {
    for (std::size_t i = pos; i < pos + length; ++i)
      if (s.bit(i)) return 1;
    return carry;
  }
  for (std::size_t i = pos; i < pos + length; ++i)
    if (!s.bit(i)) return 0;
  return carry;
}

std::vector<RealizedSegment> realize(const SegmentPlan& plan, const BitString& s) {
  std::vector<RealizedSegment> realized(plan.segments.size());
  std::size_t pos = 0;
  int carry = 0;
  for (std::size_t j = plan.segments.size(); j-- > 0;) {
    const Segment& seg = plan.segments[j];
    RealizedSegment& r = realized[j];
    r.carry_in = carry;
    if (seg.fused) {
      // Lower bit holds the pair's second digit, upper bit its first.
      const int lower_digit = 1 - seg.digit;
      r.carry_mid = chunk_carry(s, pos, 1, lower_digit, carry);
      r.carry_out = chunk_carry(s, pos + 1, 1, seg.digit, r.carry_mid);
    } else {
      r.carry_out = chunk_carry(s, pos, seg.length, seg.digit, carry);
    }
    r.is_t4 = seg.eligible && r.carry_in == seg.t4_carry_in && r.carry_out == seg.t4_carry_out;
    carry = r.carry_out;
    pos += seg.length;
  }
  return realized;
}

struct SampleSummary {
  std::size_t t4_count = 0;       // all realized T4 among eligible segments
  std::size_t mode_length = 0;    // most frequent T4 length
  std::size_t mode_count = 0;
};

SampleSummary summarize(const SegmentPlan& plan, const std::vector<RealizedSegment>& realized) {
  SampleSummary out;
  std::vector<std::size_t> lengths;
  for (std::size_t j = 0; j < plan.segments.size(); ++j)
    if (realized[j].is_t4) lengths.push_back(plan.segments[j].length);
  out.t4_count = lengths.size();
  if (!lengths.empty()) {
    const auto [len, count] = most_frequent_length(lengths);
    out.mode_length = len;
    out.mode_count = count;
  }
  return out;
}

MonteCarloEstimate arrangement_probability(const SegmentPlan& plan, std::uint64_t trials,
                                           std::uint64_t seed) {
  if (plan.eligible_count == 0)
    throw Error(ErrorKind::NoEligibleBlocks, "no block of length >= 2 and no fused pair");
  if (trials < 1) throw Error(ErrorKind::OutOfRange, "trials must be >= 1");

  MonteCarloEstimate est;
  est.samples = trials;
  est.seed = seed;
  est.quantity = "type4_arrangement_probability";
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 stream(stream_seed(seed, i));
    const BitString s = random_bits(stream, plan.width);
    const auto realized = realize(plan, s);
    std::size_t t4 = 0;
    for (const RealizedSegment& r : realized) t4 += r.is_t4;
    if (4 * t4 > plan.eligible_count) ++est.hits;
  }
  est.estimate = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

}  // namespace

MonteCarloEstimate type4_arrangement_probability(const BlockDecomposition& alpha_blocks,
                                                 std::uint64_t trials, std::uint64_t seed) {
  return arrangement_probability(plan_from(alpha_blocks), trials, seed);
}

MonteCarloEstimate type4_arrangement_probability(const ConsolidatedDecomposition& consolidated,
                                                 std::uint64_t trials, std::uint64_t seed) {
  return arrangement_probability(plan_from(consolidated), trials, seed);
}

TheoremReport theorem_walkthrough(const BitString& alpha, const Modulus& mod,
                                  const WalkthroughOptions& options) {
  if (alpha.width() != mod.width) throw Error(ErrorKind::WidthMismatch, "alpha vs modulus");
  if (options.trials < 1) throw Error(ErrorKind::OutOfRange, "trials must be >= 1");
  const std::size_t n = alpha.width();
  const BlockDecomposition blocks = decompose_blocks(alpha);

  TheoremReport report;
  report.alpha_binary = alpha.to_binary_text();
  report.width = n;
  report.modulus = mod;
  report.trials = options.trials;
  report.seed = options.seed;
  report.m_blocks = blocks.block_count();
  report.wide_blocks = blocks.count_length_at_least(2);
  if (report.m_blocks < 2)
    throw Error(ErrorKind::DegenerateAlpha, "constant alpha has a single block");

  // Case split of the main proof: consolidate when fewer than 1% of the
  // blocks are wide, otherwise work on the raw decomposition.
  SegmentPlan plan;
  report.consolidated = 100 * report.wide_blocks < report.m_blocks;
  if (report.consolidated) {
    Consolidation c = consolidate_unit_pairs(blocks);
    report.consolidation_pattern = c.majority_pattern;
    report.consolidation_fraction = c.fraction;
    plan = plan_from(c.consolidated);
  } else {
    plan = plan_from(blocks);
  }
  report.eligible_blocks = plan.eligible_count;
  if (plan.eligible_count == 0)
    throw Error(ErrorKind::NoEligibleBlocks, "nothing can realize a type-4 law");

  // Pass 1: arrangement statistics plus the (l, L) profile of every fixing.
  report.arrangement = MonteCarloEstimate{};
  report.arrangement.samples = options.trials;
  report.arrangement.seed = options.seed;
  report.arrangement.quantity = "type4_arrangement_probability";
  struct Profile {
    std::size_t mode_count, mode_length;
    std::uint64_t index;
  };
  std::vector<Profile> profiles;
  profiles.reserve(options.trials);
  for (std::uint64_t i = 0; i < options.trials; ++i) {
    SplitMix64 stream(stream_seed(options.seed, i));
    const BitString s = random_bits(stream, n);
    const SampleSummary sum = summarize(plan, realize(plan, s));
    if (4 * sum.t4_count > plan.eligible_count) ++report.arrangement.hits;
    if (sum.mode_count > 0) profiles.push_back({sum.mode_count, sum.mode_length, i});
  }
  report.arrangement.estimate =
      static_cast<double>(report.arrangement.hits) / static_cast<double>(options.trials);
  report.arrangement.standard_error =
      std::sqrt(report.arrangement.estimate * (1.0 - report.arrangement.estimate) /
                static_cast<double>(options.trials));
  if (profiles.empty())
    throw Error(ErrorKind::NoEligibleBlocks, "no sampled carry fixing realized a type-4 block");

  // The representative fixing: lower median by realized count, ties toward
  // the smaller length, then the earlier sample (deterministic for a seed).
  std::sort(profiles.begin(), profiles.end(), [](const Profile& a, const Profile& b) {
    return std::tie(a.mode_count, a.mode_length, a.index) <
           std::tie(b.mode_count, b.mode_length, b.index);
  });
  const Profile chosen = profiles[(profiles.size() - 1) / 2];
  report.chosen_length = chosen.mode_length;
  report.chosen_count = chosen.mode_count;

  // Pass 2: reconstruct the chosen fixing and assemble the decomposition of
  // (X, Y) into Gaussian + remainder + translation.
  {
    SplitMix64 stream(stream_seed(options.seed, chosen.index));
    const BitString s = random_bits(stream, n);
    const auto realized = realize(plan, s);
    std::vector<RemainderBlock> remainder_blocks;
    for (std::size_t j = 0; j < plan.segments.size(); ++j) {
      const Segment& seg = plan.segments[j];
      const RealizedSegment& r = realized[j];
      report.chosen_carries += r.carry_out ? '1' : '0';
      auto account = [&](int digit, std::size_t length, int cin, int cout) {
        const BlockType type = block_type_for(digit, length, cin, cout);
        report.type_counts[static_cast<std::size_t>(type)] += 1;
        report.translation_k += covariance(digit, length, type).translation_k;
        if (type == BlockType::T1)
          remainder_blocks.push_back({type, digit, length});
        else if (type == BlockType::T4 && length != report.chosen_length)
          remainder_blocks.push_back({type, digit, length});
      };
      if (r.is_t4) {
        // A fused pair realizes the T4 law of its leading digit: "01"
        // matches the digit-0 law, "10" the digit-1 law.
        report.type_counts[static_cast<std::size_t>(BlockType::T4)] += 1;
        report.translation_k += covariance(seg.digit, seg.length, BlockType::T4).translation_k;
        if (seg.length != report.chosen_length)
          remainder_blocks.push_back({BlockType::T4, seg.digit, seg.length});
      } else if (seg.fused) {
        // Non-T4 fused pairs fall back to their two unit halves.
        account(seg.digit, 1, r.carry_mid, r.carry_out);
        account(1 - seg.digit, 1, r.carry_in, r.carry_mid);
      } else {
        account(seg.digit, seg.length, r.carry_in, r.carry_out);
      }
    }
    report.gaussian = gaussian_summary(report.chosen_length, report.chosen_count, n);
    report.remainder = remainder_summary(remainder_blocks, n);
  }

  const double log_2_over_pi = std::log(2.0 / std::numbers::pi);
  report.predicted_quadrant_floor_log =
      log_2_over_pi -
      144.0 * static_cast<double>(n) / static_cast<double>(report.chosen_count);
  const double density = static_cast<double>(report.m_blocks) / static_cast<double>(n);
  report.theorem_constant_log = log_2_over_pi - 92160000.0 / (density * density);
  report.final_bound_log = report.theorem_constant_log - std::log(12.0);

  const bool exact_reachable = mod.kind == Modulus::Kind::Pow2 ? n <= 256 : n <= 96;
  if (exact_reachable && !options.force_sampling) {
    const ShiftReport sr = shift_report(alpha, mod);
    report.measured_fraction = Rational(sr.light_to_heavy, sr.total);
    report.measured_exact = true;
  } else {
    const MonteCarloEstimate est =
        estimate_fraction(alpha, mod, options.mc_samples, stream_seed(options.seed, ~0ull));
    report.measured_fraction =
        Rational(BigInt(est.hits), BigInt(est.samples));
    report.measured_exact = false;
    report.measured_stderr = est.standard_error;
    report.measured_samples = est.samples;
  }
  return report;
}

}  // namespace hamming_shift
