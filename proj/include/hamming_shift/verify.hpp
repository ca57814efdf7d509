#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hamming_shift {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  // first few failure descriptions

  bool passed() const { return failures == 0; }
};

// Exact-equality verification suites, shared by `hamming-shift verify` and
// the test binaries. Every comparison is integer or rational; no tolerances.

/// joint_distribution vs brute_force_joint, all alpha, n in [1, max_n]
/// for Pow2 and [2, max_n] for Pow2Minus1.
SuiteResult verify_dp_vs_oracle(std::size_t max_n);

/// Single- and two-carry block laws, trailing-zeros law, carry mixing
/// coherence and the digit symmetry, against exhaustive block enumeration
/// for L in [1, max_L].
SuiteResult verify_block_laws(std::size_t max_L);

/// T4 moment identities (means, second moments, covariance entries) against
/// exhaustive enumeration for L in [2, max_L]; max_L <= 20.
SuiteResult verify_moments(std::size_t max_L);

/// c - d >= 1/9, d >= 1/9, per-unit ellipse axis floors and c <= L/3, for
/// L in [2, max_L], with equality checks at L = 2.
SuiteResult verify_bounds(std::size_t max_L);

}  // namespace hamming_shift
