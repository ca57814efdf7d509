#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "hamming_shift/bitstring.hpp"
#include "hamming_shift/numeric.hpp"

namespace hamming_shift {

// Reproducible sampling: every sample index owns a splitmix64 stream whose
// subseed is derived from (seed, index). Estimates are therefore identical
// across shard counts and machines; shards merge by adding counts.
inline constexpr const char* kGeneratorName = "splitmix64";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Subseed of sample `index` under `seed` (the index-th splitmix64 output).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform width-bit string from the given stream.
BitString random_bits(SplitMix64& stream, std::size_t width);

/// Worker cap: hardware concurrency, clamped by HAMMING_SHIFT_THREADS.
unsigned thread_budget();

struct MonteCarloEstimate {
  double estimate = 0.0;        // in [0, 1]
  double standard_error = 0.0;  // sqrt(p(1-p)/samples)
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string quantity;         // e.g. "light_to_heavy_fraction"
  std::string generator = kGeneratorName;
};

/// Frequency of light -> heavy transitions under s -> s + alpha, S uniform
/// (all-ones rejected under Pow2Minus1). Deterministic for a fixed seed.
MonteCarloEstimate estimate_fraction(const BitString& alpha, const Modulus& mod,
                                     std::uint64_t samples, std::uint64_t seed);

/// Empirical (wt(S), wt(S+alpha)) counts; sparse, total = samples.
struct EmpiricalJoint {
  std::size_t width = 0;
  Modulus modulus{Modulus::Kind::Pow2, 1};
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string generator = kGeneratorName;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts;
};

EmpiricalJoint sample_joint(const BitString& alpha, const Modulus& mod, std::uint64_t samples,
                            std::uint64_t seed);

}  // namespace hamming_shift
