#include "hamming_shift/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "hamming_shift/exact_dp.hpp"

namespace hamming_shift {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

BitString random_bits(SplitMix64& stream, std::size_t width) {
  std::vector<std::uint64_t> words((width + 63) / 64);
  for (std::uint64_t& w : words) w = stream.next();
  return BitString::from_words(std::move(words), width);
}

unsigned thread_budget() {
  unsigned budget = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("HAMMING_SHIFT_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) budget = std::min<unsigned>(budget, static_cast<unsigned>(v));
  }
  return budget;
}

namespace {

BitString draw_operand(std::uint64_t seed, std::uint64_t index, std::size_t width,
                       bool reject_all_ones) {
  SplitMix64 stream(stream_seed(seed, index));
  BitString s = random_bits(stream, width);
  while (reject_all_ones && s.is_all_ones()) s = random_bits(stream, width);
  return s;
}

template <typename PerSample>
void run_sharded(std::uint64_t samples, PerSample&& per_sample_range) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(thread_budget(), std::max<std::uint64_t>(samples, 1)));
  if (workers <= 1) {
    per_sample_range(0u, 0, samples);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (samples + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(samples, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, w, lo, hi] { per_sample_range(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

MonteCarloEstimate estimate_fraction(const BitString& alpha, const Modulus& mod,
                                     std::uint64_t samples, std::uint64_t seed) {
  if (alpha.width() != mod.width) throw Error(ErrorKind::WidthMismatch, "alpha vs modulus");
  if (samples < 1) throw Error(ErrorKind::OutOfRange, "samples must be >= 1");
  const bool reject = mod.kind == Modulus::Kind::Pow2Minus1;
  if (reject && alpha.is_all_ones()) throw Error(ErrorKind::InvalidResidue, "alpha = 1^n");

  const std::size_t n = alpha.width();
  std::vector<std::uint64_t> shard_hits(thread_budget(), 0);
  run_sharded(samples, [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const BitString s = draw_operand(seed, i, n, reject);
      const BitString t = add(s, alpha, mod);
      if (is_light(s.weight(), n) && !is_light(t.weight(), n)) ++hits;
    }
    shard_hits[worker] += hits;
  });

  MonteCarloEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.quantity = "light_to_heavy_fraction";
  for (std::uint64_t h : shard_hits) est.hits += h;
  est.estimate = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.standard_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

EmpiricalJoint sample_joint(const BitString& alpha, const Modulus& mod, std::uint64_t samples,
                            std::uint64_t seed) {
  if (alpha.width() != mod.width) throw Error(ErrorKind::WidthMismatch, "alpha vs modulus");
  if (samples < 1) throw Error(ErrorKind::OutOfRange, "samples must be >= 1");
  const bool reject = mod.kind == Modulus::Kind::Pow2Minus1;
  if (reject && alpha.is_all_ones()) throw Error(ErrorKind::InvalidResidue, "alpha = 1^n");

  const std::size_t n = alpha.width();
  using CountMap = std::map<std::pair<std::size_t, std::size_t>, std::uint64_t>;
  std::vector<CountMap> shard_counts(thread_budget());
  run_sharded(samples, [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
    CountMap local;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const BitString s = draw_operand(seed, i, n, reject);
      const BitString t = add(s, alpha, mod);
      local[{s.weight(), t.weight()}] += 1;
    }
    shard_counts[worker] = std::move(local);
  });

  EmpiricalJoint joint;
  joint.width = n;
  joint.modulus = mod;
  joint.samples = samples;
  joint.seed = seed;
  for (const CountMap& local : shard_counts)
    for (const auto& [xy, c] : local) joint.counts[xy] += c;
  return joint;
}

}  // namespace hamming_shift
