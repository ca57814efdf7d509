#include "hamming_shift/exact_dp.hpp"

#include <array>
#include <memory>
#include <utility>

namespace hamming_shift {

JointWeightDistribution::JointWeightDistribution(std::size_t width, Modulus modulus)
    : width_(width),
      modulus_(modulus),
      counts_((width + 1) * (width + 1)),
      total_(modulus.total()) {
  if (modulus.width != width) throw Error(ErrorKind::WidthMismatch, "modulus width");
}

std::vector<BigInt> JointWeightDistribution::marginal_x() const {
  std::vector<BigInt> m(width_ + 1);
  for (std::size_t x = 0; x <= width_; ++x)
    for (std::size_t y = 0; y <= width_; ++y) m[x] += count(x, y);
  return m;
}

std::vector<BigInt> JointWeightDistribution::marginal_y() const {
  std::vector<BigInt> m(width_ + 1);
  for (std::size_t x = 0; x <= width_; ++x)
    for (std::size_t y = 0; y <= width_; ++y) m[y] += count(x, y);
  return m;
}

BigInt JointWeightDistribution::sum() const {
  BigInt s = 0;
  for (const BigInt& c : counts_) s += c;
  return s;
}

namespace {

// One (x, y) count table. Entries are held in a flat (n+1)^2 grid but the
// DP only touches x, y <= bits_processed, so updates stay O(i^2) at step i.
struct Table {
  explicit Table(std::size_t n) : stride(n + 1), cells(stride * stride) {}
  std::size_t stride;
  std::vector<BigInt> cells;
  BigInt& at(std::size_t x, std::size_t y) { return cells[x * stride + y]; }
};

JointWeightDistribution dp_pow2(const BitString& alpha) {
  const std::size_t n = alpha.width();
  std::array<std::unique_ptr<Table>, 2> state{};
  state[0] = std::make_unique<Table>(n);
  state[0]->at(0, 0) = 1;

  for (std::size_t i = 0; i < n; ++i) {
    const int a = alpha.bit(i) ? 1 : 0;
    std::array<std::unique_ptr<Table>, 2> next{};
    for (int c = 0; c < 2; ++c) {
      if (!state[c]) continue;
      for (int sbit = 0; sbit < 2; ++sbit) {
        const int t = sbit ^ a ^ c;
        const int c2 = (sbit + a + c) >= 2 ? 1 : 0;
        if (!next[c2]) next[c2] = std::make_unique<Table>(n);
        Table& dst = *next[c2];
        Table& src = *state[c];
        for (std::size_t x = 0; x <= i; ++x)
          for (std::size_t y = 0; y <= i; ++y) {
            const BigInt& v = src.at(x, y);
            if (v != 0) dst.at(x + sbit, y + t) += v;
          }
      }
    }
    state = std::move(next);
  }

  JointWeightDistribution dist(n, Modulus::pow2(n));
  for (int c = 0; c < 2; ++c) {
    if (!state[c]) continue;
    for (std::size_t x = 0; x <= n; ++x)
      for (std::size_t y = 0; y <= n; ++y) dist.count(x, y) += state[c]->at(x, y);
  }
  return dist;
}

JointWeightDistribution dp_pow2m1(const BitString& alpha) {
  const std::size_t n = alpha.width();
  if (alpha.is_all_ones())
    throw Error(ErrorKind::InvalidResidue, "alpha = 1^n is not a residue of Z_{2^n-1}");

  // z-state index: 0..n-1 = frozen trailing-ones length of the mod-2^n sum,
  // n = "open" (every sum bit so far is one).
  const std::size_t open = n;
  auto idx = [&](int carry, std::size_t z) { return static_cast<std::size_t>(carry) * (n + 1) + z; };
  std::vector<std::unique_ptr<Table>> state(2 * (n + 1));
  state[idx(0, open)] = std::make_unique<Table>(n);
  state[idx(0, open)]->at(0, 0) = 1;

  for (std::size_t i = 0; i < n; ++i) {
    const int a = alpha.bit(i) ? 1 : 0;
    std::vector<std::unique_ptr<Table>> next(2 * (n + 1));
    for (int c = 0; c < 2; ++c)
      for (std::size_t z = 0; z <= n; ++z) {
        auto& src = state[idx(c, z)];
        if (!src) continue;
        for (int sbit = 0; sbit < 2; ++sbit) {
          const int t = sbit ^ a ^ c;
          const int c2 = (sbit + a + c) >= 2 ? 1 : 0;
          const std::size_t z2 = (z == open) ? (t == 1 ? open : i) : z;
          auto& dst = next[idx(c2, z2)];
          if (!dst) dst = std::make_unique<Table>(n);
          for (std::size_t x = 0; x <= i; ++x)
            for (std::size_t y = 0; y <= i; ++y) {
              const BigInt& v = src->at(x, y);
              if (v != 0) dst->at(x + sbit, y + t) += v;
            }
        }
      }
    state = std::move(next);
  }

  JointWeightDistribution dist(n, Modulus::pow2_minus_1(n));
  for (int c = 0; c < 2; ++c)
    for (std::size_t z = 0; z <= n; ++z) {
      auto& tab = state[idx(c, z)];
      if (!tab) continue;
      for (std::size_t x = 0; x <= n; ++x)
        for (std::size_t yw = 0; yw <= n; ++yw) {
          const BigInt& v = tab->at(x, yw);
          if (v == 0) continue;
          std::size_t y;
          if (c == 0 && z == open) {
            // Sum hit exactly 2^n - 1: the zero residue.
            y = 0;
          } else if (c == 0) {
            y = yw;
          } else {
            // End-around +1 flips the trailing-ones run: weight moves by 1 - z.
            y = yw + 1 - z;
          }
          dist.count(x, y) += v;
        }
    }
  // S = 1^n is not a residue; its unique DP path lands on (n, wt(alpha)).
  dist.count(n, alpha.weight()) -= 1;
  return dist;
}

}  // namespace

JointWeightDistribution joint_distribution(const BitString& alpha, const Modulus& mod) {
  if (alpha.width() != mod.width)
    throw Error(ErrorKind::WidthMismatch, "alpha width vs modulus width");
  return mod.kind == Modulus::Kind::Pow2 ? dp_pow2(alpha) : dp_pow2m1(alpha);
}

ShiftReport shift_report(const JointWeightDistribution& dist, const BitString& alpha) {
  const std::size_t n = dist.width();
  ShiftReport r;
  r.width = n;
  r.modulus = dist.modulus();
  r.alpha_binary = alpha.to_binary_text();
  r.total = dist.total();
  for (std::size_t x = 0; x <= n; ++x)
    for (std::size_t y = 0; y <= n; ++y) {
      const BigInt& c = dist.count(x, y);
      if (c == 0) continue;
      const bool lx = is_light(x, n), ly = is_light(y, n);
      if (lx && ly)
        r.light_to_light += c;
      else if (lx)
        r.light_to_heavy += c;
      else if (ly)
        r.heavy_to_light += c;
      else
        r.heavy_to_heavy += c;
    }
  r.light_count = r.light_to_light + r.light_to_heavy;
  r.heavy_count = r.heavy_to_light + r.heavy_to_heavy;
  // |M u (alpha+M)| = |M| + |{s in M : s+alpha heavy}|.
  r.union_size = r.light_count + r.light_to_heavy;
  r.epsilon = Rational(r.union_size, r.total) - Rational(1, 2);
  return r;
}

ShiftReport shift_report(const BitString& alpha, const Modulus& mod) {
  return shift_report(joint_distribution(alpha, mod), alpha);
}

QuadrantMasses quadrant_masses(const JointWeightDistribution& dist) {
  BitString dummy(dist.width());
  // Reuse the transition tally; alpha text is irrelevant here.
  ShiftReport r = shift_report(dist, dummy);
  QuadrantMasses q;
  q.light_to_heavy = Rational(r.light_to_heavy, r.total);
  q.light_to_light = Rational(r.light_to_light, r.total);
  q.heavy_to_light = Rational(r.heavy_to_light, r.total);
  q.heavy_to_heavy = Rational(r.heavy_to_heavy, r.total);
  return q;
}

}  // namespace hamming_shift
