#include "hamming_shift/verify.hpp"

#include <bit>
#include <sstream>

#include "hamming_shift/block_model.hpp"
#include "hamming_shift/exact_dp.hpp"
#include "hamming_shift/oracle.hpp"

namespace hamming_shift {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    result_.checks += 1;
    if (!ok) {
      result_.failures += 1;
      if (result_.messages.size() < 8) result_.messages.push_back(what);
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string describe(const char* what, std::size_t a, std::size_t b, std::size_t c) {
  std::ostringstream out;
  out << what << " (" << a << ", " << b << ", " << c << ")";
  return out.str();
}

}  // namespace

SuiteResult verify_dp_vs_oracle(std::size_t max_n) {
  Suite suite("dp-vs-oracle");
  for (std::size_t n = 1; n <= max_n; ++n) {
    const Modulus mod = Modulus::pow2(n);
    for (BigInt a = 0; a < pow2(n); ++a) {
      const BitString alpha = BitString::from_integer(a, n);
      suite.check(joint_distribution(alpha, mod) == oracle::brute_force_joint(alpha, mod),
                  "pow2 n=" + std::to_string(n) + " alpha=" + alpha.to_binary_text());
    }
  }
  for (std::size_t n = 2; n <= max_n; ++n) {
    const Modulus mod = Modulus::pow2_minus_1(n);
    for (BigInt a = 0; a < pow2(n) - 1; ++a) {
      const BitString alpha = BitString::from_integer(a, n);
      suite.check(joint_distribution(alpha, mod) == oracle::brute_force_joint(alpha, mod),
                  "pow2m1 n=" + std::to_string(n) + " alpha=" + alpha.to_binary_text());
    }
  }
  return suite.take();
}

SuiteResult verify_block_laws(std::size_t max_L) {
  Suite suite("block-laws");
  for (int digit = 0; digit <= 1; ++digit)
    for (std::size_t L = 1; L <= max_L; ++L)
      for (int cin = 0; cin <= 1; ++cin) {
        const auto tally = oracle::brute_force_block(digit, L, cin);
        const BigInt denom = pow2(L);

        // Single-carry law: conditioned on the incoming carry alone.
        const BlockDistribution law1 = dist_given_carry_in(digit, L, cin);
        std::map<std::pair<std::size_t, std::size_t>, BigInt> merged;
        for (const auto& [key, count] : tally.counts)
          merged[{std::get<0>(key), std::get<1>(key)}] += count;
        suite.check(merged.size() == law1.support.size(),
                    describe("single-carry support size", digit, L, cin));
        for (const auto& [xy, count] : merged)
          suite.check(law1.probability(xy.first, xy.second) == Rational(count, denom),
                      describe("single-carry mass", digit, L, cin));
        suite.check(law1.total_mass() == 1, describe("single-carry total", digit, L, cin));

        // Carry-out mixing weights.
        const auto carry_probs = carry_out_probabilities(digit, L, cin);
        for (int cout = 0; cout <= 1; ++cout) {
          const std::uint64_t with_carry = tally.count_with_carry_out(cout);
          const Rational want(with_carry, denom);
          const auto it = carry_probs.find(cout);
          const Rational got = it == carry_probs.end() ? Rational(0) : it->second;
          suite.check(got == want, describe("carry-out prob", digit, L, cin));
        }

        // Two-carry law, vs the conditional tally.
        for (int cout = 0; cout <= 1; ++cout) {
          const std::uint64_t with_carry = tally.count_with_carry_out(cout);
          if (with_carry == 0) {
            bool threw = false;
            try {
              dist_given_both_carries(digit, L, cin, cout);
            } catch (const Error& e) {
              threw = e.kind() == ErrorKind::InfeasibleCarries;
            }
            suite.check(threw, describe("infeasible pair rejected", digit, L, cin));
            continue;
          }
          const BlockDistribution law2 = dist_given_both_carries(digit, L, cin, cout);
          BigInt seen = 0;
          bool all_match = true;
          for (const auto& [key, count] : tally.counts) {
            if (std::get<2>(key) != cout) continue;
            seen += count;
            if (law2.probability(std::get<0>(key), std::get<1>(key)) !=
                Rational(count, with_carry))
              all_match = false;
          }
          suite.check(all_match && seen == with_carry,
                      describe("two-carry mass", digit, L, cin * 2 + cout));
          suite.check(law2.total_mass() == 1, describe("two-carry total", digit, L, cin * 2 + cout));

          // The single-carry law is the two-carry law mixed over the carry-out law.
          for (const auto& [xy, p1] : law1.support) {
            Rational mixed = 0;
            for (const auto& [c2, w] : carry_probs) {
              const BlockDistribution& l2 = dist_given_both_carries(digit, L, cin, c2);
              mixed += w * l2.probability(xy.first, xy.second);
            }
            suite.check(mixed == p1, describe("carry mixing coherence", digit, L, cin));
          }
        }
      }

  // Digit symmetry: the digit-0 nontrivial-to-nontrivial law is the digit-1
  // law with x and y swapped.
  for (std::size_t L = 1; L <= max_L; ++L) {
    const BlockDistribution one = dist_given_both_carries(1, L, 0, 1);
    const BlockDistribution zero = dist_given_both_carries(0, L, 1, 0);
    bool symmetric = one.support.size() == zero.support.size();
    for (const auto& [xy, p] : one.support)
      if (zero.probability(xy.second, xy.first) != p) symmetric = false;
    suite.check(symmetric, "digit symmetry L=" + std::to_string(L));
  }

  // Trailing-zeros law vs direct enumeration.
  for (std::size_t L = 1; L <= max_L; ++L)
    for (std::size_t x = 0; x <= L; ++x) {
      std::map<std::size_t, std::uint64_t> tz;
      std::uint64_t strings = 0;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << L); ++s) {
        if (static_cast<std::size_t>(std::popcount(s)) != x) continue;
        ++strings;
        std::size_t z = 0;
        while (z < L && ((s >> z) & 1u) == 0) ++z;
        tz[z] += 1;
      }
      const auto law = trailing_zero_dist(L, x);
      Rational total = 0;
      bool match = true;
      for (const auto& [z, p] : law) {
        total += p;
        const auto it = tz.find(z);
        const std::uint64_t count = it == tz.end() ? 0 : it->second;
        if (p != Rational(count, strings)) match = false;
      }
      suite.check(match && total == 1, describe("trailing zeros", L, x, 0));
    }
  return suite.take();
}

SuiteResult verify_moments(std::size_t max_L) {
  Suite suite("t4-moments");
  for (std::size_t L = 2; L <= max_L; ++L) {
    const BigInt N = pow2(L) - 1;
    const Rational u = Rational(N + 1, N);

    // Enumerate the nontrivial-to-nontrivial block sums directly.
    const auto tally = oracle::brute_force_block(1, L, 0);
    BigInt sum_x = 0, sum_xx = 0, sum_y = 0, sum_yy = 0, sum_xy = 0, entries = 0;
    for (const auto& [key, count] : tally.counts) {
      if (std::get<2>(key) != 1) continue;
      const BigInt x = std::get<0>(key), y = std::get<1>(key), c = count;
      sum_x += x * c;
      sum_xx += x * x * c;
      sum_y += y * c;
      sum_yy += y * y * c;
      sum_xy += x * y * c;
      entries += c;
    }
    suite.check(entries == N, "support count L=" + std::to_string(L));

    const Rational ex(sum_x, N), exx(sum_xx, N), ey(sum_y, N), eyy(sum_yy, N), exy(sum_xy, N);
    suite.check(ex == Rational(L, 2) * u, "E[X] closed form L=" + std::to_string(L));
    suite.check(exx == Rational(L * (L + 1), 4) * Rational(N + 1, N),
                "E[X^2] closed form L=" + std::to_string(L));
    suite.check(exy == Rational(L * L + L, 4) * u - 1, "E[XY] closed form L=" + std::to_string(L));

    const Rational var_x = exx - ex * ex;
    const Rational var_y = eyy - ey * ey;
    const Rational cov = exy - ex * ey;
    suite.check(var_x == t4_cov_c(L), "Var(X) = c, L=" + std::to_string(L));
    suite.check(var_y == t4_cov_c(L), "Var(Y) = c, L=" + std::to_string(L));
    suite.check(cov == t4_cov_d(L), "Cov = d, L=" + std::to_string(L));

    const CovarianceSummary summary = covariance(1, L, BlockType::T4);
    suite.check(summary.mean_x == ex && summary.mean_y == ey,
                "mean decomposition L=" + std::to_string(L));
  }
  return suite.take();
}

SuiteResult verify_bounds(std::size_t max_L) {
  Suite suite("covariance-bounds");
  const Rational ninth(1, 9);
  for (std::size_t L = 2; L <= max_L; ++L) {
    const Rational c = t4_cov_c(L);
    const Rational d = t4_cov_d(L);
    suite.check(c - d >= ninth, "c-d >= 1/9 at L=" + std::to_string(L));
    suite.check(d >= ninth, "d >= 1/9 at L=" + std::to_string(L));
    suite.check(2 * (c + d) >= Rational(2, 3), "major axis floor at L=" + std::to_string(L));
    suite.check(2 * (c - d) >= Rational(2, 9), "minor axis floor at L=" + std::to_string(L));
    suite.check(c <= Rational(L, 3), "c <= L/3 at L=" + std::to_string(L));
    if (L == 2) {
      suite.check(c - d == ninth && d == ninth, "equality at L=2");
      suite.check(c == Rational(2, 9) && d == ninth, "c=2/9, d=1/9 at L=2");
    }
  }
  return suite.take();
}

}  // namespace hamming_shift
