#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "hamming_shift/oracle.hpp"
#include "hamming_shift/serialize.hpp"
#include "hamming_shift/verify.hpp"

namespace fs = std::filesystem;
using namespace hamming_shift;

namespace {

constexpr std::size_t kExactLimitPow2 = 256;
constexpr std::size_t kExactLimitPow2m1 = 96;

std::size_t exact_limit(const Modulus& mod) {
  return mod.kind == Modulus::Kind::Pow2 ? kExactLimitPow2 : kExactLimitPow2m1;
}

Modulus parse_modulus(const std::string& name, std::size_t width) {
  if (name == "pow2") return Modulus::pow2(width);
  if (name == "pow2m1") return Modulus::pow2_minus_1(width);
  throw Error(ErrorKind::ParseError, "--mod must be pow2 or pow2m1");
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  out << contents;
}

struct AnalyzeArgs {
  std::string alpha_spec;
  std::size_t width = 0;
  std::string mod_name = "pow2";
  std::string out_dir = ".";
  std::string format = "both";
  bool walkthrough = false;
  bool force_exact = false;
  std::uint64_t samples = 0;  // 0 = automatic method choice
  std::uint64_t seed = 1;
  std::uint64_t trials = 20000;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const Modulus mod = parse_modulus(args.mod_name, args.width);
  const BitString alpha = parse_alpha(args.alpha_spec, args.width);
  const bool exact_ok = args.width <= exact_limit(mod);
  if (args.force_exact && !exact_ok)
    throw Error(ErrorKind::TooWide, "exact DP is guarded to n <= " +
                                        std::to_string(exact_limit(mod)) + " for this modulus");
  const bool exact = args.force_exact || (exact_ok && args.samples == 0);

  Json config{{"command", "analyze"},      {"alpha", args.alpha_spec},
              {"alpha_binary", alpha.to_binary_text()}, {"n", args.width},
              {"modulus", args.mod_name},  {"method", exact ? "exact" : "mc"},
              {"seed", args.seed},         {"samples", args.samples},
              {"trials", args.trials},     {"format", args.format}};

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);

  const auto decomposition = decompose_blocks(alpha);
  {
    Json j = output_envelope(config);
    j["blocks"] = json_of(decomposition);
    write_file(dir / "blocks.json", j.dump(2) + "\n");
  }

  if (exact) {
    const auto dist = joint_distribution(alpha, mod);
    const auto report = shift_report(dist, alpha);
    Json j = output_envelope(config);
    j["shift_report"] = json_of(report);
    j["quadrant_masses"] = json_of(quadrant_masses(dist));
    write_file(dir / "shift_report.json", j.dump(2) + "\n");

    MetaLines meta{{"alpha", alpha.to_binary_text()},
                   {"n", std::to_string(args.width)},
                   {"modulus", args.mod_name},
                   {"method", "exact"}};
    if (args.format == "csv" || args.format == "both")
      write_file(dir / "joint.csv", joint_to_csv(dist, meta));
    if (args.format == "json" || args.format == "both") {
      Json jj = output_envelope(config);
      jj["joint"] = json_of(dist);
      write_file(dir / "joint.json", jj.dump(2) + "\n");
    }
    std::cout << "n=" << args.width << " mod=" << args.mod_name
              << " epsilon=" << to_fraction_string(report.epsilon)
              << " light_to_heavy=" << to_decimal(report.light_to_heavy) << "/"
              << to_decimal(report.total) << "\n";
  } else {
    const std::uint64_t samples = args.samples == 0 ? 100000 : args.samples;
    const auto est = estimate_fraction(alpha, mod, samples, args.seed);
    const auto joint = sample_joint(alpha, mod, samples, args.seed);
    Json j = output_envelope(config);
    j["estimate"] = json_of(est);
    write_file(dir / "shift_report.json", j.dump(2) + "\n");
    MetaLines meta{{"alpha_spec", args.alpha_spec},
                   {"n", std::to_string(args.width)},
                   {"modulus", args.mod_name},
                   {"method", "mc"},
                   {"samples", std::to_string(samples)},
                   {"seed", std::to_string(args.seed)}};
    if (args.format == "csv" || args.format == "both")
      write_file(dir / "joint.csv", joint_to_csv(joint, meta));
    if (args.format == "json" || args.format == "both") {
      Json jj = output_envelope(config);
      jj["joint"] = json_of(joint);
      write_file(dir / "joint.json", jj.dump(2) + "\n");
    }
    std::cout << "n=" << args.width << " mod=" << args.mod_name
              << " light_to_heavy ~= " << est.estimate << " (stderr " << est.standard_error
              << ", " << samples << " samples)\n";
  }

  if (args.walkthrough) {
    WalkthroughOptions opts;
    opts.trials = args.trials;
    opts.seed = args.seed;
    opts.mc_samples = args.samples == 0 ? 100000 : args.samples;
    opts.force_sampling = !exact;
    const auto report = theorem_walkthrough(alpha, mod, opts);
    Json j = output_envelope(config);
    j["walkthrough"] = json_of(report);
    write_file(dir / "walkthrough.json", j.dump(2) + "\n");
    std::cout << "walkthrough: m=" << report.m_blocks << " chosen (L,l)=("
              << report.chosen_length << "," << report.chosen_count
              << ") predicted_floor_log=" << report.predicted_quadrant_floor_log
              << " measured=" << to_fraction_string(report.measured_fraction) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  bool dp = false;
  bool lemmas = false;
  bool moments = false;
  bool bounds = false;
  std::size_t max_n = 8;
  std::size_t max_L = 12;
};

int cmd_verify(const VerifyArgs& args) {
  const bool all = !args.dp && !args.lemmas && !args.moments && !args.bounds;
  std::vector<SuiteResult> results;
  if (all || args.dp) results.push_back(verify_dp_vs_oracle(args.max_n));
  if (all || args.lemmas) results.push_back(verify_block_laws(args.max_L));
  if (all || args.moments)
    results.push_back(verify_moments(std::min<std::size_t>(args.max_L + 8, 20)));
  if (all || args.bounds) results.push_back(verify_bounds(64));

  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS" : "FAIL") << " " << r.name << ": " << r.checks
              << " checks, " << r.failures << " failures\n";
    for (const auto& msg : r.messages) std::cout << "  " << msg << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 2;
}

struct ScanArgs {
  std::string family;
  std::vector<long long> params;
  std::vector<std::size_t> grid;
  std::string mod_name = "pow2";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out_path;
};

BitString family_alpha(const std::string& family, long long param, std::size_t n,
                       const Modulus& mod) {
  if (family == "sparse") {
    if (param < 1 || static_cast<std::size_t>(param) > n)
      throw Error(ErrorKind::OutOfRange, "sparse family needs 1 <= k <= n");
    BitString alpha(n);
    const std::size_t k = static_cast<std::size_t>(param);
    for (std::size_t j = 0; j < k; ++j) alpha.set_bit(j * n / k, true);
    return alpha;
  }
  if (family == "blocks") {
    if (param < 1 || static_cast<std::size_t>(param) > n)
      throw Error(ErrorKind::OutOfRange, "blocks family needs 1 <= m <= n");
    const std::size_t m = static_cast<std::size_t>(param);
    std::vector<Block> pattern;
    const std::size_t base = n / m, extra = n % m;
    for (std::size_t j = 0; j < m; ++j)
      pattern.push_back(Block{j % 2 == 0 ? 1 : 0, base + (j < extra ? 1 : 0)});
    return alpha_with_blocks(pattern, n);
  }
  if (family == "periodic") {
    if (param < 1) throw Error(ErrorKind::OutOfRange, "periodic family needs p >= 1");
    BitString alpha(n);
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(param)) alpha.set_bit(i, true);
    return alpha;
  }
  if (family == "random") {
    SplitMix64 stream(stream_seed(static_cast<std::uint64_t>(param), 0));
    BitString alpha = random_bits(stream, n);
    while (mod.kind == Modulus::Kind::Pow2Minus1 && alpha.is_all_ones())
      alpha = random_bits(stream, n);
    return alpha;
  }
  throw Error(ErrorKind::ParseError, "unknown family '" + family + "'");
}

int cmd_scan(const ScanArgs& args) {
  struct Row {
    long long param;
    std::size_t n;
    std::string text;
  };
  std::vector<Row> rows;
  for (long long param : args.params)
    for (std::size_t n : args.grid) rows.push_back({param, n, {}});

  const auto emit = [&](Row& row) {
    const Modulus mod = parse_modulus(args.mod_name, row.n);
    const BitString alpha = family_alpha(args.family, row.param, row.n, mod);
    const bool exact = row.n <= exact_limit(mod);
    std::ostringstream line;
    line << args.family << "," << row.param << "," << row.n << "," << args.mod_name << ",";
    if (exact) {
      const auto report = shift_report(alpha, mod);
      const Rational fraction(report.light_to_heavy, report.total);
      line << "exact," << to_decimal(numerator(report.epsilon)) << ","
           << to_decimal(denominator(report.epsilon)) << "," << fraction.convert_to<double>()
           << ",," << args.seed;
    } else {
      const auto est = estimate_fraction(alpha, mod, args.samples, args.seed);
      // Exact light mass plus the estimated crossing mass.
      BigInt light = 0;
      for (std::size_t w = 0; 2 * w <= row.n; ++w) light += binomial(row.n, w);
      const Rational epsilon = Rational(light, mod.total()) - Rational(1, 2) +
                               Rational(BigInt(est.hits), BigInt(est.samples));
      line << "mc," << to_decimal(numerator(epsilon)) << "," << to_decimal(denominator(epsilon))
           << "," << est.estimate << "," << est.standard_error << "," << args.seed;
    }
    row.text = line.str();
  };

  // Family points are independent; shard them across the thread budget.
  const unsigned workers =
      std::min<unsigned>(thread_budget(), static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  std::vector<std::thread> pool;
  std::mutex error_mutex;
  std::string first_error;
  std::size_t next = 0;
  std::mutex next_mutex;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t mine;
        {
          std::lock_guard<std::mutex> lock(next_mutex);
          if (next >= rows.size()) return;
          mine = next++;
        }
        try {
          emit(rows[mine]);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error.empty()) first_error = e.what();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw Error(ErrorKind::ParseError, first_error);

  std::ostringstream out;
  out << "# tool=hamming-shift " << HAMMING_SHIFT_VERSION << "\n";
  out << "# family=" << args.family << " modulus=" << args.mod_name
      << " samples=" << args.samples << " seed=" << args.seed << "\n";
  out << "family,param,n,modulus,method,epsilon_num,epsilon_den,lth_fraction,stderr,seed\n";
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.param, a.n) < std::tie(b.param, b.n);
  });
  for (const Row& row : rows) out << row.text << "\n";

  if (args.out_path.empty())
    std::cout << out.str();
  else
    write_file(args.out_path, out.str());
  return 0;
}

struct SampleArgs {
  std::string alpha_spec;
  std::size_t width = 0;
  std::string mod_name = "pow2";
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string joint_out;
};

int cmd_sample(const SampleArgs& args) {
  const Modulus mod = parse_modulus(args.mod_name, args.width);
  const BitString alpha = parse_alpha(args.alpha_spec, args.width);
  const auto est = estimate_fraction(alpha, mod, args.samples, args.seed);

  Json config{{"command", "sample"},     {"alpha", args.alpha_spec},
              {"alpha_binary", alpha.to_binary_text()}, {"n", args.width},
              {"modulus", args.mod_name}, {"samples", args.samples},
              {"seed", args.seed}};
  Json j = output_envelope(config);
  j["estimate"] = json_of(est);
  const std::string text = j.dump(2) + "\n";
  if (args.out_path.empty())
    std::cout << text;
  else
    write_file(args.out_path, text);

  if (!args.joint_out.empty()) {
    const auto joint = sample_joint(alpha, mod, args.samples, args.seed);
    write_file(args.joint_out, joint_to_csv(joint, {{"alpha_spec", args.alpha_spec},
                                                    {"n", std::to_string(args.width)},
                                                    {"modulus", args.mod_name},
                                                    {"samples", std::to_string(args.samples)},
                                                    {"seed", std::to_string(args.seed)}}));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and sampled analysis of Hamming-weight shifts under addition"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a single alpha");
  analyze_cmd
      ->add_option("--alpha", analyze.alpha_spec,
                   "Alpha spec (0b.., 0x.., decimal, rat:a,b,q, pat:..)")
      ->required();
  analyze_cmd->add_option("--n", analyze.width, "Bit width")->required();
  analyze_cmd->add_option("--mod", analyze.mod_name, "Modulus: pow2 | pow2m1");
  analyze_cmd->add_option("--out", analyze.out_dir, "Output directory");
  analyze_cmd->add_option("--format", analyze.format, "Joint table format: json | csv | both");
  analyze_cmd->add_flag("--walkthrough", analyze.walkthrough, "Also write the theorem walkthrough");
  analyze_cmd->add_flag("--exact", analyze.force_exact,
                        "Require the exact DP (exit 3 beyond its guard)");
  analyze_cmd->add_option("--samples", analyze.samples, "Force Monte Carlo with this many samples");
  analyze_cmd->add_option("--seed", analyze.seed, "Sampling seed");
  analyze_cmd->add_option("--trials", analyze.trials, "Walkthrough carry-fixing trials");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the exact verification suites");
  verify_cmd->add_flag("--dp", verify.dp, "DP vs brute-force oracle");
  verify_cmd->add_flag("--lemmas", verify.lemmas, "Block-law suites");
  verify_cmd->add_flag("--moments", verify.moments, "T4 moment identities");
  verify_cmd->add_flag("--bounds", verify.bounds, "Covariance bound suite");
  verify_cmd->add_option("--max-n", verify.max_n, "Exhaustive DP sweep limit");
  verify_cmd->add_option("--max-L", verify.max_L, "Block length limit");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Sweep an alpha family over a width grid");
  scan_cmd->add_option("--family", scan.family, "sparse | blocks | periodic | random")->required();
  scan_cmd->add_option("--params", scan.params, "Family parameters")->required()->delimiter(',');
  scan_cmd->add_option("--grid", scan.grid, "Widths n")->delimiter(',');
  scan_cmd->add_option("--mod", scan.mod_name, "Modulus: pow2 | pow2m1");
  scan_cmd->add_option("--samples", scan.samples, "Monte Carlo samples beyond the exact guard");
  scan_cmd->add_option("--seed", scan.seed, "Sampling seed");
  scan_cmd->add_option("--out", scan.out_path, "CSV output path (stdout when omitted)");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo estimate for one alpha");
  sample_cmd->add_option("--alpha", sample.alpha_spec, "Alpha spec")->required();
  sample_cmd->add_option("--n", sample.width, "Bit width")->required();
  sample_cmd->add_option("--mod", sample.mod_name, "Modulus: pow2 | pow2m1");
  sample_cmd->add_option("--samples", sample.samples, "Sample count")->required();
  sample_cmd->add_option("--seed", sample.seed, "Sampling seed");
  sample_cmd->add_option("--out", sample.out_path, "JSON output path (stdout when omitted)");
  sample_cmd->add_option("--joint-out", sample.joint_out, "Also write the empirical joint CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(analyze_cmd)) return cmd_analyze(analyze);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(verify);
    if (app.got_subcommand(scan_cmd)) return cmd_scan(scan);
    if (app.got_subcommand(sample_cmd)) return cmd_sample(sample);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::TooWide ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
