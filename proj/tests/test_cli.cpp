#include <doctest.h>

#include <array>
#include <cstdio>
#include <map>
#include <vector>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(HAMMING_SHIFT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe))
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("hs_cli_" + std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST_CASE("analyze writes exact reports") {
  TempDir dir;
  const auto run = run_cli("analyze --alpha 'pat:(01)^8' --n 16 --mod pow2 --format both --out " +
                           dir.path().string());
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("epsilon=") != std::string::npos);

  const auto report = nlohmann::json::parse(slurp(dir.path() / "shift_report.json"));
  CHECK(report["tool"]["name"] == "hamming-shift");
  CHECK(report["config"]["method"] == "exact");
  CHECK(report["shift_report"]["light_to_heavy"] == "19813");

  const auto blocks = nlohmann::json::parse(slurp(dir.path() / "blocks.json"));
  CHECK(blocks["blocks"]["block_count"] == 16);

  const std::string csv = slurp(dir.path() / "joint.csv");
  CHECK(csv.find("x,y,count") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(dir.path() / "joint.json"))["joint"]["total"] == "65536");
}

TEST_CASE("analyze with walkthrough") {
  TempDir dir;
  const auto run = run_cli("analyze --alpha 'pat:(1100)^4' --n 16 --trials 2000 --seed 9 "
                           "--walkthrough --out " +
                           dir.path().string());
  CHECK(run.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(dir.path() / "walkthrough.json"));
  CHECK(j["walkthrough"]["chosen_length"] == 2);
  CHECK(j["walkthrough"]["measured_exact"] == true);
}

TEST_CASE("analyze alpha=0 gives zero crossing mass") {
  TempDir dir;
  const auto run = run_cli("analyze --alpha 0x0 --n 8 --out " + dir.path().string());
  CHECK(run.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(dir.path() / "shift_report.json"));
  CHECK(j["shift_report"]["light_to_heavy"] == "0");
}

TEST_CASE("verify subcommand") {
  CHECK(run_cli("verify --dp --max-n 5").exit_code == 0);
  CHECK(run_cli("verify --lemmas --max-L 6").exit_code == 0);
  CHECK(run_cli("verify --bounds").exit_code == 0);
}

TEST_CASE("scan produces ordered csv") {
  TempDir dir;
  const fs::path out = dir.path() / "scan.csv";
  const auto run =
      run_cli("scan --family sparse --params 1,2 --grid 8,16 --out " + out.string());
  CHECK(run.exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("family,param,n,modulus,method,epsilon_num,epsilon_den,lth_fraction,stderr,seed") !=
        std::string::npos);
  CHECK(csv.find("sparse,1,8,pow2,exact,") != std::string::npos);
  CHECK(csv.find("sparse,2,16,pow2,exact,") != std::string::npos);
  // Ordered by (param, n).
  CHECK(csv.find("sparse,1,8") < csv.find("sparse,1,16"));
  CHECK(csv.find("sparse,1,16") < csv.find("sparse,2,8"));
}

TEST_CASE("scan with empty grid emits just the header") {
  TempDir dir;
  const fs::path out = dir.path() / "scan.csv";
  const auto run = run_cli("scan --family sparse --params 1 --out " + out.string());
  CHECK(run.exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("family,param,n,") != std::string::npos);
  CHECK(csv.find("sparse,1,") == std::string::npos);
}

TEST_CASE("sample is byte-identical under a fixed seed") {
  TempDir dir;
  const fs::path a = dir.path() / "a.json";
  const fs::path b = dir.path() / "b.json";
  const std::string base = "sample --alpha 'pat:(01)^16' --n 32 --samples 20000 --seed 11 --out ";
  CHECK(run_cli(base + a.string()).exit_code == 0);
  CHECK(run_cli(base + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["estimate"]["generator"] == "splitmix64");
  CHECK(j["estimate"]["seed"] == 11);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("analyze --n 8").exit_code == 1);               // missing --alpha
  CHECK(run_cli("analyze --alpha zz --n 8").exit_code == 1);    // bad spec
  CHECK(run_cli("sample --alpha 0x1 --n 8 --samples 0").exit_code == 1);
  CHECK(run_cli("analyze --alpha 0x1 --n 300 --exact").exit_code == 3);  // beyond the DP guard
  CHECK(run_cli("nonsense").exit_code == 1);
  const auto help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("analyze") != std::string::npos);
}

TEST_CASE("rational alpha end to end") {
  TempDir dir;
  const auto run = run_cli("analyze --alpha rat:1,-1,3 --n 16 --out " + dir.path().string());
  CHECK(run.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(dir.path() / "shift_report.json"));
  // (2^16 - 1)/3 = 21845 = 0101...01.
  CHECK(j["config"]["alpha_binary"] == "0101010101010101");
  CHECK(j["shift_report"]["light_to_heavy"] == "19813");
}

TEST_CASE("scan trends match the theory qualitatively") {
  TempDir dir;
  const fs::path out = dir.path() / "trend.csv";
  // Sparse alphas: the crossing fraction decays with n for fixed weight.
  CHECK(run_cli("scan --family sparse --params 1,2 --grid 16,32,64 --out " + out.string())
            .exit_code == 0);
  std::istringstream csv(slurp(out));
  std::string line;
  std::map<long long, std::vector<double>> fractions;  // param -> by n
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("family", 0) == 0) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 8);
    fractions[std::stoll(cells[1])].push_back(std::stod(cells[7]));
  }
  REQUIRE(fractions.size() == 2);
  for (const auto& [param, values] : fractions) {
    REQUIRE(values.size() == 3);  // already sorted by n
    CHECK(values[0] > values[1]);
    CHECK(values[1] > values[2]);
  }

  // Dense-block alphas stay bounded away from zero.
  const fs::path out2 = dir.path() / "blocks.csv";
  CHECK(run_cli("scan --family blocks --params 16 --grid 16,32,64 --out " + out2.string())
            .exit_code == 0);
  std::istringstream csv2(slurp(out2));
  while (std::getline(csv2, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("family", 0) == 0) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 8);
    CHECK(std::stod(cells[7]) > 0.05);
  }
}

TEST_CASE("rational alpha walkthrough end to end at n = 64") {
  TempDir dir;
  const auto run = run_cli("analyze --alpha rat:1,-1,3 --n 64 --walkthrough --trials 4000 "
                           "--seed 3 --out " + dir.path().string());
  CHECK(run.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(dir.path() / "walkthrough.json"));
  CHECK(j["walkthrough"]["m_blocks"] == 64);
  CHECK(j["walkthrough"]["consolidated"] == true);
  CHECK(j["walkthrough"]["measured_exact"] == true);
  CHECK(slurp(dir.path() / "joint.csv").find("x,y,count") != std::string::npos);
}
