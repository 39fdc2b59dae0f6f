#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace kmix;

namespace {

ExperimentConfig small_config(const std::string& problem) {
  ExperimentConfig c;
  c.problem = problem;
  c.sizes = {5};
  c.instances = 2;
  c.seed_base = 3;
  c.delta_t = {0.3};
  c.steps = {5};
  c.mode = EvolutionMode::Trotterized;
  return c;
}

/// CSV text with the runtime column blanked.
std::string without_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() > 12) fields[12] = "";
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
    out += "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(KMIX_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / ("kmix_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c = small_config("mcfp");
  c.penalty = 500.0;
  c.mcps_ensemble_size = 3;
  c.portfolio.return_hi = 50.0;
  const auto j = to_json(c);
  EXPECT_EQ(to_json(config_from_json(j)).dump(), j.dump());
}

TEST(Config, DefaultsAndValidation) {
  const auto c = config_from_json(nlohmann::json::parse(R"({"problem": "mcps"})"));
  EXPECT_EQ(c.instances, 10);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"problem": "tsp"})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"sizes": []})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"mixers": ["xy-ring"]})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"mode": "fast"})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"delta_t": [0.0]})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"stepz": [1]})")), std::invalid_argument);
  EXPECT_THROW(load_config("/nonexistent/config.json"), std::runtime_error);
}

TEST(Config, ShippedConfigsParse) {
  for (const auto& entry : std::filesystem::directory_iterator(KMIX_CONFIG_DIR))
    if (entry.path().extension() == ".json") {
      EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
    }
}

TEST(Run, OneRowPerMixer) {
  auto c = small_config("portfolio");
  c.instances = 1;
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].mixer, MixerKind::X);
  EXPECT_EQ(rows[1].mixer, MixerKind::XYFullBlocked);
  for (const auto& r : rows) EXPECT_TRUE(r.ok()) << r.status;
}

TEST(Run, SweepCompletenessAndRanges) {
  for (const std::string problem : {"portfolio", "mcps", "mcfp"}) {
    auto c = small_config(problem);
    c.sizes = {4, 6};
    c.delta_t = {0.2, 0.5};
    c.steps = {3, 7};
    const auto rows = run_experiments(c);
    ASSERT_EQ(rows.size(), 2U * 2U * 2U * 2U * 2U) << problem;
    for (const auto& r : rows) {
      ASSERT_TRUE(r.ok()) << problem << ": " << r.status;
      ASSERT_GE(r.p_opt, 0.0);
      ASSERT_LE(r.p_opt, 1.0);
      ASSERT_GE(r.leakage, 0.0);
      ASSERT_LE(r.leakage, 1.0);
      ASSERT_LE(r.p_opt + r.leakage, 1.0 + 1e-9);
      ASSERT_GE(r.n_optima, 1U);
      if (r.mixer == MixerKind::XYFullBlocked) {
        ASSERT_LT(r.leakage, 1e-10);
      }
    }
  }
}

TEST(Run, XRowsReportLeakage) {
  auto c = small_config("mcps");
  c.mixers = {MixerKind::X};
  c.sizes = {8};
  const auto rows = run_experiments(c);
  for (const auto& r : rows) EXPECT_GT(r.leakage, 0.01);
}

TEST(Run, OversizedCellsAreSkipped) {
  auto c = small_config("portfolio");
  c.sizes = {5, 9};
  c.max_qubits = 8;
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 8U);
  for (const auto& r : rows) {
    if (r.n == 9) {
      EXPECT_EQ(r.status.rfind("skipped", 0), 0U);
      EXPECT_FALSE(r.crashed());
    } else {
      EXPECT_TRUE(r.ok());
    }
  }
  const auto csv = format_csv(rows);
  EXPECT_NE(csv.find(",,,,"), std::string::npos);
}

TEST(Run, UngeneratableInstanceIsFlaggedNotCrashed) {
  auto c = small_config("mcfp");
  c.mcfp.nodes = 2;  // at most one path per commodity
  c.mcfp.max_attempts = 5;
  const auto rows = run_experiments(c);
  ASSERT_EQ(rows.size(), 4U);
  for (const auto& r : rows) {
    EXPECT_EQ(r.status.rfind("infeasible", 0), 0U) << r.status;
    EXPECT_FALSE(r.crashed());
  }
}

TEST(Run, DeterministicAcrossRunsAndThreadCounts) {
  auto c = small_config("mcps");
  c.sizes = {5, 7};
  c.steps = {4, 9};
  const auto a = format_csv(run_experiments(c, 1));
  const auto b = format_csv(run_experiments(c, 1));
  const auto t = format_csv(run_experiments(c, 3));
  EXPECT_EQ(without_runtime(a), without_runtime(b));
  EXPECT_EQ(without_runtime(a), without_runtime(t));
}

TEST(Csv, HeaderAndRowFormat) {
  RunRecord r;
  r.problem = "mcps";
  r.n = 6;
  r.instance_seed = 11;
  r.mixer = MixerKind::XYFullBlocked;
  r.mode = EvolutionMode::Exact;
  r.delta_t = 0.1;
  r.p = 20;
  r.p_opt = 0.5;
  r.leakage = 0.0;
  r.optimal_value = 2.0;
  r.n_optima = 3;
  r.runtime_ms = 1.5;
  const auto csv = format_csv({r});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "schema_version,problem,n,instance_seed,mixer,mode,delta_t,p,p_opt,leakage,optimal_value,n_optima,runtime_ms,status");
  EXPECT_EQ(csv_row(r), "1,mcps,6,11,xy,exact,0.10000000000000001,20,0.5,0,2,3,1.5,ok");
  EXPECT_EQ(sanitize_reason("a,b\"c"), "a;b;c");
}

TEST(Cli, RunWritesCsvAndExitsCleanly) {
  const auto dir = temp_dir();
  const auto csv = dir / "smoke.csv";
  const auto log = dir / "run.log";
  ASSERT_EQ(run_cli("run --config " + std::string(KMIX_CONFIG_DIR) + "/smoke.json --output " + csv.string(), log), 0)
      << read_file(log);
  const auto first = read_file(csv);
  EXPECT_EQ(first.substr(0, first.find('\n')), kCsvHeader);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 1 + 2 * 2 * 2);
  ASSERT_EQ(run_cli("run --config " + std::string(KMIX_CONFIG_DIR) + "/smoke.json --output " + csv.string(), log), 0);
  EXPECT_EQ(without_runtime(read_file(csv)), without_runtime(first));
  std::filesystem::remove_all(dir);
}

TEST(Cli, CensusAndErrorScanAndTsp) {
  const auto dir = temp_dir();
  const auto out = dir / "out.txt";
  ASSERT_EQ(run_cli("census --mixer xy-full --n 6", out), 0);
  EXPECT_NE(read_file(out).find("xy,6,6,15,45,60,"), std::string::npos) << read_file(out);
  ASSERT_EQ(run_cli("error-scan --mixer xy-full --n 4 --k 1 --beta-min 0.01", out), 0);
  const auto scan = read_file(out);
  const auto pos = scan.find("scaling_exponent,");
  ASSERT_NE(pos, std::string::npos);
  const double slope = std::stod(scan.substr(pos + 17));
  EXPECT_GE(slope, 1.8);
  EXPECT_LE(slope, 2.2);
  ASSERT_EQ(run_cli("tsp-check --cities 3", out), 0);
  const auto tsp = read_file(out);
  const auto line = tsp.substr(tsp.find('\n') + 1);
  std::vector<std::string> f;
  std::stringstream ls(line);
  for (std::string s; std::getline(ls, s, ',');) f.push_back(s);
  ASSERT_GE(f.size(), 8U);
  EXPECT_LT(std::stod(f[4]), 1e-10);
  EXPECT_LT(std::stod(f[7]), 1e-9);
  EXPECT_NE(run_cli("run --config /nonexistent.json", out), 0);
  EXPECT_NE(run_cli("bogus", out), 0);
  std::filesystem::remove_all(dir);
}
