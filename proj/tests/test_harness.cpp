#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "redint/harness.hpp"

using namespace redint;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "redint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json strip_time(nlohmann::json j) {
  j.erase("wall_time_ms");
  return j;
}

ExperimentConfig small(int n = 2) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.samples = 5;
  return cfg;
}

class EnvGuard {
 public:
  EnvGuard() { unsetenv("REDINT_SEED"); }
  ~EnvGuard() { unsetenv("REDINT_SEED"); }
};

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("redint_test_" + name); }

}  // namespace

TEST(Registry, Names) {
  const auto& names = check_names();
  EXPECT_EQ(names.size(), 15u);
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  for (const char* want : {"bracket-axioms", "psi-poisson", "flow-conservation", "dpsi-rank", "strata-census",
                           "reduced-ham-span", "reduced-const-span", "centrality", "leaf-codim",
                           "invariant-span-double", "apposition", "moment-equation", "su2-energy",
                           "su2-exceptional", "su2-dynamics"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
  EXPECT_THROW(run_check("no-such-check", small()), UsageError);
}

TEST(Config, Validation) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.effective_max_word_len(), 4);
  cfg.n = 3;
  EXPECT_EQ(cfg.effective_max_word_len(), 6);
  cfg.max_word_len = 3;
  EXPECT_EQ(cfg.effective_max_word_len(), 3);

  for (auto bad : std::vector<std::function<void(ExperimentConfig&)>>{
           [](ExperimentConfig& c) { c.n = 1; }, [](ExperimentConfig& c) { c.samples = 0; },
           [](ExperimentConfig& c) { c.max_word_len = 1; }, [](ExperimentConfig& c) { c.t_max = 0.0; },
           [](ExperimentConfig& c) { c.tolerances.rank = -1.0; }}) {
    ExperimentConfig c;
    bad(c);
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(run_check("dpsi-rank", c), ConfigError);
  }
}

TEST(Config, FromJson) {
  const auto cfg = config_from_json(nlohmann::json::parse(
      R"({"n": 3, "seed": 9, "samples": 7, "max_word_len": 5, "t_max": 2.5, "tolerances": {"rank": 1e-7}})"));
  EXPECT_EQ(cfg.n, 3);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.samples, 7);
  EXPECT_EQ(cfg.effective_max_word_len(), 5);
  EXPECT_EQ(cfg.t_max, 2.5);
  EXPECT_EQ(cfg.tolerances.rank, 1e-7);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"nn": 3})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"tolerances": {"bogus": 1}})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n": "three"})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse("[1, 2]")), ConfigError);
}

TEST(Report, Evaluate) {
  ExperimentReport r;
  r.observe("a", 1.0);
  r.observe_int("b", 3);
  r.observe_bool("c", true);
  r.expect("a", "<=", 1.0, "bound");
  r.expect("b", "==", 3, "count");
  r.expect("c", "==", 1, "flag");
  EXPECT_TRUE(r.evaluate());
  r.expect("a", ">=", 2.0, "lower");
  EXPECT_FALSE(r.evaluate());

  ExperimentReport missing;
  missing.expect("nothing", "==", 0, "absent");
  EXPECT_FALSE(missing.evaluate());

  ExperimentReport nan;
  nan.observe("x", std::nan(""));
  nan.expect("x", "<=", 1.0, "nan");
  EXPECT_FALSE(nan.evaluate());

  const auto j = r.to_json();
  for (const char* key : {"check", "n", "seed", "samples", "pass", "observed", "expected", "wall_time_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["expected"]["b"]["relation"], "==");
}

TEST(Checks, DeterministicForSeed) {
  for (const auto& name : {"bracket-axioms", "dpsi-rank", "strata-census", "su2-energy"}) {
    const auto a = run_check(name, small()).to_json();
    const auto b = run_check(name, small()).to_json();
    EXPECT_EQ(strip_time(a), strip_time(b)) << name;
  }
  auto other = small();
  other.seed = 2;
  EXPECT_NE(strip_time(run_check("bracket-axioms", small()).to_json()),
            strip_time(run_check("bracket-axioms", other).to_json()));
}

TEST(Checks, RunAllCoversBothRanks) {
  auto cfg = small();
  cfg.samples = 2;
  cfg.t_max = 1.0;
  const auto reports = run_all(cfg);
  ASSERT_EQ(reports.size(), 2 * check_names().size());
  for (std::size_t i = 0; i < check_names().size(); ++i) {
    EXPECT_EQ(reports[i].n, 2);
    EXPECT_EQ(reports[i + check_names().size()].n, 3);
    EXPECT_EQ(reports[i].check_name, check_names()[i]);
  }
}

TEST(Checks, ReportShape) {
  const auto r = run_check("dpsi-rank", small(3));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.observed["rank_min"], 14);
  EXPECT_EQ(r.observed["rank_at_J_zero"], 8);
  EXPECT_FALSE(r.expected.empty());
  for (const auto& [name, e] : r.expected) EXPECT_FALSE(e.provenance.empty()) << name;
}

TEST(Plot, Csv) {
  auto cfg = small();
  cfg.t_max = 0.5;
  const auto traj = emit_plot_data("su2-dynamics", cfg);
  EXPECT_EQ(traj.substr(0, traj.find('\n')), "t,q,p,q_oracle,p_oracle,energy,deviation");
  const auto sweep = emit_plot_data("reduced-const-span", cfg);
  EXPECT_EQ(sweep.substr(0, sweep.find('\n')), "max_word_len,generators,rank");
  EXPECT_THROW(emit_plot_data("dpsi-rank", cfg), UsageError);
  EXPECT_THROW(emit_plot_data("nope", cfg), UsageError);
}

TEST(ParallelMap, KeepsOrderAndRethrowsLowest) {
  const auto squares = ordered_parallel_map<int>(100, [](int i) { return i * i; });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(squares[i], i * i);
  EXPECT_TRUE(ordered_parallel_map<int>(0, [](int i) { return i; }).empty());
  try {
    ordered_parallel_map<int>(50, [](int i) -> int {
      if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
      return i;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Cli, ExitCodes) {
  EnvGuard env;
  EXPECT_EQ(cli({"dpsi-rank", "--samples", "5"}).code, kExitPass);
  EXPECT_EQ(cli({"invariant-span-double", "--samples", "5"}).code, kExitFail);
  EXPECT_EQ(cli({"dpsi-rank", "--n", "1"}).code, kExitConfig);
  EXPECT_EQ(cli({"no-such-check"}).code, kExitUsage);
  EXPECT_EQ(cli({"dpsi-rank", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"plot"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, kExitPass);
}

TEST(Cli, SeedFromEnvironment) {
  EnvGuard env;
  const auto flag = cli({"bracket-axioms", "--samples", "3", "--seed", "11"});
  setenv("REDINT_SEED", "11", 1);
  const auto from_env = cli({"bracket-axioms", "--samples", "3"});
  ASSERT_EQ(flag.code, kExitPass);
  ASSERT_EQ(from_env.code, kExitPass);
  EXPECT_EQ(strip_time(nlohmann::json::parse(flag.out)), strip_time(nlohmann::json::parse(from_env.out)));
  EXPECT_EQ(nlohmann::json::parse(from_env.out)["seed"], 11);

  EXPECT_EQ(cli({"bracket-axioms", "--seed", "11"}).code, kExitConfig);
  setenv("REDINT_SEED", "eleven", 1);
  EXPECT_EQ(cli({"bracket-axioms"}).code, kExitConfig);
}

TEST(Cli, ConfigFileAndOverrides) {
  EnvGuard env;
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"n": 3, "samples": 4, "seed": 5})";
  }
  const auto r = cli({"dpsi-rank", "--config", path.string(), "--samples", "2"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["samples"], 2);
  EXPECT_EQ(j["seed"], 5);

  {
    std::ofstream f(path);
    f << R"({"n": 3, "colour": "blue"})";
  }
  EXPECT_EQ(cli({"dpsi-rank", "--config", path.string()}).code, kExitConfig);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_EQ(cli({"dpsi-rank", "--config", path.string()}).code, kExitConfig);
  EXPECT_EQ(cli({"dpsi-rank", "--config", (fs::temp_directory_path() / "redint_missing.json").string()})
                .code,
            kExitConfig);
  fs::remove(path);
}

TEST(Cli, OutFileAndNdjson) {
  EnvGuard env;
  const auto path = temp_file("out.ndjson");
  const auto r = cli({"all", "--samples", "2", "--t-max", "1", "--out", path.string()});
  EXPECT_EQ(r.code, kExitFail);  // the diagonal invariant span check fails
  std::ifstream f(path);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    EXPECT_TRUE(nlohmann::json::parse(line).contains("check"));
    ++lines;
  }
  EXPECT_EQ(lines, static_cast<int>(2 * check_names().size()));
  fs::remove(path);

  EXPECT_EQ(cli({"dpsi-rank", "--out", "/nonexistent_dir/x.json"}).code, kExitConfig);
}

TEST(Cli, PlotWritesCsv) {
  EnvGuard env;
  const auto r = cli({"plot", "reduced-const-span"});
  ASSERT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "max_word_len,generators,rank");
  EXPECT_EQ(cli({"plot", "dpsi-rank"}).code, kExitUsage);
}

TEST(Executable, ExitStatus) {
  const std::string exe = REDINT_EXE;
  const auto status = [&](const std::string& args) {
    const int raw = std::system(("env -u REDINT_SEED " + exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("dpsi-rank --samples 3"), 0);
  EXPECT_EQ(status("invariant-span-double --samples 3"), 1);
  EXPECT_EQ(status("dpsi-rank --n 0"), 2);
  EXPECT_EQ(status("whatever"), 3);
}
