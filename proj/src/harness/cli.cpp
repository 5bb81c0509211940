#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "redint/harness.hpp"

namespace redint {

namespace {

struct Flags {
  std::string command;
  std::string target;
  std::string config_path;
  std::optional<int> n, samples, max_word_len;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_max;
  std::optional<std::string> out;
};

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

std::uint64_t parse_env_seed(const char* text) {
  std::uint64_t v = 0;
  const std::string s(text);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("REDINT_SEED is not an unsigned 64-bit integer: '" + s + "'");
  }
  return v;
}

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig cfg;
  bool file_seed = false;
  if (!f.config_path.empty()) {
    const nlohmann::json j = read_config_file(f.config_path);
    file_seed = j.is_object() && j.contains("seed");
    cfg = config_from_json(j, cfg);
  }
  if (f.n) cfg.n = *f.n;
  if (f.samples) cfg.samples = *f.samples;
  if (f.max_word_len) cfg.max_word_len = *f.max_word_len;
  if (f.t_max) cfg.t_max = *f.t_max;
  if (f.out) cfg.output_path = *f.out;
  if (f.seed) cfg.seed = *f.seed;

  if (const char* env = std::getenv("REDINT_SEED")) {
    if (f.seed || file_seed) {
      throw ConfigError("REDINT_SEED is set and a seed was also given; use only one");
    }
    cfg.seed = parse_env_seed(env);
  }
  cfg.validate();
  return cfg;
}

void write_output(const ExperimentConfig& cfg, const std::string& text, std::ostream& out) {
  out << text;
  if (cfg.output_path.empty()) return;
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw ConfigError("cannot write output file '" + cfg.output_path + "'");
  file << text;
  if (!file) throw ConfigError("write failed for output file '" + cfg.output_path + "'");
}

std::string check_list() {
  std::string s;
  for (const auto& name : check_names()) s += "  " + name + "\n";
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for degenerate integrability on T*SU(n)", "redint"};
  app.footer("checks:\n" + check_list() + "\nuse `all` to run every check for n = 2, 3, or\n"
             "`plot su2-dynamics|reduced-const-span` for CSV data.");
  Flags f;
  app.add_option("command", f.command, "check name, `all` or `plot`")->required();
  app.add_option("target", f.target, "check to plot (with `plot`)");
  app.add_option("--n", f.n, "matrix size of SU(n)");
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--samples", f.samples, "random samples per check");
  app.add_option("--max-word-len", f.max_word_len, "maximal invariant word length");
  app.add_option("--t-max", f.t_max, "flow horizon");
  app.add_option("--out", f.out, "also write the output to this file");
  app.add_option("--config", f.config_path, "JSON config file; flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "redint: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (f.command == "plot") {
      if (f.target.empty()) throw UsageError("plot needs a check name");
      const ExperimentConfig cfg = resolve(f);
      write_output(cfg, emit_plot_data(f.target, cfg), out);
      return kExitPass;
    }
    if (!f.target.empty()) throw UsageError("unexpected argument '" + f.target + "'");
    if (f.command != "all") {
      // unknown names are a usage error even when the config is also bad
      if (std::find(check_names().begin(), check_names().end(), f.command) == check_names().end()) {
        throw UsageError("unknown check '" + f.command + "'");
      }
      const ExperimentConfig cfg = resolve(f);
      const ExperimentReport rep = run_check(f.command, cfg);
      write_output(cfg, rep.to_json().dump() + "\n", out);
      return rep.pass ? kExitPass : kExitFail;
    }
    const ExperimentConfig cfg = resolve(f);
    std::string text;
    bool pass = true;
    for (const auto& rep : run_all(cfg)) {
      text += rep.to_json().dump() + "\n";
      pass = pass && rep.pass;
    }
    write_output(cfg, text, out);
    return pass ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    err << "redint: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "redint: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace redint
