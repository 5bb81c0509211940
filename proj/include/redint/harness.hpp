#pragma once

// Named, seeded verification checks with JSON reports, and the `redint` CLI.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "redint/lie_core.hpp"

namespace redint {

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitUsage = 3 };

struct ExperimentConfig {
  int n = 2;
  std::uint64_t seed = 1;
  int samples = 50;
  std::optional<int> max_word_len;  // default: 4 for n = 2, 6 otherwise
  ToleranceConfig tolerances;
  double t_max = 10.0;
  std::string output_path;

  int effective_max_word_len() const;
  /// Throws ConfigError on n < 2, samples < 1, max_word_len < 2, t_max <= 0
  /// or invalid tolerances.
  void validate() const;
};

/// Reads a JSON config object; unknown keys are a ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

struct ExpectedValue {
  std::string relation;  // "==", "<=" or ">="
  double value = 0.0;
  std::string provenance;
};

struct ExperimentReport {
  std::string check_name;
  int n = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  bool pass = false;
  nlohmann::ordered_json observed = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, ExpectedValue>> expected;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::int64_t wall_time_ms = 0;

  /// Records an observed number.
  void observe(const std::string& name, double value);
  void observe_int(const std::string& name, long long value);
  void observe_bool(const std::string& name, bool value);
  /// Adds a bound on an already observed value.
  void expect(const std::string& name, const std::string& relation, double value,
              std::string provenance);
  /// Recomputes pass from every expectation; missing observations fail.
  bool evaluate();

  nlohmann::ordered_json to_json() const;
};

using CheckFn = std::function<ExperimentReport(const ExperimentConfig&)>;

/// Registered check names, in canonical order.
const std::vector<std::string>& check_names();

/// Throws UsageError for an unknown name and ConfigError for a bad config.
ExperimentReport run_check(const std::string& name, const ExperimentConfig& cfg);

/// Every registered check for n = 2 and n = 3.
std::vector<ExperimentReport> run_all(const ExperimentConfig& cfg);

/// CSV for "su2-dynamics" (trajectory) or "reduced-const-span" (rank against
/// maximal word length). Throws UsageError for other checks.
std::string emit_plot_data(const std::string& check, const ExperimentConfig& cfg);

/// Entry point of the `redint` executable; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Evaluates fn(0..count-1) on worker threads; results keep index order.
template <typename T>
std::vector<T> ordered_parallel_map(int count, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(std::max(count, 0)));
  std::vector<std::exception_ptr> errors(out.size());
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(count, 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  // lowest failing index wins, so errors are as deterministic as results
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace redint
