#include "redint/harness.hpp"

#include <cmath>

namespace redint {

int ExperimentConfig::effective_max_word_len() const {
  if (max_word_len) return *max_word_len;
  return n == 2 ? 4 : 6;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw ConfigError("n must be >= 2, got " + std::to_string(n));
  if (samples < 1) throw ConfigError("samples must be >= 1, got " + std::to_string(samples));
  if (max_word_len && *max_word_len < 2) {
    throw ConfigError("max_word_len must be >= 2, got " + std::to_string(*max_word_len));
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive");
  try {
    tolerances.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

namespace {

template <typename T>
T read(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_tolerances(const nlohmann::json& j, ToleranceConfig& t) {
  if (!j.is_object()) throw ConfigError("config key 'tolerances' must be an object");
  for (const auto& [key, value] : j.items()) {
    double* slot = nullptr;
    if (key == "structural") slot = &t.structural;
    else if (key == "rank") slot = &t.rank;
    else if (key == "fd_step") slot = &t.fd_step;
    else if (key == "fd") slot = &t.fd;
    else if (key == "conservation") slot = &t.conservation;
    else if (key == "eigen_gap") slot = &t.eigen_gap;
    else throw ConfigError("unknown tolerance '" + key + "'");
    if (!value.is_number()) throw ConfigError("tolerance '" + key + "' must be a number");
    *slot = value.get<double>();
  }
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "n") base.n = read<int>(j, "n");
    else if (key == "seed") base.seed = read<std::uint64_t>(j, "seed");
    else if (key == "samples") base.samples = read<int>(j, "samples");
    else if (key == "max_word_len") base.max_word_len = read<int>(j, "max_word_len");
    else if (key == "t_max") base.t_max = read<double>(j, "t_max");
    else if (key == "out" || key == "output_path") base.output_path = value.get<std::string>();
    else if (key == "tolerances") read_tolerances(value, base.tolerances);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return base;
}

}  // namespace redint
