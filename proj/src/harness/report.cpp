#include "redint/harness.hpp"

#include <cmath>

namespace redint {

void ExperimentReport::observe(const std::string& name, double value) { observed[name] = value; }

void ExperimentReport::observe_int(const std::string& name, long long value) {
  observed[name] = value;
}

void ExperimentReport::observe_bool(const std::string& name, bool value) { observed[name] = value; }

void ExperimentReport::expect(const std::string& name, const std::string& relation, double value,
                              std::string provenance) {
  if (relation != "==" && relation != "<=" && relation != ">=") {
    throw Error("expect: unknown relation '" + relation + "'");
  }
  expected.emplace_back(name, ExpectedValue{relation, value, std::move(provenance)});
}

bool ExperimentReport::evaluate() {
  pass = true;
  for (const auto& [name, e] : expected) {
    if (!observed.contains(name)) {
      pass = false;
      continue;
    }
    const auto& o = observed[name];
    double v = 0.0;
    if (o.is_boolean()) v = o.get<bool>() ? 1.0 : 0.0;
    else if (o.is_number()) v = o.get<double>();
    else {
      pass = false;
      continue;
    }
    bool ok = false;
    if (std::isnan(v)) ok = false;
    else if (e.relation == "==") ok = v == e.value;
    else if (e.relation == "<=") ok = v <= e.value;
    else ok = v >= e.value;
    pass = pass && ok;
  }
  return pass;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = check_name;
  j["n"] = n;
  j["seed"] = seed;
  j["samples"] = samples;
  j["pass"] = pass;
  j["observed"] = observed;
  nlohmann::ordered_json exp = nlohmann::ordered_json::object();
  for (const auto& [name, e] : expected) {
    exp[name] = {{"relation", e.relation}, {"value", e.value}, {"provenance", e.provenance}};
  }
  j["expected"] = exp;
  if (!details.empty()) j["details"] = details;
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

}  // namespace redint
