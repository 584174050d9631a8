#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace prodsum {

using json = nlohmann::ordered_json;

/// Outcome of a verification procedure. A failing report carries the first
/// counterexample found; `checks` counts individual law instances evaluated.
struct Report {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::string mode;  // "exhaustive", "sampled", "symbolic", ...
  std::string counterexample;
  std::vector<std::string> notes;
  json data = json::object();

  void fail(std::string witness) {
    if (passed) counterexample = std::move(witness);
    passed = false;
  }

  void absorb(const Report& sub) {
    checks += sub.checks;
    if (!sub.passed) fail(sub.name + ": " + sub.counterexample);
  }

  json to_json() const {
    json j;
    j["name"] = name;
    j["passed"] = passed;
    j["checks"] = checks;
    if (!mode.empty()) j["mode"] = mode;
    if (!passed) j["counterexample"] = counterexample;
    if (!notes.empty()) j["notes"] = notes;
    if (!data.empty()) j["data"] = data;
    return j;
  }
};

/// Outcome of a product-versus-coproduct question with its supporting data.
struct Verdict {
  std::string mode;    // "finite" or "symbolic"
  std::string result;  // ISO, NOT-ISO, ISO-CONSISTENT
  json evidence;       // certificate or trace
  Report report;

  json to_json() const {
    json j;
    j["mode"] = mode;
    j["result"] = result;
    j[result == "NOT-ISO" && mode == "symbolic" ? "trace" : "certificate"] = evidence;
    return j;
  }
};

}  // namespace prodsum
