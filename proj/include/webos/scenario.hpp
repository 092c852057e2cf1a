// Scenario files: config + initial net + policy + assertions, and the
// checks run against a finished engine state.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "webos/engine.hpp"

namespace webos {

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Assertion {
  enum class Kind { ResourceAt, Absent, Terminal, StuckCount, StepCountLe, TraceContains };
  Kind kind = Kind::Terminal;
  Url url;
  ValuePtr expected;  // ResourceAt
  int n = 0;          // StuckCount / StepCountLe
  RuleId rule = RuleId::Assign;  // TraceContains
  std::string focus;             // TraceContains: url that must appear in focus
  std::string source;            // original line, for reports
};

struct Scenario {
  std::string name;
  Config cfg;
  Network initial;
  Policy policy;
  int max_steps = 10000;
  std::vector<Assertion> asserts;
};

Scenario load_scenario(const std::string& path);
Scenario load_scenario_text(const std::string& text, const std::string& what = "<text>");

struct AssertOutcome {
  bool ok = false;
  std::string what;
};

struct ScenarioResult {
  Engine::RunResult run;
  Network final_net;
  std::vector<AssertOutcome> outcomes;
  bool all_ok = false;
  bool hit_max_steps = false;
};

ScenarioResult run_scenario(const Scenario& sc);
ScenarioResult run_scenario(const Scenario& sc, const Policy& policy_override, int max_steps_override);

// Canonical golden content: one trace line per event, then the final net.
std::string golden_text(const ScenarioResult& r);

std::string report_text(const Scenario& sc, const ScenarioResult& r);

}  // namespace webos
