// Reduction driver: congruence normalization, redex enumeration in
// canonical order, scheduling policies, freshness supply and tracing.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "webos/rules.hpp"

namespace webos {

struct TraceEvent {
  int step = 0;
  RuleId rule = RuleId::Assign;
  std::vector<std::string> focus;
  std::vector<Name> fresh;
  std::string note;
};

std::string trace_line(const TraceEvent& ev);

struct Policy {
  enum class Kind { Det, Random, Scripted };
  Kind kind = Kind::Det;
  std::uint64_t seed = 0;
  // scripted: per step, rule name + focus urls to select
  std::vector<std::pair<std::string, std::vector<std::string>>> script;

  std::mt19937_64 rng;
  std::size_t script_pos = 0;

  static Policy det() { return {}; }
  static Policy random(std::uint64_t seed);
};

struct ScriptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Engine {
 public:
  // Renames scenario restrictions into the generated namespace and brings
  // the net into canonical form.
  Engine(Network initial, Config cfg);

  const Network& net() const { return net_; }
  const Config& config() const { return cfg_; }
  int steps() const { return step_; }

  Name fresh();

  // Redexes in canonical order; CmdErr redexes only for commands with no
  // other enabled redex.
  std::vector<Redex> enumerate() const;

  // nullopt when terminal.
  std::optional<TraceEvent> step(Policy& policy);

  struct RunResult {
    bool terminal = false;
    std::vector<TraceEvent> trace;
    std::vector<std::string> stuck;  // urls of stuck non-nil programs
  };
  RunResult run(Policy policy, int max_steps);

  void normalize();

 private:
  Network net_;
  Config cfg_;
  long fresh_counter_ = 0;
  int step_ = 0;

  std::vector<std::string> stuck_resources() const;
};

// Canonical form of a free-standing net (hoist restrictions, flatten, sort);
// binder renames draw from `counter` in the _g namespace.
Network normalize_network(Network n, long& counter, bool gc);

}  // namespace webos
