// weboscalc: run middleware-calculus scenarios, print traces, and check
// golden files.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "webos/parser.hpp"
#include "webos/printer.hpp"
#include "webos/scenario.hpp"

using namespace webos;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitLoad = 2;
constexpr int kExitLimit = 3;

struct Flags {
  std::string policy;
  int max_steps = -1;
  bool gc = false;
  std::string format = "text";
};

// --policy=det|rand:<seed>|script:<file>
Policy parse_policy(const std::string& s) {
  if (s == "det") return Policy::det();
  if (s.rfind("rand:", 0) == 0) return Policy::random(std::stoull(s.substr(5)));
  if (s.rfind("script:", 0) == 0) {
    std::ifstream f(s.substr(7));
    if (!f) throw LoadError("cannot open script file " + s.substr(7));
    Policy p;
    p.kind = Policy::Kind::Scripted;
    std::string line;
    while (std::getline(f, line)) {
      std::istringstream is(line);
      std::string rule;
      if (!(is >> rule)) continue;
      if (rule[0] == '#') continue;
      if (!rule_from_name(rule)) throw LoadError("unknown rule in script: " + rule);
      std::vector<std::string> focus;
      std::string w;
      while (is >> w) focus.push_back(w);
      p.script.emplace_back(rule, std::move(focus));
    }
    return p;
  }
  throw LoadError("bad --policy value: " + s);
}

Scenario load_with(const std::string& path, const Flags& fl) {
  Scenario sc = load_scenario(path);
  if (fl.gc) sc.cfg.gc = true;
  if (!fl.policy.empty()) sc.policy = parse_policy(fl.policy);
  if (fl.max_steps > 0) sc.max_steps = fl.max_steps;
  return sc;
}

nlohmann::json event_json(const TraceEvent& ev) {
  return {{"step", ev.step},
          {"rule", rule_name(ev.rule)},
          {"focus", ev.focus},
          {"fresh", ev.fresh},
          {"note", ev.note}};
}

int do_run(const std::string& path, const Flags& fl) {
  Scenario sc = load_with(path, fl);
  ScenarioResult r = run_scenario(sc);
  std::cout << report_text(sc, r);
  if (r.hit_max_steps) return kExitLimit;
  return r.all_ok ? kExitOk : kExitAssert;
}

int do_trace(const std::string& path, const Flags& fl) {
  Scenario sc = load_with(path, fl);
  ScenarioResult r = run_scenario(sc);
  if (fl.format == "structured") {
    for (const auto& ev : r.run.trace) std::cout << event_json(ev).dump() << "\n";
    nlohmann::json fin = {{"final", print(r.final_net)},
                          {"terminal", r.run.terminal},
                          {"stuck", r.run.stuck}};
    std::cout << fin.dump() << "\n";
  } else {
    for (const auto& ev : r.run.trace) std::cout << trace_line(ev) << "\n";
    std::cout << "-- final --\n" << print(r.final_net) << "\n";
  }
  if (r.hit_max_steps) return kExitLimit;
  return kExitOk;
}

int do_golden(const std::string& path, const std::string& golden, bool update,
              const Flags& fl) {
  Scenario sc = load_with(path, fl);
  ScenarioResult r = run_scenario(sc);
  std::string text = golden_text(r);
  if (update) {
    std::ofstream out(golden, std::ios::binary);
    out << text;
    std::cout << "updated " << golden << "\n";
    return kExitOk;
  }
  std::ifstream in(golden, std::ios::binary);
  if (!in) {
    std::cerr << "missing golden file " << golden << "\n";
    return kExitAssert;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  if (ss.str() == text) return kExitOk;
  // report the first diverging line
  std::istringstream a(ss.str()), b(text);
  std::string la, lb;
  int n = 0;
  while (true) {
    ++n;
    bool ga = static_cast<bool>(std::getline(a, la));
    bool gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) break;
    if (la != lb || ga != gb) {
      std::cerr << "golden mismatch at line " << n << ":\n  golden: "
                << (ga ? la : "<eof>") << "\n  actual: " << (gb ? lb : "<eof>") << "\n";
      break;
    }
  }
  return kExitAssert;
}

int do_check(const std::string& path) {
  Scenario sc = load_scenario(path);
  std::cout << "ok: " << sc.name << " (" << sc.initial.items.size() << " resources, "
            << sc.asserts.size() << " assertions)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpreter for a RESTful middleware process calculus"};
  app.require_subcommand(1);

  Flags fl;
  std::string file, golden;
  bool update = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("file", file, "scenario file")->required();
    c->add_option("--policy", fl.policy, "det | rand:<seed> | script:<file>");
    c->add_option("--max-steps", fl.max_steps, "step limit override");
    c->add_flag("--gc", fl.gc, "collect inert generated resources");
  };

  CLI::App* run = app.add_subcommand("run", "run a scenario and check its assertions");
  add_common(run);
  CLI::App* trace = app.add_subcommand("trace", "print the event trace and final net");
  add_common(trace);
  trace->add_option("--format", fl.format, "text | structured")
      ->check(CLI::IsMember({"text", "structured"}));
  CLI::App* gold = app.add_subcommand("golden", "compare against a golden file");
  add_common(gold);
  gold->add_option("golden", golden, "golden file")->required();
  gold->add_flag("--update", update, "rewrite the golden file");
  CLI::App* check = app.add_subcommand("check", "parse and validate only");
  check->add_option("file", file, "scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(file, fl);
    if (trace->parsed()) return do_trace(file, fl);
    if (gold->parsed()) return do_golden(file, golden, update, fl);
    if (check->parsed()) return do_check(file);
  } catch (const LoadError& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitLoad;
  } catch (const ScriptError& e) {
    std::cerr << "script error: " << e.what() << "\n";
    return kExitLimit;
  }
  return kExitLoad;
}
