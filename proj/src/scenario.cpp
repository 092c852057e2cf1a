#include "webos/scenario.hpp"

#include <fstream>
#include <sstream>

#include "webos/parser.hpp"
#include "webos/printer.hpp"

namespace webos {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

[[noreturn]] void bad(const std::string& what, int line, const std::string& msg) {
  throw LoadError(what + ":" + std::to_string(line) + ": " + msg);
}

// epsilon delegation entries only make sense inside a component, where the
// capture resolves them; reject them in top-level programs
bool has_self_entry(const Deleg& d) {
  for (const auto& e : d.entries)
    if (e.self) return true;
  return false;
}

bool toplevel_self_deleg(const TermPtr& t) {
  if (!t) return false;
  if ((t->kind == Term::Kind::Command || t->kind == Term::Kind::Send) &&
      has_self_entry(t->deleg))
    return true;
  return toplevel_self_deleg(t->child) || toplevel_self_deleg(t->cont);
}

void validate(const Scenario& sc, const std::string& what) {
  std::set<Name> used;
  for (const auto& it : sc.initial.items) {
    all_names(it.url, used);
    if (it.res.is_value)
      all_names(*it.res.val, used);
    else
      all_names(*it.res.prog, used);
  }
  for (const auto& r : sc.initial.restricted) used.insert(r);
  for (const auto& n : used)
    if (is_generated_name(n))
      throw LoadError(what + ": name '" + n + "' is in the reserved generated namespace");
  for (const auto& it : sc.initial.items)
    if (!it.res.is_value && toplevel_self_deleg(it.res.prog))
      throw LoadError(what + ": epsilon delegation entry outside a component");
  for (const auto& [key, to] : sc.cfg.loc_capability)
    if (key.first.host != to.host)
      throw LoadError(what + ": loc capability for " + print(key.first) +
                      " must map to a context on the same host");
  for (const auto& [id, v] : sc.cfg.cond_overrides) {
    (void)v;
    try {
      Url u = parse_url(id + "/");
      if (in_int_g(u))
        throw LoadError(what + ": cond override on " + id + "/ contradicts the forced case");
    } catch (const ParseError&) {
      throw LoadError(what + ": malformed cond url " + id);
    }
  }
}

}  // namespace

Scenario load_scenario_text(const std::string& text, const std::string& what) {
  Scenario sc;
  sc.name = what;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  enum class Sec { None, Config, Net, Policy, Assert };
  Sec sec = Sec::None;
  std::string net_text;
  bool policy_set = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (sec != Sec::Net) {
      if (t.empty() || t[0] == '#') continue;
    }
    if (t == "config:") { sec = Sec::Config; continue; }
    if (t == "net:") { sec = Sec::Net; continue; }
    if (t == "policy:") { sec = Sec::Policy; continue; }
    if (t == "assert:") { sec = Sec::Assert; continue; }
    if (t.rfind("name:", 0) == 0 && sec == Sec::None) {
      sc.name = trim(t.substr(5));
      continue;
    }
    if (t.rfind("maxsteps:", 0) == 0 && sec != Sec::Net) {
      try {
        sc.max_steps = std::stoi(trim(t.substr(9)));
      } catch (...) {
        bad(what, lineno, "bad maxsteps value");
      }
      continue;
    }

    switch (sec) {
      case Sec::None:
        bad(what, lineno, "content outside any section: " + t);
      case Sec::Net:
        net_text += line + "\n";
        break;
      case Sec::Config: {
        auto w = words(t);
        try {
          if (w.size() == 5 && w[0] == "loc" && w[3] == "->") {
            sc.cfg.loc_capability[{parse_location(w[1]), w[2]}] = parse_location(w[4]);
          } else if (w.size() == 3 && w[0] == "cond" &&
                     (w[2] == "true" || w[2] == "false")) {
            sc.cfg.cond_overrides[url_id(parse_url(w[1]))] = w[2] == "true";
          } else if (w.size() == 2 && w[0] == "flag" && w[1] == "collection-op-dispatch") {
            sc.cfg.collection_op_dispatch = true;
          } else if (w.size() == 2 && w[0] == "flag" && w[1] == "gc") {
            sc.cfg.gc = true;
          } else {
            bad(what, lineno, "unrecognized config line: " + t);
          }
        } catch (const ParseError& e) {
          bad(what, lineno, e.what());
        }
        break;
      }
      case Sec::Policy: {
        auto w = words(t);
        if (!policy_set) {
          if (w.size() == 1 && w[0] == "det") {
            sc.policy = Policy::det();
          } else if (w.size() == 2 && w[0] == "rand") {
            sc.policy = Policy::random(std::stoull(w[1]));
          } else if (w.size() == 1 && w[0] == "script") {
            sc.policy.kind = Policy::Kind::Scripted;
          } else {
            bad(what, lineno, "policy must be det, rand <seed>, or script");
          }
          policy_set = true;
        } else if (sc.policy.kind == Policy::Kind::Scripted) {
          if (w.empty() || !rule_from_name(w[0]))
            bad(what, lineno, "script line must start with a rule name");
          sc.policy.script.emplace_back(
              w[0], std::vector<std::string>(w.begin() + 1, w.end()));
        } else {
          bad(what, lineno, "unexpected extra policy line: " + t);
        }
        break;
      }
      case Sec::Assert: {
        auto w = words(t);
        Assertion a;
        a.source = t;
        try {
          if (w.size() >= 4 && w[0] == "resource-at" && w[2] == "=") {
            a.kind = Assertion::Kind::ResourceAt;
            a.url = parse_url(w[1]);
            std::size_t eq = t.find('=');
            a.expected = parse_value(trim(t.substr(eq + 1)));
          } else if (w.size() == 2 && w[0] == "absent") {
            a.kind = Assertion::Kind::Absent;
            a.url = parse_url(w[1]);
          } else if (w.size() == 1 && w[0] == "terminal") {
            a.kind = Assertion::Kind::Terminal;
          } else if (w.size() == 2 && w[0] == "stuck-count") {
            a.kind = Assertion::Kind::StuckCount;
            a.n = std::stoi(w[1]);
          } else if (w.size() == 2 && (w[0] == "step-count-le" || w[0] == "step-count<=")) {
            a.kind = Assertion::Kind::StepCountLe;
            a.n = std::stoi(w[1]);
          } else if ((w.size() == 2 || w.size() == 4) && w[0] == "trace-contains" &&
                     rule_from_name(w[1])) {
            a.kind = Assertion::Kind::TraceContains;
            a.rule = *rule_from_name(w[1]);
            if (w.size() == 4) {
              if (w[2] != "@") bad(what, lineno, "expected '@' before focus url");
              a.focus = w[3];
            }
          } else {
            bad(what, lineno, "unrecognized assertion: " + t);
          }
        } catch (const ParseError& e) {
          bad(what, lineno, e.what());
        } catch (const LoadError&) {
          throw;
        } catch (...) {
          bad(what, lineno, "malformed assertion: " + t);
        }
        sc.asserts.push_back(std::move(a));
        break;
      }
    }
  }

  try {
    sc.initial = parse_network(net_text);
  } catch (const ParseError& e) {
    throw LoadError(what + ": net: " + e.what());
  }
  validate(sc, what);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LoadError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string stem = path;
  if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
  if (auto p = stem.find_last_of('.'); p != std::string::npos) stem = stem.substr(0, p);
  return load_scenario_text(ss.str(), stem);
}

namespace {

AssertOutcome check_one(const Assertion& a, const Engine::RunResult& rr,
                        const Network& net, bool hit_max) {
  AssertOutcome o;
  switch (a.kind) {
    case Assertion::Kind::ResourceAt: {
      std::string id = url_id(a.url);
      for (const auto& it : net.items) {
        if (url_id(it.url) != id) continue;
        if (!it.res.is_value) {
          o.what = a.source + ": resource at " + id + " is a program, not a value";
          return o;
        }
        if (print(*it.res.val) == print(*a.expected)) {
          o.ok = true;
          o.what = a.source;
          return o;
        }
        o.what = a.source + ": value mismatch: expected " + print(*a.expected) +
                 ", found " + print(*it.res.val);
        return o;
      }
      o.what = a.source + ": no resource at " + id;
      return o;
    }
    case Assertion::Kind::Absent: {
      std::string id = url_id(a.url);
      for (const auto& it : net.items) {
        if (url_id(it.url) == id) {
          o.what = a.source + ": resource present at " + id;
          return o;
        }
      }
      o.ok = true;
      o.what = a.source;
      return o;
    }
    case Assertion::Kind::Terminal:
      o.ok = rr.terminal && !hit_max;
      o.what = o.ok ? a.source : a.source + ": max-steps-exceeded";
      return o;
    case Assertion::Kind::StuckCount:
      o.ok = static_cast<int>(rr.stuck.size()) == a.n;
      o.what = o.ok ? a.source
                    : a.source + ": stuck count is " + std::to_string(rr.stuck.size());
      return o;
    case Assertion::Kind::StepCountLe:
      o.ok = static_cast<int>(rr.trace.size()) <= a.n;
      o.what = o.ok ? a.source
                    : a.source + ": took " + std::to_string(rr.trace.size()) + " steps";
      return o;
    case Assertion::Kind::TraceContains: {
      // compare focus urls on identity, ignoring a trailing collection marker
      auto norm = [](std::string s) {
        if (s.size() > 2 && s.back() == '/') s.pop_back();
        return s;
      };
      std::string want = norm(a.focus);
      for (const auto& ev : rr.trace) {
        if (ev.rule != a.rule) continue;
        bool hit = a.focus.empty();
        for (const auto& f : ev.focus)
          if (norm(f) == want) hit = true;
        if (hit) {
          o.ok = true;
          o.what = a.source;
          return o;
        }
      }
      o.what = a.source + ": no matching trace event";
      return o;
    }
  }
  return o;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc, const Policy& policy_override,
                            int max_steps_override) {
  ScenarioResult r;
  Engine eng(sc.initial, sc.cfg);
  r.run = eng.run(policy_override, max_steps_override);
  r.final_net = eng.net();
  r.hit_max_steps = !r.run.terminal;
  r.all_ok = true;
  for (const auto& a : sc.asserts) {
    r.outcomes.push_back(check_one(a, r.run, r.final_net, r.hit_max_steps));
    if (!r.outcomes.back().ok) r.all_ok = false;
  }
  return r;
}

ScenarioResult run_scenario(const Scenario& sc) {
  return run_scenario(sc, sc.policy, sc.max_steps);
}

std::string golden_text(const ScenarioResult& r) {
  std::string out;
  for (const auto& ev : r.run.trace) out += trace_line(ev) + "\n";
  out += "-- final --\n";
  out += print(r.final_net);
  out += "\n";
  return out;
}

std::string report_text(const Scenario& sc, const ScenarioResult& r) {
  std::string out;
  out += "scenario " + sc.name + ": " + std::to_string(r.run.trace.size()) + " steps, " +
         (r.hit_max_steps ? "max-steps-exceeded" : "terminal") + "\n";
  for (const auto& u : r.run.stuck) out += "stuck: " + u + "\n";
  for (const auto& o : r.outcomes)
    out += std::string(o.ok ? "pass" : "FAIL") + ": " + o.what + "\n";
  out += "final net:\n" + print(r.final_net) + "\n";
  return out;
}

}  // namespace webos
