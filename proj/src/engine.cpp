#include "webos/engine.hpp"

#include <algorithm>

#include "webos/printer.hpp"

namespace webos {

Policy Policy::random(std::uint64_t seed) {
  Policy p;
  p.kind = Kind::Random;
  p.seed = seed;
  p.rng.seed(seed);
  return p;
}

std::string trace_line(const TraceEvent& ev) {
  std::string s = "step=" + std::to_string(ev.step) + " rule=" + rule_name(ev.rule);
  s += " focus=";
  for (std::size_t i = 0; i < ev.focus.size(); ++i) s += (i ? "," : "") + ev.focus[i];
  if (!ev.fresh.empty()) {
    s += " fresh=";
    for (std::size_t i = 0; i < ev.fresh.size(); ++i) s += (i ? "," : "") + ev.fresh[i];
  }
  if (!ev.note.empty()) s += " note=" + ev.note;
  return s;
}

namespace {

std::set<Name> used_names(const Network& n) {
  std::set<Name> out;
  for (const auto& it : n.items) {
    all_names(it.url, out);
    if (it.res.is_value)
      all_names(*it.res.val, out);
    else
      all_names(*it.res.prog, out);
  }
  return out;
}

}  // namespace

Network normalize_network(Network n, long& counter, bool gc) {
  auto fresh = [&counter]() { return Name("_g") + std::to_string(counter++); };

  // rename user-named restrictions into the generated namespace
  for (auto& r : n.restricted) {
    if (is_generated_name(r)) continue;
    Name f = fresh();
    auto rep = v_name(f);
    for (auto& it : n.items) {
      if (it.res.is_value)
        it.res.val = subst_name(it.res.val, r, rep, fresh);
      else
        it.res.prog = subst_name(it.res.prog, r, rep, fresh);
    }
    r = f;
  }

  // hoist leading restrictions out of programs, renaming into the generated
  // namespace so scope extrusion is always permitted
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& it : n.items) {
      if (it.res.is_value) continue;
      while (it.res.prog->kind == Term::Kind::Restrict) {
        Name f = fresh();
        it.res.prog = subst_name(it.res.prog->cont, it.res.prog->bind, v_name(f), fresh);
        n.restricted.push_back(f);
        changed = true;
      }
    }
  }

  if (gc) {
    auto dead = [](const Located& it) {
      if (it.res.is_value || it.res.prog->kind != Term::Kind::Nil) return false;
      for (const auto& s : it.url.base.segments)
        if (is_generated_name(s)) return true;
      return it.url.base.var_root && is_generated_name(it.url.base.root_var);
    };
    n.items.erase(std::remove_if(n.items.begin(), n.items.end(), dead), n.items.end());
  }

  // generated names are engine-owned: any that escaped (e.g. a dead-channel
  // sentinel from substituting a value into a name position) stays bound
  {
    std::set<Name> bound(n.restricted.begin(), n.restricted.end());
    for (const Name& f : free_names(n))
      if (is_generated_name(f) && !bound.count(f)) n.restricted.push_back(f);
  }

  // drop binders that no longer bind anything
  std::set<Name> used = used_names(n);
  n.restricted.erase(
      std::remove_if(n.restricted.begin(), n.restricted.end(),
                     [&used](const Name& r) { return !used.count(r); }),
      n.restricted.end());
  std::sort(n.restricted.begin(), n.restricted.end());
  n.restricted.erase(std::unique(n.restricted.begin(), n.restricted.end()),
                     n.restricted.end());

  std::stable_sort(n.items.begin(), n.items.end(),
                   [](const Located& a, const Located& b) {
                     std::string ka = print(a.url), kb = print(b.url);
                     if (ka != kb) return ka < kb;
                     return print(a.res) < print(b.res);
                   });
  return n;
}

Engine::Engine(Network initial, Config cfg) : net_(std::move(initial)), cfg_(std::move(cfg)) {
  normalize();
}

Name Engine::fresh() { return Name("_g") + std::to_string(fresh_counter_++); }

void Engine::normalize() { net_ = normalize_network(std::move(net_), fresh_counter_, cfg_.gc); }

std::vector<Redex> Engine::enumerate() const {
  std::vector<Redex> out;
  for (int pos = 0; pos < static_cast<int>(net_.items.size()); ++pos) {
    auto rs = redexes_at(net_, cfg_, pos);
    if (rs.empty() && command_head(net_, pos)) rs.push_back({RuleId::CmdErr, pos});
    out.insert(out.end(), rs.begin(), rs.end());
  }
  std::sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    if (a.rule != b.rule) return static_cast<int>(a.rule) < static_cast<int>(b.rule);
    return a.pos2 < b.pos2;
  });
  return out;
}

std::optional<TraceEvent> Engine::step(Policy& policy) {
  auto rs = enumerate();
  if (rs.empty()) return std::nullopt;

  std::size_t pick = 0;
  switch (policy.kind) {
    case Policy::Kind::Det:
      break;
    case Policy::Kind::Random: {
      std::uniform_int_distribution<std::size_t> d(0, rs.size() - 1);
      pick = d(policy.rng);
      break;
    }
    case Policy::Kind::Scripted: {
      if (policy.script_pos >= policy.script.size())
        throw ScriptError("script exhausted at step " + std::to_string(step_));
      const auto& [want_rule, want_focus] = policy.script[policy.script_pos];
      bool found = false;
      for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rule_name(rs[i].rule) != want_rule) continue;
        auto focus = focus_urls(net_, rs[i]);
        bool all = true;
        for (const auto& w : want_focus)
          if (std::find(focus.begin(), focus.end(), w) == focus.end()) all = false;
        if (!all) continue;
        pick = i;
        found = true;
        break;
      }
      if (!found)
        throw ScriptError("no enabled redex matches script entry " +
                          std::to_string(policy.script_pos) + " (" + want_rule + ")");
      ++policy.script_pos;
      break;
    }
  }

  const Redex& r = rs[pick];
  TraceEvent ev;
  ev.step = step_;
  ev.rule = r.rule;
  ev.focus = focus_urls(net_, r);
  auto fr = [this]() { return fresh(); };
  ApplyResult res = apply(net_, cfg_, r, fr);
  ev.fresh = res.fresh;
  ev.note = res.note;
  net_ = std::move(res.net);
  ++step_;
  normalize();
  return ev;
}

std::vector<std::string> Engine::stuck_resources() const {
  std::vector<bool> active(net_.items.size(), false);
  for (const auto& r : enumerate()) {
    active[static_cast<std::size_t>(r.pos)] = true;
    if (r.pos2 >= 0) active[static_cast<std::size_t>(r.pos2)] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < net_.items.size(); ++i) {
    const Located& it = net_.items[i];
    if (it.res.is_value || it.res.prog->kind == Term::Kind::Nil || active[i]) continue;
    out.push_back(url_id(it.url));
  }
  return out;
}

Engine::RunResult Engine::run(Policy policy, int max_steps) {
  RunResult rr;
  for (int i = 0; i < max_steps; ++i) {
    auto ev = step(policy);
    if (!ev) {
      rr.terminal = true;
      break;
    }
    rr.trace.push_back(*ev);
  }
  if (!rr.terminal && enumerate().empty()) rr.terminal = true;
  rr.stuck = stuck_resources();
  return rr;
}

}  // namespace webos
