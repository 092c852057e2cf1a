#include "reference.hpp"

#include <algorithm>

#include "webos/eval.hpp"

namespace webos::ref {

namespace {

bool excluded(const std::vector<int>& ex, int i) {
  return std::find(ex.begin(), ex.end(), i) != ex.end();
}

// concrete absolute target of a command, if any
std::optional<Url> target_of(const Term& t) {
  if (t.target.base != RefBase::Abs || t.target.url.base.var_root) return std::nullopt;
  return t.target.url;
}

// every live url id: stored urls, their collection prefixes
bool stored_live(const Network& net, const std::vector<int>& ex, const Url& u) {
  std::string want = url_id(u);
  for (int i = 0; i < static_cast<int>(net.items.size()); ++i) {
    if (excluded(ex, i) || net.items[i].url.base.var_root) continue;
    const UrlBase& b = net.items[i].url.base;
    std::string id = "//" + b.loc.host + "/" + b.loc.ctx;
    if (id == want) return true;
    for (const auto& s : abs_segments(b)) {
      id += "/" + s;
      if (id == want) return true;
    }
  }
  return false;
}

struct Comp {
  int pos;
  Location loc;
  const Value* val;
};

// deployed components sitting at l/exec/<m>/ collections
std::vector<Comp> components(const Network& net) {
  std::vector<Comp> out;
  for (int i = 0; i < static_cast<int>(net.items.size()); ++i) {
    const Located& it = net.items[i];
    if (!it.res.is_value || it.res.val->kind != Value::Kind::Deployed) continue;
    const UrlBase& b = it.url.base;
    if (b.var_root || b.extra != ExtraKind::Exec || b.segments.size() != 1 ||
        !it.url.collection)
      continue;
    out.push_back({i, b.loc, it.res.val.get()});
  }
  return out;
}

bool live(const Network& net, const std::vector<int>& ex, const Url& u) {
  if (stored_live(net, ex, u)) return true;
  auto path = root_path(u);
  if (!path) return false;
  for (const auto& c : components(net)) {
    if (excluded(ex, c.pos) || c.loc != u.base.loc) continue;
    if (c.val->pattern.wildcard && pat_member(*path, c.val->pattern)) return true;
  }
  return false;
}

bool ref_match(const Network& net, const std::vector<int>& ex, const Url& target,
               const Pattern& pat) {
  auto path = root_path(target);
  if (!path || !pat_member(*path, pat)) return false;
  if (!pat.wildcard && !live(net, ex, target)) return false;
  for (const auto& c : components(net)) {
    if (excluded(ex, c.pos) || c.loc != target.base.loc) continue;
    if (pat_member(*path, c.val->pattern) && pat_order(c.val->pattern, pat) > 0)
      return false;
  }
  return true;
}

std::optional<OpName> user_op(const ExprPtr& arg) {
  if (!arg) return std::nullopt;
  if (arg->kind == Expr::Kind::MkPair && !arg->op.builtin) return arg->op;
  if (arg->kind == Expr::Kind::Val && arg->val->kind == Value::Kind::OpPair &&
      !arg->val->op.builtin)
    return arg->val->op;
  return std::nullopt;
}

// footer condition: internal, or no maximal-pattern component at the target
// defines the command
bool defaults_allowed(const Network& net, int pos, const Term& t, const Url& target) {
  if (t.deleg.internal) return true;
  auto path = root_path(target);
  if (!path) return true;
  std::optional<Pattern> best;
  for (const auto& c : components(net)) {
    if (c.pos == pos || c.loc != target.base.loc) continue;
    if (!pat_member(*path, c.val->pattern)) continue;
    if (!best || pat_order(c.val->pattern, *best) > 0) best = c.val->pattern;
  }
  if (!best) return true;
  for (const auto& c : components(net)) {
    if (c.pos == pos || c.loc != target.base.loc) continue;
    if (pat_order(c.val->pattern, *best) != 0 || !pat_member(*path, c.val->pattern))
      continue;
    if (c.val->decls->find(OpName::of_cmd(t.cmd))) return false;
  }
  return true;
}

void commands(const Network& net, const Config& cfg, int pos, const Term& t,
              std::vector<Redex>& out) {
  if (t.cmd == Cmd::Lexec) {
    auto u = target_of(t);
    if (u && u->base.extra == ExtraKind::None && !u->base.segments.empty() &&
        !u->collection)
      out.push_back({RuleId::Lexec, pos});
    return;
  }

  auto u = target_of(t);

  // capture
  if (!t.deleg.internal && u && root_path(*u)) {
    bool arg_ok = true;
    if (t.cmd == Cmd::Put || t.cmd == Cmd::Rexec)
      arg_ok = t.arg && eval_expr(*t.arg, cfg).has_value();
    auto uop = t.cmd == Cmd::Rexec && arg_ok ? user_op(t.arg) : std::nullopt;
    for (const auto& c : components(net)) {
      if (c.pos == pos || c.loc != u->base.loc) continue;
      if (!ref_match(net, {pos, c.pos}, *u, c.val->pattern)) continue;
      if (arg_ok && c.val->decls->find(OpName::of_cmd(t.cmd)))
        out.push_back({RuleId::CaptureCom, pos, c.pos});
      if (uop && !c.val->decls->find(OpName::of_cmd(Cmd::Rexec)) &&
          c.val->decls->find(*uop) && (!u->collection || cfg.collection_op_dispatch))
        out.push_back({RuleId::CaptureUserop, pos, c.pos});
    }
  }

  if (!u || !defaults_allowed(net, pos, t, *u)) return;

  auto value_at = [&](const Url& at) {
    for (int j = 0; j < static_cast<int>(net.items.size()); ++j)
      if (j != pos && net.items[j].res.is_value && url_id(net.items[j].url) == url_id(at))
        return j;
    return -1;
  };

  switch (t.cmd) {
    case Cmd::Put: {
      if (!t.arg || !eval_expr(*t.arg, cfg)) return;
      int at = value_at(*u);
      if (at >= 0) {
        out.push_back({RuleId::PutOverwrite, pos, at});
        return;
      }
      for (int j = 0; j < static_cast<int>(net.items.size()); ++j)
        if (j != pos && url_id(net.items[j].url) == url_id(*u)) return;
      auto dir = url_dir(*u);
      if (dir && (stored_live(net, {pos}, *dir) || in_int_d(*dir)))
        out.push_back({RuleId::PutCreate, pos});
      return;
    }
    case Cmd::Get: {
      int at = value_at(*u);
      if (at >= 0) out.push_back({RuleId::Get, pos, at});
      return;
    }
    case Cmd::Delete: {
      int at = value_at(*u);
      if (at < 0) return;
      // no strictly longer live url below the target
      std::string id = url_id(*u);
      for (int j = 0; j < static_cast<int>(net.items.size()); ++j) {
        if (j == pos || j == at || net.items[j].url.base.var_root) continue;
        std::string jd = url_id(net.items[j].url);
        if (jd.size() > id.size() && jd.compare(0, id.size(), id) == 0 &&
            jd[id.size()] == '/')
          return;
      }
      out.push_back({RuleId::Delete, pos, at});
      return;
    }
    case Cmd::Rexec: {
      if (!u->collection || !t.arg || !eval_expr(*t.arg, cfg)) return;
      for (const auto& r : out)
        if (r.rule == RuleId::CaptureUserop && r.pos == pos) return;
      if (stored_live(net, {pos}, *u) || in_int_g(*u))
        out.push_back({RuleId::RexecFresh, pos});
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::vector<Redex> enumerate(const Network& net, const Config& cfg) {
  std::vector<Redex> out;
  for (int pos = 0; pos < static_cast<int>(net.items.size()); ++pos) {
    const Located& it = net.items[pos];
    if (it.res.is_value) continue;
    const Term& t = *it.res.prog;
    std::size_t before = out.size();
    switch (t.kind) {
      case Term::Kind::Assign:
        if (t.arg && eval_expr(*t.arg, cfg)) out.push_back({RuleId::Assign, pos});
        break;
      case Term::Kind::If:
        if (auto g = eval_bool(*t.guard, cfg))
          out.push_back({*g ? RuleId::IfT : RuleId::IfF, pos});
        break;
      case Term::Kind::Spawn:
        if (it.url.collection && !it.url.base.var_root)
          out.push_back({RuleId::Spawn, pos});
        break;
      case Term::Kind::Send:
        if (t.arg && eval_expr(*t.arg, cfg))
          for (int j = 0; j < static_cast<int>(net.items.size()); ++j) {
            if (j == pos || net.items[j].res.is_value) continue;
            const Term& r = *net.items[j].res.prog;
            if (r.kind == Term::Kind::Receive && r.bind == t.bind)
              out.push_back({RuleId::Sync, pos, j});
          }
        break;
      case Term::Kind::NewSession:
        if (!t.symbolic)
          out.push_back({t.ses_id.is_ns() ? RuleId::SesNew : RuleId::SesNewNoop, pos});
        break;
      case Term::Kind::DropSession:
        if (!t.symbolic)
          out.push_back({t.ses_id.is_ns() ? RuleId::SesDropNoop : RuleId::SesDrop, pos});
        break;
      case Term::Kind::Command:
        commands(net, cfg, pos, t, out);
        if (out.size() == before) out.push_back({RuleId::CmdErr, pos});
        break;
      default:
        break;
    }
  }
  std::sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    if (a.rule != b.rule) return static_cast<int>(a.rule) < static_cast<int>(b.rule);
    return a.pos2 < b.pos2;
  });
  return out;
}

}  // namespace webos::ref
