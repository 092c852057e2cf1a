#include "webos/rules.hpp"

#include <algorithm>

#include "webos/eval.hpp"
#include "webos/printer.hpp"

namespace webos {

const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::Assign: return "ASSIGN";
    case RuleId::Sync: return "SYNC";
    case RuleId::Spawn: return "SPAWN";
    case RuleId::IfT: return "IF-T";
    case RuleId::IfF: return "IF-F";
    case RuleId::CmdErr: return "CMD-ERR";
    case RuleId::PutOverwrite: return "PUT-OVERWRITE";
    case RuleId::PutCreate: return "PUT-CREATE";
    case RuleId::Get: return "GET";
    case RuleId::Delete: return "DELETE";
    case RuleId::RexecFresh: return "REXEC-FRESH";
    case RuleId::CaptureCom: return "CAPTURE-COM";
    case RuleId::CaptureUserop: return "CAPTURE-USEROP";
    case RuleId::SesNewNoop: return "SES-NEW-NOOP";
    case RuleId::SesNew: return "SES-NEW";
    case RuleId::SesDropNoop: return "SES-DROP-NOOP";
    case RuleId::SesDrop: return "SES-DROP";
    case RuleId::Lexec: return "LEXEC";
  }
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& s) {
  static const RuleId all[] = {
      RuleId::Assign, RuleId::Sync, RuleId::Spawn, RuleId::IfT, RuleId::IfF,
      RuleId::CmdErr, RuleId::PutOverwrite, RuleId::PutCreate, RuleId::Get,
      RuleId::Delete, RuleId::RexecFresh, RuleId::CaptureCom, RuleId::CaptureUserop,
      RuleId::SesNewNoop, RuleId::SesNew, RuleId::SesDropNoop, RuleId::SesDrop,
      RuleId::Lexec};
  for (RuleId r : all)
    if (s == rule_name(r)) return r;
  return std::nullopt;
}

namespace {

Url url_make(const Location& l, ExtraKind extra, std::optional<SessionId> ses,
             std::vector<Name> segs, bool coll) {
  Url u;
  u.base.loc = l;
  u.base.extra = extra;
  u.base.ses = std::move(ses);
  u.base.segments = std::move(segs);
  u.collection = coll;
  return u;
}

Url url_var(const Name& root, ExtraKind extra, std::vector<Name> segs, bool coll) {
  Url u;
  u.base.var_root = true;
  u.base.root_var = root;
  u.base.extra = extra;
  u.base.segments = std::move(segs);
  u.collection = coll;
  return u;
}

Ref ref_abs(Url u) {
  Ref r;
  r.base = RefBase::Abs;
  r.url = std::move(u);
  return r;
}

// Resolved absolute target of a command head, if it has one.
std::optional<Url> cmd_target(const Term& t) {
  if (t.target.base != RefBase::Abs || t.target.url.base.var_root) return std::nullopt;
  return t.target.url;
}

const Term* head(const Network& net, int pos) {
  const Located& it = net.items[pos];
  if (it.res.is_value) return nullptr;
  return it.res.prog.get();
}

// User operation named by a rexec argument of the form op<e>.
std::optional<OpName> userop_of(const ExprPtr& arg) {
  if (!arg) return std::nullopt;
  if (arg->kind == Expr::Kind::MkPair && !arg->op.builtin) return arg->op;
  if (arg->kind == Expr::Kind::Val && arg->val->kind == Value::Kind::OpPair &&
      !arg->val->op.builtin)
    return arg->val->op;
  return std::nullopt;
}

ExprPtr userop_payload(const ExprPtr& arg) {
  if (arg->kind == Expr::Kind::MkPair) return arg->a;
  return e_val(arg->val->payload);
}

// Components whose declaration contains `op`, among those at location l,
// holding the maximum pattern matching `path`.
bool maxpat_owner_defines(const Network& net, const std::vector<int>& exclude,
                          const Location& l, const RelPath& path, const OpName& op) {
  std::optional<Pattern> best;
  for (const auto& dp : pats(net)) {
    if (std::find(exclude.begin(), exclude.end(), dp.pos) != exclude.end()) continue;
    if (dp.loc != l || !pat_member(path, dp.pat)) continue;
    if (!best || pat_order(dp.pat, *best) > 0) best = dp.pat;
  }
  if (!best) return false;
  for (const auto& dp : pats(net)) {
    if (std::find(exclude.begin(), exclude.end(), dp.pos) != exclude.end()) continue;
    if (dp.loc != l || pat_order(dp.pat, *best) != 0) continue;
    if (net.items[dp.pos].res.val->decls->find(op)) return true;
  }
  return false;
}

// Footer condition of the default command rules: internal commands always
// qualify; otherwise no component holding the maximum matching pattern may
// define the command.
bool default_eligible(const Network& net, int pos, const Term& t, const Url& target) {
  if (t.deleg.internal) return true;
  auto path = root_path(target);
  if (!path) return true;
  return !maxpat_owner_defines(net, {pos}, target.base.loc, *path,
                               OpName::of_cmd(t.cmd));
}

int find_value_at(const Network& net, int skip, const Url& u) {
  std::string id = url_id(u);
  for (int i = 0; i < static_cast<int>(net.items.size()); ++i) {
    if (i == skip) continue;
    if (net.items[i].res.is_value && url_id(net.items[i].url) == id) return i;
  }
  return -1;
}

bool id_occupied(const Network& net, int skip, const Url& u) {
  std::string id = url_id(u);
  for (int i = 0; i < static_cast<int>(net.items.size()); ++i) {
    if (i == skip) continue;
    if (url_id(net.items[i].url) == id) return true;
  }
  return false;
}

bool lexec_shape(const Url& u) {
  return u.base.extra == ExtraKind::None && !u.base.segments.empty() && !u.collection;
}

void capture_redexes(const Network& net, const Config& cfg, int pos, const Term& t,
                     std::vector<Redex>& out) {
  if (t.deleg.internal) return;
  auto target = cmd_target(t);
  if (!target) return;
  auto path = root_path(*target);
  if (!path) return;

  bool arg_ok = true;
  if (t.cmd == Cmd::Put || t.cmd == Cmd::Rexec)
    arg_ok = t.arg && eval_expr(*t.arg, cfg).has_value();
  std::optional<OpName> uop;
  if (t.cmd == Cmd::Rexec && arg_ok) uop = userop_of(t.arg);

  for (const auto& dp : pats(net)) {
    if (dp.pos == pos || dp.loc != target->base.loc) continue;
    const DeclPtr& D = net.items[dp.pos].res.val->decls;
    if (!match(*target, dp.pat, net, {pos, dp.pos})) continue;
    if (arg_ok && D->find(OpName::of_cmd(t.cmd)))
      out.push_back({RuleId::CaptureCom, pos, dp.pos});
    if (uop && !D->find(OpName::of_cmd(Cmd::Rexec)) && D->find(*uop) &&
        (!target->collection || cfg.collection_op_dispatch))
      out.push_back({RuleId::CaptureUserop, pos, dp.pos});
  }
}

void command_redexes(const Network& net, const Config& cfg, int pos, const Term& t,
                     std::vector<Redex>& out) {
  if (t.cmd == Cmd::Lexec) {
    if (auto target = cmd_target(t); target && lexec_shape(*target))
      out.push_back({RuleId::Lexec, pos});
    return;
  }

  capture_redexes(net, cfg, pos, t, out);

  auto target = cmd_target(t);
  if (!target) return;
  if (!default_eligible(net, pos, t, *target)) return;

  switch (t.cmd) {
    case Cmd::Put: {
      if (!t.arg || !eval_expr(*t.arg, cfg)) return;
      int at = find_value_at(net, pos, *target);
      if (at >= 0) {
        out.push_back({RuleId::PutOverwrite, pos, at});
        return;
      }
      if (id_occupied(net, pos, *target)) return;
      auto dir = url_dir(*target);
      if (!dir) return;
      UrlIndex idx(net, {pos});
      if (idx.contains(*dir) || in_int_d(*dir))
        out.push_back({RuleId::PutCreate, pos});
      return;
    }
    case Cmd::Get: {
      int at = find_value_at(net, pos, *target);
      if (at >= 0) out.push_back({RuleId::Get, pos, at});
      return;
    }
    case Cmd::Delete: {
      int at = find_value_at(net, pos, *target);
      if (at < 0) return;
      UrlIndex idx(net, {pos, at});
      if (!idx.has_strict_extension(*target))
        out.push_back({RuleId::Delete, pos, at});
      return;
    }
    case Cmd::Rexec: {
      if (!target->collection) return;
      if (!t.arg || !eval_expr(*t.arg, cfg)) return;
      // collection-op dispatch, when enabled, replaces the default behavior
      for (const auto& r : out)
        if (r.rule == RuleId::CaptureUserop && r.pos == pos) return;
      UrlIndex idx(net, {pos});
      if (idx.contains(*target) || in_int_g(*target))
        out.push_back({RuleId::RexecFresh, pos});
      return;
    }
    default:
      return;
  }
}

}  // namespace

bool command_head(const Network& net, int pos) {
  const Term* t = head(net, pos);
  return t && t->kind == Term::Kind::Command;
}

std::vector<Redex> redexes_at(const Network& net, const Config& cfg, int pos) {
  std::vector<Redex> out;
  const Term* t = head(net, pos);
  if (!t) return out;
  switch (t->kind) {
    case Term::Kind::Nil:
    case Term::Kind::Receive:
    case Term::Kind::Return:
    case Term::Kind::Restrict:  // normalization hoists these away
      break;
    case Term::Kind::Assign:
      if (t->arg && eval_expr(*t->arg, cfg)) out.push_back({RuleId::Assign, pos});
      break;
    case Term::Kind::Spawn:
      if (net.items[pos].url.collection && !net.items[pos].url.base.var_root)
        out.push_back({RuleId::Spawn, pos});
      break;
    case Term::Kind::If:
      if (auto g = eval_bool(*t->guard, cfg))
        out.push_back({*g ? RuleId::IfT : RuleId::IfF, pos});
      break;
    case Term::Kind::Send: {
      if (!t->arg || !eval_expr(*t->arg, cfg)) break;
      for (int j = 0; j < static_cast<int>(net.items.size()); ++j) {
        if (j == pos) continue;
        const Term* r = head(net, j);
        if (r && r->kind == Term::Kind::Receive && r->bind == t->bind)
          out.push_back({RuleId::Sync, pos, j});
      }
      break;
    }
    case Term::Kind::NewSession:
      if (!t->symbolic)
        out.push_back({t->ses_id.is_ns() ? RuleId::SesNew : RuleId::SesNewNoop, pos});
      break;
    case Term::Kind::DropSession:
      if (!t->symbolic)
        out.push_back({t->ses_id.is_ns() ? RuleId::SesDropNoop : RuleId::SesDrop, pos});
      break;
    case Term::Kind::Command:
      command_redexes(net, cfg, pos, *t, out);
      break;
  }
  return out;
}

namespace {

void set_prog(Network& net, int pos, TermPtr t) {
  net.items[pos].res.is_value = false;
  net.items[pos].res.val = nullptr;
  net.items[pos].res.prog = std::move(t);
}

void add_item(Network& net, Url u, Resource r) {
  net.items.push_back({std::move(u), std::move(r)});
}

Resource res_value(ValuePtr v) {
  Resource r;
  r.is_value = true;
  r.val = std::move(v);
  return r;
}

Resource res_prog(TermPtr t) {
  Resource r;
  r.is_value = false;
  r.prog = std::move(t);
  return r;
}

TermPtr bind_result(const Term& t, const ValuePtr& v, const FreshFn& fresh) {
  return subst_name(t.cont, t.bind, v, fresh);
}

ApplyResult apply_capture(const Network& net, const Config& cfg, const Redex& r,
                          const FreshFn& fresh) {
  ApplyResult out{net, {}, {}};
  const Term& t = *head(net, r.pos);
  const Located& comp = net.items[r.pos2];
  const Value& cv = *comp.res.val;
  Url target = *cmd_target(t);
  Location l = target.base.loc;
  RelPath path = *root_path(target);
  const Pattern& pat = cv.pattern;
  Name m = comp.url.base.segments[0];

  OpName op = r.rule == RuleId::CaptureCom ? OpName::of_cmd(t.cmd) : *userop_of(t.arg);
  const OpDef* def = cv.decls->find(op);

  ValuePtr v = v_ok();
  if (r.rule == RuleId::CaptureCom) {
    if (t.arg) v = *eval_expr(*t.arg, cfg);
  } else {
    v = *eval_expr(*userop_payload(t.arg), cfg);
  }

  Name z = fresh();
  Name inst = fresh();
  out.fresh = {z, inst};

  // annotation carried by the synthesized call: sls extended with l:S
  SlsMap ann = to_sls_map(t.deleg);
  ann[l] = t.ses;
  Deleg ann_d = from_sls_map(ann);

  // theta1: symbol resolution relative to the capture site
  TermPtr q = apply_capture_symbols(def->body, l, pat, path_minus(path, pat));

  // theta2: command resolution against the managed area / codebase
  Url managed = url_make(l, ExtraKind::None, std::nullopt, pat_dir(pat).segs, true);
  Url external = cv.codebase ? *cv.codebase : managed;
  Url deleg_base =
      cv.codebase ? url_make(cv.codebase->base.loc, ExtraKind::None, std::nullopt, {}, true)
                  : url_make(l, ExtraKind::None, std::nullopt, {}, true);
  q = apply_capture_commands(q, managed, external, deleg_base);

  q = replace_return(q, z, ann_d);
  q = subst_name(q, def->param, v, fresh);
  q = apply_delegation(q, ann);

  Url inst_url = url_make(l, ExtraKind::Exec, std::nullopt, {m, inst}, true);
  set_prog(out.net, r.pos, t_receive(z, t.bind, t.cont));
  add_item(out.net, inst_url, res_prog(q));
  out.net.restricted.push_back(z);
  out.net.restricted.push_back(inst);
  out.note = "op=" + print(op) + ",inst=" + url_id(inst_url);
  return out;
}

ApplyResult apply_lexec(const Network& net, const Config& cfg, const Redex& r,
                        const FreshFn& fresh) {
  (void)cfg;
  ApplyResult out{net, {}, {}};
  const Term& t = *head(net, r.pos);
  Url target = *cmd_target(t);
  Location l = target.base.loc;
  Name n = target.base.segments.back();
  Url cbase = *url_dir(target);

  Name a = fresh(), b = fresh(), dir = fresh();
  Name d0 = fresh(), d1 = fresh(), d2 = fresh();
  out.fresh = {a, b, dir};

  SlsMap ann = to_sls_map(t.deleg);
  ann[l] = t.ses;
  Deleg put_sls = from_sls_map(ann);

  // y = <b>/dir/ : the installed component's managed collection
  TermPtr body =
      t_assign(t.bind, e_val(v_ref(ref_abs(url_var(b, ExtraKind::None, {dir}, true)))),
               t.cont);
  body = t_command(d2, Cmd::Put, put_sls,
                   ref_abs(url_var(b, ExtraKind::None, {dir, n}, false)),
                   SessionId::ns(), t.arg, body);
  body = t_command(d1, Cmd::Rexec, Deleg::empty(),
                   ref_abs(url_var(b, ExtraKind::Exec, {}, true)), SessionId::ns(),
                   e_deploy(e_name(a), cbase, Pattern{{dir, n}, false}), body);
  body = t_command(d0, Cmd::Put, Deleg::empty(),
                   ref_abs(url_var(b, ExtraKind::None, {dir}, true)), SessionId::ns(),
                   e_val(v_ok()), body);
  body = t_assign(b, e_loc(l, e_name(a)), body);
  body = t_command(a, Cmd::Get, Deleg::empty(), ref_abs(target), t.ses, nullptr, body);

  set_prog(out.net, r.pos, body);
  out.net.restricted.push_back(dir);
  out.note = "src=" + url_id(target);
  return out;
}

}  // namespace

ApplyResult apply(const Network& net, const Config& cfg, const Redex& r,
                  const FreshFn& fresh) {
  ApplyResult out{net, {}, {}};
  const Term& t = *head(net, r.pos);
  switch (r.rule) {
    case RuleId::Assign: {
      set_prog(out.net, r.pos, bind_result(t, *eval_expr(*t.arg, cfg), fresh));
      return out;
    }
    case RuleId::Spawn: {
      Name s = fresh();
      out.fresh = {s};
      const Url& at = net.items[r.pos].url;
      auto segs = abs_segments(at.base);
      segs.push_back(s);
      Url child = *url_from_segments(at.base.loc, segs, true);
      set_prog(out.net, r.pos, t.cont);
      add_item(out.net, child, res_prog(t.child));
      out.net.restricted.push_back(s);
      return out;
    }
    case RuleId::IfT:
      set_prog(out.net, r.pos, t.child);
      return out;
    case RuleId::IfF:
      set_prog(out.net, r.pos, t.cont);
      return out;
    case RuleId::CmdErr:
      set_prog(out.net, r.pos, bind_result(t, v_err(), fresh));
      return out;
    case RuleId::Sync: {
      const Term& recv = *head(net, r.pos2);
      ValuePtr v = *eval_expr(*t.arg, cfg);
      TermPtr q = subst_name(recv.cont, recv.param, v, fresh);
      q = apply_delegation(q, to_sls_map(t.deleg));
      set_prog(out.net, r.pos, t.cont);
      set_prog(out.net, r.pos2, q);
      return out;
    }
    case RuleId::PutOverwrite: {
      out.net.items[r.pos2].res = res_value(*eval_expr(*t.arg, cfg));
      set_prog(out.net, r.pos, bind_result(t, v_ok(), fresh));
      return out;
    }
    case RuleId::PutCreate: {
      add_item(out.net, *cmd_target(t), res_value(*eval_expr(*t.arg, cfg)));
      set_prog(out.net, r.pos, bind_result(t, v_ok(), fresh));
      return out;
    }
    case RuleId::Get: {
      set_prog(out.net, r.pos, bind_result(t, net.items[r.pos2].res.val, fresh));
      return out;
    }
    case RuleId::Delete: {
      set_prog(out.net, r.pos, bind_result(t, v_ok(), fresh));
      out.net.items.erase(out.net.items.begin() + r.pos2);
      return out;
    }
    case RuleId::RexecFresh: {
      Name n = fresh();
      out.fresh = {n};
      Url burl = *cmd_target(t);
      auto segs = abs_segments(burl.base);
      segs.push_back(n);
      Url placed = *url_from_segments(burl.base.loc, segs, cond(burl, cfg));
      add_item(out.net, placed, res_value(*eval_expr(*t.arg, cfg)));
      set_prog(out.net, r.pos, bind_result(t, v_name(n), fresh));
      out.net.restricted.push_back(n);
      return out;
    }
    case RuleId::CaptureCom:
    case RuleId::CaptureUserop:
      return apply_capture(net, cfg, r, fresh);
    case RuleId::SesNewNoop:
    case RuleId::SesDropNoop:
      set_prog(out.net, r.pos, t.cont);
      return out;
    case RuleId::SesNew: {
      Name s = fresh();
      out.fresh = {s};
      TermPtr p = apply_session_rebind(t.cont, t.ses_loc, SessionId::named(s));
      set_prog(out.net, r.pos, p);
      Url su = url_make(t.ses_loc, ExtraKind::Session, SessionId::named(s), {}, true);
      add_item(out.net, su, res_value(v_ok()));
      out.net.restricted.push_back(s);
      return out;
    }
    case RuleId::SesDrop: {
      TermPtr p = apply_session_rebind(t.cont, t.ses_loc, SessionId::ns());
      set_prog(out.net, r.pos, p);
      Url su = url_make(t.ses_loc, ExtraKind::Session, t.ses_id, {}, true);
      int at = find_value_at(out.net, r.pos, su);
      if (at >= 0) {
        UrlIndex idx(out.net, {r.pos, at});
        if (!idx.has_strict_extension(su))
          out.net.items.erase(out.net.items.begin() + at);
        else
          out.note = "session-kept";
      }
      return out;
    }
    case RuleId::Lexec:
      return apply_lexec(net, cfg, r, fresh);
  }
  return out;
}

std::vector<std::string> focus_urls(const Network& net, const Redex& r) {
  std::vector<std::string> out;
  auto push = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  push(url_id(net.items[r.pos].url));
  const Term* t = head(net, r.pos);
  if (t && t->kind == Term::Kind::Command) {
    if (auto u = cmd_target(*t)) push(url_id(*u));
  }
  if (t && (t->kind == Term::Kind::NewSession || t->kind == Term::Kind::DropSession) &&
      !t->symbolic) {
    Url su = url_make(t->ses_loc, ExtraKind::Session, t->ses_id, {}, true);
    push(url_id(su));
  }
  if (r.pos2 >= 0) push(url_id(net.items[r.pos2].url));
  return out;
}

}  // namespace webos
