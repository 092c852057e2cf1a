#include "gen.hpp"

namespace webos::gen {

namespace {

const char* kHosts[] = {"h", "k"};
const char* kCtxs[] = {"c", "d"};
const char* kSegs[] = {"a", "b", "p", "q"};
const char* kVars[] = {"x", "y", "z", "w"};
const char* kOps[] = {"f", "act"};
const char* kTypes[] = {"code", "gui"};
const char* kSessions[] = {"s1", "s2"};

template <std::size_t N>
const char* one(Rng& rng, const char* (&pool)[N]) {
  return pool[pick(rng, static_cast<int>(N))];
}

}  // namespace

int pick(Rng& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

Location g_location(Rng& rng) { return {one(rng, kHosts), one(rng, kCtxs)}; }

RelPath g_relpath(Rng& rng, int max_segs) {
  RelPath p;
  int n = 1 + pick(rng, max_segs);
  for (int i = 0; i < n; ++i) p.segs.push_back(one(rng, kSegs));
  p.collection = chance(rng, 0.3);
  return p;
}

Pattern g_pattern(Rng& rng) {
  Pattern p;
  int n = 1 + pick(rng, 2);
  for (int i = 0; i < n; ++i) p.segs.push_back(one(rng, kSegs));
  p.wildcard = chance(rng, 0.7);
  return p;
}

Url g_url(Rng& rng) {
  Url u;
  u.base.loc = g_location(rng);
  if (chance(rng, 0.15)) {
    u.base.extra = ExtraKind::Session;
    u.base.ses = chance(rng, 0.5) ? SessionId::ns() : SessionId::named(one(rng, kSessions));
  }
  int n = pick(rng, 3);
  for (int i = 0; i < n; ++i) u.base.segments.push_back(one(rng, kSegs));
  u.collection = chance(rng, 0.4);
  if (u.base.extra == ExtraKind::Session && u.base.segments.empty())
    u.collection = true;
  return u;
}

Ref g_ref(Rng& rng, bool allow_symbols) {
  Ref r;
  switch (pick(rng, allow_symbols ? 4 : 3)) {
    case 0:
      r.base = RefBase::Abs;
      r.url = g_url(rng);
      return r;
    case 1:
      r.base = RefBase::Root;
      r.path = g_relpath(rng);
      return r;
    case 2:
      r.base = RefBase::Rel;
      r.path = g_relpath(rng, 2);
      return r;
    default:
      r.base = chance(rng, 0.5) ? RefBase::SymIpath : RefBase::SymPhbase;
      r.path = RelPath{{one(rng, kSegs)}, false};
      return r;
  }
}

ValuePtr g_value(Rng& rng, int depth) {
  switch (pick(rng, depth > 0 ? 7 : 5)) {
    case 0: return v_ok();
    case 1: return v_err();
    case 2: return v_num(pick(rng, 100));
    case 3: return v_name(one(rng, kVars));
    case 4: {
      Ref r;
      r.base = RefBase::Abs;
      r.url = g_url(rng);
      return v_ref(r);
    }
    case 5: return v_pair(OpName::of_user(one(rng, kOps)), g_value(rng, depth - 1));
    default: return v_passive(g_decls(rng), one(rng, kTypes));
  }
}

ExprPtr g_expr(Rng& rng, int depth, bool allow_pair) {
  if (depth <= 0 || chance(rng, 0.5)) return e_val(g_value(rng, 0));
  switch (pick(rng, allow_pair ? 3 : 2)) {
    case 0: return e_val(g_value(rng, 0));
    case 1:
      return e_bin(chance(rng, 0.5) ? Expr::Kind::Add : Expr::Kind::Sub,
                   e_val(v_num(pick(rng, 10))), e_val(v_num(pick(rng, 10))));
    default:
      return e_pair(OpName::of_user(one(rng, kOps)), g_expr(rng, depth - 1, false));
  }
}

BoolPtr g_bool(Rng& rng) {
  auto b = std::make_shared<BoolExpr>();
  switch (pick(rng, 3)) {
    case 0:
      b->kind = BoolExpr::Kind::Eq;
      b->a = e_val(g_value(rng, 0));
      b->b = e_val(g_value(rng, 0));
      break;
    case 1:
      b->kind = BoolExpr::Kind::Lt;
      b->a = e_val(v_num(pick(rng, 5)));
      b->b = e_val(v_num(pick(rng, 5)));
      break;
    default:
      b->kind = BoolExpr::Kind::Lit;
      b->lit = chance(rng, 0.5);
      break;
  }
  return b;
}

DeclPtr g_decls(Rng& rng) {
  auto d = std::make_shared<Declaration>();
  int n = 1 + pick(rng, 2);
  for (int i = 0; i < n && i < 2; ++i) {
    OpDef def;
    if (i == 0 && chance(rng, 0.5))
      def.op = OpName::of_cmd(chance(rng, 0.5) ? Cmd::Get : Cmd::Put);
    else
      def.op = OpName::of_user(kOps[i]);
    def.param = "v";
    bool uses_param =
        !(def.op.builtin && (def.op.cmd == Cmd::Get || def.op.cmd == Cmd::Delete));
    ExprPtr ret = uses_param && chance(rng, 0.5)
                      ? e_bin(Expr::Kind::Add, e_name("v"), e_val(v_num(1)))
                      : g_expr(rng, 1, false);
    TermPtr body = t_return(ret);
    if (chance(rng, 0.3)) {
      Ref tgt;
      tgt.base = RefBase::SymIpath;
      tgt.path = RelPath{{}, false};
      body = t_command("u", Cmd::Get, Deleg::internal_marker(), tgt, SessionId::ns(),
                       nullptr, t_return(uses_param ? e_name("u") : g_expr(rng, 0, false)));
    }
    def.body = body;
    d->defs.push_back(std::move(def));
  }
  // drop a duplicate second op if the pools collided
  if (d->defs.size() == 2 && d->defs[0].op == d->defs[1].op) d->defs.pop_back();
  return d;
}

namespace {

Deleg g_deleg(Rng& rng, bool allow_internal) {
  if (allow_internal && chance(rng, 0.15)) return Deleg::internal_marker();
  Deleg d;
  if (chance(rng, 0.3)) {
    DelegEntry e;
    e.ctx = g_location(rng);
    if (chance(rng, 0.5)) e.ses = SessionId::named(one(rng, kSessions));
    d.entries.push_back(e);
    canonicalize(d);
  }
  return d;
}

TermPtr g_static_term(Rng& rng, int depth) {
  if (depth <= 0) return chance(rng, 0.3) ? t_return(g_expr(rng, 1, false)) : t_nil();
  TermPtr cont = g_static_term(rng, depth - 1);
  switch (pick(rng, 8)) {
    case 0: return t_nil();
    case 1: {
      Deleg d = g_deleg(rng, true);
      Cmd c = static_cast<Cmd>(pick(rng, 5));
      Ref tgt;
      if (d.internal) {
        tgt.base = RefBase::Rel;
        tgt.path = g_relpath(rng, 2);
      } else {
        tgt.base = RefBase::Abs;
        tgt.url = g_url(rng);
      }
      if (c == Cmd::Lexec) {
        tgt.base = RefBase::Abs;
        tgt.url = g_url(rng);
        tgt.url.collection = false;
        if (tgt.url.base.segments.empty()) tgt.url.base.segments.push_back("a");
        tgt.url.base.extra = ExtraKind::None;
        tgt.url.base.ses.reset();
        d = g_deleg(rng, false);
      }
      ExprPtr arg;
      if (c == Cmd::Put || c == Cmd::Lexec) arg = g_expr(rng, 1, false);
      if (c == Cmd::Rexec) arg = g_expr(rng, 2, true);
      return t_command(one(rng, kVars), c, d, tgt, SessionId::ns(), arg, cont);
    }
    case 2:
      return t_assign(one(rng, kVars), g_expr(rng, 2, false), cont);
    case 3:
      return t_send(one(rng, kVars), g_deleg(rng, false), g_expr(rng, 1, false), cont);
    case 4:
      return t_receive(one(rng, kVars), one(rng, kVars), cont);
    case 5:
      return t_spawn(g_static_term(rng, depth - 1), cont);
    case 6:
      return t_if(g_bool(rng), g_static_term(rng, depth - 1), cont);
    default: {
      Location l = g_location(rng);
      if (chance(rng, 0.5)) return t_newsession(l, SessionId::ns(), cont);
      return t_dropsession(
          l, chance(rng, 0.5) ? SessionId::ns() : SessionId::named(one(rng, kSessions)),
          cont);
    }
  }
}

}  // namespace

TermPtr g_term(Rng& rng, int depth) { return g_static_term(rng, depth); }

Network g_network(Rng& rng) {
  Network n;
  int items = 1 + pick(rng, 3);
  for (int i = 0; i < items; ++i) {
    Located it;
    it.url = g_url(rng);
    if (chance(rng, 0.5)) {
      it.res.is_value = true;
      it.res.val = g_value(rng, 1);
    } else {
      it.res.prog = g_term(rng, 1 + pick(rng, 3));
    }
    n.items.push_back(std::move(it));
  }
  return n;
}

Network g_semnet(Rng& rng) {
  Network n;
  Location l{"h", "c"};

  // stored resources over a tiny shared url pool
  int stored = 1 + pick(rng, 2);
  for (int i = 0; i < stored; ++i) {
    Url u;
    u.base.loc = l;
    int segs = 1 + pick(rng, 2);
    for (int s = 0; s < segs; ++s) u.base.segments.push_back(one(rng, kSegs));
    u.collection = chance(rng, 0.3);
    n.items.push_back({u, {true, g_value(rng, 0), nullptr}});
  }

  // up to two deployed components
  int comps = pick(rng, 3);
  for (int i = 0; i < comps && i < 2; ++i) {
    Url u;
    u.base.loc = l;
    u.base.extra = ExtraKind::Exec;
    u.base.segments.push_back(i == 0 ? "m1" : "m2");
    u.collection = true;
    std::optional<Url> cbase;
    if (chance(rng, 0.3)) {
      Url cb;
      cb.base.loc = l;
      cb.base.segments.push_back("src");
      cb.collection = true;
      cbase = cb;
    }
    n.items.push_back(
        {u, {true, v_deployed(g_decls(rng), one(rng, kTypes), cbase, g_pattern(rng)), nullptr}});
  }

  // driver programs whose targets hit the same pool
  int progs = 1 + pick(rng, 2);
  for (int i = 0; i < progs; ++i) {
    Url at;
    at.base.loc = l;
    at.base.segments = {Name("run") + std::to_string(i)};
    at.collection = chance(rng, 0.5);
    TermPtr t = t_nil();
    int depth = 1 + pick(rng, 3);
    for (int d = 0; d < depth; ++d) {
      switch (pick(rng, 7)) {
        case 0: {
          Cmd c = static_cast<Cmd>(pick(rng, 4));
          Ref tgt;
          tgt.base = RefBase::Abs;
          tgt.url.base.loc = l;
          int segs = 1 + pick(rng, 2);
          for (int s = 0; s < segs; ++s) tgt.url.base.segments.push_back(one(rng, kSegs));
          tgt.url.collection = chance(rng, 0.3);
          ExprPtr arg;
          if (c == Cmd::Put) arg = g_expr(rng, 1, false);
          if (c == Cmd::Rexec) arg = g_expr(rng, 1, chance(rng, 0.6));
          Deleg dl = chance(rng, 0.1) ? Deleg::internal_marker() : Deleg::empty();
          t = t_command(one(rng, kVars), c, dl, tgt, SessionId::ns(), arg, t);
          break;
        }
        case 1:
          t = t_assign(one(rng, kVars), g_expr(rng, 2, false), t);
          break;
        case 2:
          t = t_send(kVars[i % 4], Deleg::empty(), g_expr(rng, 1, false), t);
          break;
        case 3:
          t = t_receive(kVars[(i + 1) % 4], "v", t);
          break;
        case 4:
          t = t_if(g_bool(rng), t_nil(), t);
          break;
        case 5:
          t = t_spawn(t_nil(), t);
          break;
        default:
          if (chance(rng, 0.5))
            t = t_newsession(l, SessionId::ns(), t);
          else
            t = t_dropsession(l, chance(rng, 0.5) ? SessionId::ns()
                                                  : SessionId::named("s1"),
                              t);
          break;
      }
    }
    n.items.push_back({at, {false, nullptr, t}});
  }
  return n;
}

Config g_config(Rng& rng) {
  Config cfg;
  if (chance(rng, 0.3)) cfg.collection_op_dispatch = true;
  if (chance(rng, 0.3)) cfg.cond_overrides["//h/c/a"] = true;
  cfg.loc_capability[{{"h", "c"}, "code"}] = {"h", "d"};
  return cfg;
}

}  // namespace webos::gen
