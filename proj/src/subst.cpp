#include "webos/subst.hpp"

#include <algorithm>

#include "webos/urlalg.hpp"

namespace webos {

SlsMap to_sls_map(const Deleg& d) {
  SlsMap m;
  for (const auto& e : d.entries)
    if (!e.self) m[e.ctx] = e.ses;
  return m;
}

Deleg from_sls_map(const SlsMap& m) {
  Deleg d;
  for (const auto& [l, s] : m) d.entries.push_back({false, l, s});
  canonicalize(d);
  return d;
}

// ---------------------------------------------------------------------------
// Generic structural rewriting used by the theta substitution families.
// These walks do not descend into component declaration bodies: a stored
// component is a static program that gets its own resolution when captured.

namespace {

struct Theta {
  std::function<Ref(const Ref&)> ref;        // refs in values, exprs and targets
  std::function<void(Term&)> command;        // adjust a Command node copy
  std::function<Deleg(const Deleg&)> send_deleg;
  std::function<void(Term&)> session;        // adjust a New/DropSession node copy
};

Ref th_ref(const Ref& r, const Theta& th) { return th.ref ? th.ref(r) : r; }

ValuePtr th_value(const ValuePtr& v, const Theta& th);
ExprPtr th_expr(const ExprPtr& e, const Theta& th);
BoolPtr th_bool(const BoolPtr& b, const Theta& th);
TermPtr th_term(const TermPtr& t, const Theta& th);

ValuePtr th_value(const ValuePtr& v, const Theta& th) {
  if (!v) return v;
  switch (v->kind) {
    case Value::Kind::RefV: {
      Ref r = th_ref(v->ref, th);
      auto w = std::make_shared<Value>(*v);
      w->ref = std::move(r);
      return w;
    }
    case Value::Kind::OpPair: {
      auto w = std::make_shared<Value>(*v);
      w->payload = th_value(v->payload, th);
      return w;
    }
    default:
      return v;  // components deliberately left untouched
  }
}

ExprPtr th_expr(const ExprPtr& e, const Theta& th) {
  if (!e) return e;
  auto w = std::make_shared<Expr>(*e);
  w->val = th_value(e->val, th);
  w->a = th_expr(e->a, th);
  w->b = th_expr(e->b, th);
  return w;
}

BoolPtr th_bool(const BoolPtr& b, const Theta& th) {
  if (!b) return b;
  auto w = std::make_shared<BoolExpr>(*b);
  w->a = th_expr(b->a, th);
  w->b = th_expr(b->b, th);
  w->x = th_bool(b->x, th);
  w->y = th_bool(b->y, th);
  return w;
}

TermPtr th_term(const TermPtr& t, const Theta& th) {
  if (!t) return t;
  auto w = std::make_shared<Term>(*t);
  switch (t->kind) {
    case Term::Kind::Command:
      w->target = th_ref(t->target, th);
      w->arg = th_expr(t->arg, th);
      if (th.command) th.command(*w);
      break;
    case Term::Kind::Send:
      w->arg = th_expr(t->arg, th);
      if (th.send_deleg) w->deleg = th.send_deleg(t->deleg);
      break;
    case Term::Kind::NewSession:
    case Term::Kind::DropSession:
      if (th.session) th.session(*w);
      break;
    case Term::Kind::Assign:
    case Term::Kind::Return:
      w->arg = th_expr(t->arg, th);
      break;
    case Term::Kind::If:
      w->guard = th_bool(t->guard, th);
      break;
    default:
      break;
  }
  w->child = th_term(t->child, th);
  w->cont = th_term(t->cont, th);
  return w;
}

// Rewrites the session id of l/session/_ urls at contexts listed in sls.
Ref deleg_ref(const Ref& r, const SlsMap& sls) {
  if (r.base != RefBase::Abs || r.url.base.var_root) return r;
  const UrlBase& b = r.url.base;
  if (b.extra != ExtraKind::Session || !b.ses) return r;
  auto it = sls.find(b.loc);
  if (it == sls.end()) return r;
  Ref w = r;
  w.url.base.ses = it->second;
  return w;
}

}  // namespace

TermPtr apply_delegation(const TermPtr& t, const SlsMap& sls) {
  if (sls.empty()) return t;
  Theta th;
  th.ref = [&sls](const Ref& r) { return deleg_ref(r, sls); };
  th.command = [&sls](Term& c) {
    if (c.target.base == RefBase::Abs && !c.target.url.base.var_root) {
      auto it = sls.find(c.target.url.base.loc);
      if (it != sls.end()) c.ses = it->second;
    }
    Deleg d = c.deleg;
    for (auto& e : d.entries) {
      if (e.self) continue;
      auto it = sls.find(e.ctx);
      if (it != sls.end()) e.ses = it->second;
    }
    canonicalize(d);
    c.deleg = std::move(d);
  };
  th.send_deleg = [&sls](const Deleg& d0) {
    Deleg d = d0;
    for (auto& e : d.entries) {
      if (e.self) continue;
      auto it = sls.find(e.ctx);
      if (it != sls.end()) e.ses = it->second;
    }
    canonicalize(d);
    return d;
  };
  th.session = [&sls](Term& s) {
    if (s.symbolic) return;
    auto it = sls.find(s.ses_loc);
    if (it != sls.end()) s.ses_id = it->second;
  };
  return th_term(t, th);
}

TermPtr apply_session_rebind(const TermPtr& t, const Location& l, const SessionId& s) {
  return apply_delegation(t, SlsMap{{l, s}});
}

TermPtr apply_capture_symbols(const TermPtr& t, const Location& l, const Pattern& pat,
                              const RelPath& ipath) {
  Theta th;
  th.ref = [&](const Ref& r) -> Ref {
    auto abs = [&](std::vector<Name> head) -> Ref {
      for (const auto& s : r.path.segs) {
        if (s == "..") {
          if (head.empty()) return r;  // climbs out: leave unresolved
          head.pop_back();
        } else {
          head.push_back(s);
        }
      }
      bool coll = r.path.segs.empty() && !r.path.collection
                      ? true  // the bare symbol denotes a collection base
                      : r.path.collection;
      auto u = url_from_segments(l, head, coll);
      if (!u) return r;
      Ref w;
      w.base = RefBase::Abs;
      w.url = *u;
      return w;
    };
    switch (r.base) {
      case RefBase::SymSession: {
        Ref w = abs({"session", "ns"});
        if (w.base == RefBase::Abs && r.path.segs.empty() && !r.path.collection)
          w.url.collection = false;  // <session> alone is the session base
        return w;
      }
      case RefBase::SymApplication: {
        Ref w = abs({"application"});
        if (w.base == RefBase::Abs && r.path.segs.empty() && !r.path.collection)
          w.url.collection = false;
        return w;
      }
      case RefBase::SymPhbase:
        return abs(pat_dir(pat).segs);
      case RefBase::SymIpath: {
        Ref w;
        w.base = RefBase::Rel;
        w.path.segs = ipath.segs;
        w.path.segs.insert(w.path.segs.end(), r.path.segs.begin(), r.path.segs.end());
        w.path.collection = r.path.segs.empty() && !r.path.collection
                                ? ipath.collection
                                : r.path.collection;
        return w;
      }
      default:
        return r;
    }
  };
  th.session = [&](Term& s) {
    if (!s.symbolic) return;
    s.symbolic = false;
    s.ses_loc = l;
    s.ses_id = SessionId::ns();
  };
  return th_term(t, th);
}

TermPtr apply_capture_commands(const TermPtr& t, const Url& internal_base,
                               const Url& external_base, const Url& deleg_base) {
  Theta th;
  th.command = [&](Term& c) {
    const Url& base = c.deleg.internal ? internal_base : external_base;
    if (auto u = resolve_url(base, c.target)) {
      Ref w;
      w.base = RefBase::Abs;
      w.url = *u;
      c.target = std::move(w);
    }
    if (!c.deleg.internal) {
      Deleg d;
      for (const auto& e : c.deleg.entries)
        d.entries.push_back({false, resolve_ctx(deleg_base, e), e.ses});
      canonicalize(d);
      c.deleg = std::move(d);
      c.ses = SessionId::ns();
    }
  };
  th.send_deleg = [&](const Deleg& d0) {
    Deleg d;
    for (const auto& e : d0.entries)
      d.entries.push_back({false, resolve_ctx(deleg_base, e), e.ses});
    canonicalize(d);
    return d;
  };
  return th_term(t, th);
}

TermPtr replace_return(const TermPtr& t, const Name& chan, const Deleg& sls) {
  if (!t) return t;
  if (t->kind == Term::Kind::Return) return t_send(chan, sls, t->arg, t_nil());
  auto w = std::make_shared<Term>(*t);
  w->child = replace_return(t->child, chan, sls);
  w->cont = replace_return(t->cont, chan, sls);
  return w;
}

// ---------------------------------------------------------------------------
// Capture-avoiding {v/x}.

namespace {

struct Subst {
  const Name& x;
  const ValuePtr& v;
  const FreshFn& fresh;
  std::set<Name> fv;  // free names of v

  Name as_name() const {
    // a name position bound to a non-name value can never fire again
    return v->kind == Value::Kind::NameV ? v->name : fresh();
  }

  Name seg_or_keep(const Name& n) const { return n == x ? as_name() : n; }

  SessionId ses(const SessionId& s) const {
    if (s.is_ns() || s.id != x) return s;
    return SessionId::named(as_name());
  }

  Url splice(const Url& u) const {
    if (!u.base.var_root || u.base.root_var != x) return u;
    if (v->kind == Value::Kind::RefV && v->ref.base == RefBase::Abs &&
        !v->ref.url.base.var_root && v->ref.url.collection) {
      const Url& root = v->ref.url;
      auto segs = abs_segments(root.base);
      auto tail = abs_segments(u.base);
      segs.insert(segs.end(), tail.begin(), tail.end());
      if (auto w = url_from_segments(root.base.loc, segs, u.collection)) return *w;
    }
    Url bad = u;  // dead root: the command over it errs
    bad.base.root_var = fresh();
    return bad;
  }

  Ref ref(const Ref& r) const {
    if (r.base != RefBase::Abs || !r.url.base.var_root) return r;
    Ref w = r;
    w.url = splice(r.url);
    return w;
  }

  OpName op(const OpName& o) const {
    if (o.builtin || o.user != x) return o;
    return OpName::of_user(as_name());
  }

  ValuePtr value(const ValuePtr& w) const;
  ExprPtr expr(const ExprPtr& e) const;
  BoolPtr boolean(const BoolPtr& b) const;
  TermPtr term(const TermPtr& t) const;
  DeclPtr decls(const DeclPtr& d) const;
};

ValuePtr Subst::value(const ValuePtr& w) const {
  if (!w) return w;
  switch (w->kind) {
    case Value::Kind::NameV:
      return w->name == x ? v : w;
    case Value::Kind::OpPair: {
      auto c = std::make_shared<Value>(*w);
      c->op = op(w->op);
      c->payload = value(w->payload);
      return c;
    }
    case Value::Kind::RefV: {
      // in value position a failed splice degrades to err so the chain that
      // consumes the reference errs instead of wedging
      const Ref& r0 = w->ref;
      if (r0.base == RefBase::Abs && r0.url.base.var_root && r0.url.base.root_var == x) {
        Url s = splice(r0.url);
        if (s.base.var_root) return v_err();
        auto c = std::make_shared<Value>(*w);
        c->ref.base = RefBase::Abs;
        c->ref.url = std::move(s);
        return c;
      }
      return w;
    }
    case Value::Kind::Passive:
    case Value::Kind::Deployed: {
      auto c = std::make_shared<Value>(*w);
      c->decls = decls(w->decls);
      return c;
    }
    default:
      return w;
  }
}

ExprPtr Subst::expr(const ExprPtr& e) const {
  if (!e) return e;
  auto c = std::make_shared<Expr>(*e);
  c->val = value(e->val);
  c->a = expr(e->a);
  c->b = expr(e->b);
  if (e->kind == Expr::Kind::MkPair) c->op = op(e->op);
  return c;
}

BoolPtr Subst::boolean(const BoolPtr& b) const {
  if (!b) return b;
  auto c = std::make_shared<BoolExpr>(*b);
  c->a = expr(b->a);
  c->b = expr(b->b);
  c->x = boolean(b->x);
  c->y = boolean(b->y);
  return c;
}

DeclPtr Subst::decls(const DeclPtr& d) const {
  if (!d) return d;
  auto c = std::make_shared<Declaration>();
  for (const auto& def : d->defs) {
    OpDef nd;
    nd.op = op(def.op);
    nd.param = def.param;
    if (def.param == x) {
      nd.body = def.body;
    } else if (fv.count(def.param)) {
      Name np = fresh();
      auto renamed = subst_name(def.body, def.param, v_name(np), fresh);
      nd.param = np;
      nd.body = term(renamed);
    } else {
      nd.body = term(def.body);
    }
    c->defs.push_back(std::move(nd));
  }
  return c;
}

TermPtr Subst::term(const TermPtr& t) const {
  if (!t) return t;
  // binder handling: shadowing stops the walk, capture forces a rename
  auto scope = [&](const Name& bind, const TermPtr& body,
                   Name& out_bind) -> std::pair<TermPtr, bool> {
    out_bind = bind;
    if (bind == x) return {body, false};
    if (fv.count(bind)) {
      Name nb = fresh();
      out_bind = nb;
      return {subst_name(body, bind, v_name(nb), fresh), true};
    }
    return {body, true};
  };

  auto c = std::make_shared<Term>(*t);
  switch (t->kind) {
    case Term::Kind::Nil:
      return t;
    case Term::Kind::Command: {
      c->target = ref(t->target);
      c->ses = ses(t->ses);
      for (auto& e : c->deleg.entries) e.ses = ses(e.ses);
      c->arg = expr(t->arg);
      auto [body, go] = scope(t->bind, t->cont, c->bind);
      c->cont = go ? term(body) : body;
      return c;
    }
    case Term::Kind::Assign: {
      c->arg = expr(t->arg);
      auto [body, go] = scope(t->bind, t->cont, c->bind);
      c->cont = go ? term(body) : body;
      return c;
    }
    case Term::Kind::Send: {
      c->bind = seg_or_keep(t->bind);
      for (auto& e : c->deleg.entries) e.ses = ses(e.ses);
      c->arg = expr(t->arg);
      c->cont = term(t->cont);
      return c;
    }
    case Term::Kind::Receive: {
      c->bind = seg_or_keep(t->bind);
      auto [body, go] = scope(t->param, t->cont, c->param);
      c->cont = go ? term(body) : body;
      return c;
    }
    case Term::Kind::Spawn:
      c->child = term(t->child);
      c->cont = term(t->cont);
      return c;
    case Term::Kind::If:
      c->guard = boolean(t->guard);
      c->child = term(t->child);
      c->cont = term(t->cont);
      return c;
    case Term::Kind::NewSession:
    case Term::Kind::DropSession:
      if (!t->symbolic) c->ses_id = ses(t->ses_id);
      c->cont = term(t->cont);
      return c;
    case Term::Kind::Return:
      c->arg = expr(t->arg);
      return c;
    case Term::Kind::Restrict: {
      auto [body, go] = scope(t->bind, t->cont, c->bind);
      c->cont = go ? term(body) : body;
      return c;
    }
  }
  return c;
}

}  // namespace

TermPtr subst_name(const TermPtr& t, const Name& x, const ValuePtr& v, const FreshFn& fresh) {
  Subst s{x, v, fresh, {}};
  free_names(*v, s.fv);
  return s.term(t);
}

ExprPtr subst_name(const ExprPtr& e, const Name& x, const ValuePtr& v, const FreshFn& fresh) {
  Subst s{x, v, fresh, {}};
  free_names(*v, s.fv);
  return s.expr(e);
}

ValuePtr subst_name(const ValuePtr& w, const Name& x, const ValuePtr& v, const FreshFn& fresh) {
  Subst s{x, v, fresh, {}};
  free_names(*v, s.fv);
  return s.value(w);
}

}  // namespace webos
