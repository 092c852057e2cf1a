#include "webos/ast.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace webos {

namespace {
const std::array<const char*, 23> kReserved = {
    "put", "get", "delete", "rexec", "lexec", "spawn", "if", "then", "else",
    "newsession", "dropsession", "return", "nil", "new", "comp",
    "ok", "err", "ns", "exec", "session", "application", "true", "false"};
}

bool is_reserved_word(const Name& n) {
  return std::find_if(kReserved.begin(), kReserved.end(),
                      [&](const char* w) { return n == w; }) != kReserved.end();
}

bool is_valid_name(const Name& n) {
  if (n.empty() || is_reserved_word(n)) return false;
  if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_') return false;
  for (char c : n)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_generated_name(const Name& n) {
  if (n.size() < 3 || n[0] != '_' || n[1] != 'g') return false;
  return std::all_of(n.begin() + 2, n.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

const char* cmd_word(Cmd c) {
  switch (c) {
    case Cmd::Put: return "put";
    case Cmd::Get: return "get";
    case Cmd::Delete: return "delete";
    case Cmd::Rexec: return "rexec";
    case Cmd::Lexec: return "lexec";
  }
  return "?";
}

const OpDef* Declaration::find(const OpName& op) const {
  for (const auto& d : defs)
    if (d.op == op) return &d;
  return nullptr;
}

// ---- builders ----

ValuePtr v_ok() {
  static const ValuePtr v = std::make_shared<Value>(Value{Value::Kind::Ok});
  return v;
}
ValuePtr v_err() {
  static const ValuePtr v = std::make_shared<Value>(Value{Value::Kind::Err});
  return v;
}
ValuePtr v_num(long long n) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Num;
  v->num = n;
  return v;
}
ValuePtr v_name(Name n) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::NameV;
  v->name = std::move(n);
  return v;
}
ValuePtr v_passive(DeclPtr d, Name type) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Passive;
  v->decls = std::move(d);
  v->type = std::move(type);
  return v;
}
ValuePtr v_deployed(DeclPtr d, Name type, std::optional<Url> codebase, Pattern pat) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Deployed;
  v->decls = std::move(d);
  v->type = std::move(type);
  v->codebase = std::move(codebase);
  v->pattern = std::move(pat);
  return v;
}
ValuePtr v_pair(OpName op, ValuePtr payload) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::OpPair;
  v->op = std::move(op);
  v->payload = std::move(payload);
  return v;
}
ValuePtr v_ref(Ref r) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::RefV;
  v->ref = std::move(r);
  return v;
}

ExprPtr e_val(ValuePtr v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Val;
  e->val = std::move(v);
  return e;
}
ExprPtr e_name(Name n) { return e_val(v_name(std::move(n))); }
ExprPtr e_bin(Expr::Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
ExprPtr e_pair(OpName op, ExprPtr payload) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::MkPair;
  e->op = std::move(op);
  e->a = std::move(payload);
  return e;
}
ExprPtr e_loc(Location l, ExprPtr of) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Loc;
  e->loc = std::move(l);
  e->a = std::move(of);
  return e;
}
ExprPtr e_deploy(ExprPtr src, std::optional<Url> codebase, Pattern pat) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Deploy;
  e->a = std::move(src);
  e->codebase = std::move(codebase);
  e->pattern = std::move(pat);
  return e;
}

TermPtr t_nil() {
  static const TermPtr t = std::make_shared<Term>();
  return t;
}
TermPtr t_command(Name bind, Cmd c, Deleg d, Ref target, SessionId s, ExprPtr arg, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Command;
  t->bind = std::move(bind);
  t->cmd = c;
  canonicalize(d);
  t->deleg = std::move(d);
  t->target = std::move(target);
  t->ses = std::move(s);
  t->arg = std::move(arg);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_assign(Name bind, ExprPtr e, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Assign;
  t->bind = std::move(bind);
  t->arg = std::move(e);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_send(Name chan, Deleg sls, ExprPtr e, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Send;
  t->bind = std::move(chan);
  canonicalize(sls);
  t->deleg = std::move(sls);
  t->arg = std::move(e);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_receive(Name chan, Name param, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Receive;
  t->bind = std::move(chan);
  t->param = std::move(param);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_spawn(TermPtr child, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Spawn;
  t->child = std::move(child);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_if(BoolPtr guard, TermPtr then_t, TermPtr else_t) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::If;
  t->guard = std::move(guard);
  t->child = std::move(then_t);
  t->cont = std::move(else_t);
  return t;
}
TermPtr t_newsession_sym(TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::NewSession;
  t->symbolic = true;
  t->cont = std::move(cont);
  return t;
}
TermPtr t_newsession(Location l, SessionId s, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::NewSession;
  t->ses_loc = std::move(l);
  t->ses_id = std::move(s);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_dropsession_sym(TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::DropSession;
  t->symbolic = true;
  t->cont = std::move(cont);
  return t;
}
TermPtr t_dropsession(Location l, SessionId s, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::DropSession;
  t->ses_loc = std::move(l);
  t->ses_id = std::move(s);
  t->cont = std::move(cont);
  return t;
}
TermPtr t_return(ExprPtr e) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Return;
  t->arg = std::move(e);
  return t;
}
TermPtr t_restrict(Name n, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Restrict;
  t->bind = std::move(n);
  t->cont = std::move(cont);
  return t;
}

void canonicalize(Deleg& d) {
  std::stable_sort(d.entries.begin(), d.entries.end(),
                   [](const DelegEntry& a, const DelegEntry& b) {
                     if (a.self != b.self) return a.self;
                     return a.ctx < b.ctx;
                   });
}

// ---- names ----

namespace {

struct FreeWalk {
  std::set<Name>* out;

  void hit(const Name& n, const std::set<Name>& bound) {
    if (!n.empty() && !bound.count(n)) out->insert(n);
  }
  void ses(const SessionId& s, const std::set<Name>& bound) {
    if (!s.is_ns()) hit(s.id, bound);
  }
  void url(const Url& u, const std::set<Name>& bound) {
    if (u.base.var_root) hit(u.base.root_var, bound);
    if (u.base.ses) ses(*u.base.ses, bound);
  }
  void ref(const Ref& r, const std::set<Name>& bound) {
    if (r.base == RefBase::Abs) url(r.url, bound);
  }
  void deleg(const Deleg& d, const std::set<Name>& bound) {
    for (const auto& en : d.entries) ses(en.ses, bound);
  }
  void value(const Value& v, const std::set<Name>& bound) {
    switch (v.kind) {
      case Value::Kind::Ok:
      case Value::Kind::Err:
      case Value::Kind::Num:
        break;
      case Value::Kind::NameV:
        hit(v.name, bound);
        break;
      case Value::Kind::Passive:
      case Value::Kind::Deployed:
        for (const auto& d : v.decls->defs) {
          if (!d.op.builtin) hit(d.op.user, bound);
          auto inner = bound;
          inner.insert(d.param);
          term(*d.body, inner);
        }
        if (v.kind == Value::Kind::Deployed && v.codebase) url(*v.codebase, bound);
        break;
      case Value::Kind::OpPair:
        if (!v.op.builtin) hit(v.op.user, bound);
        value(*v.payload, bound);
        break;
      case Value::Kind::RefV:
        ref(v.ref, bound);
        break;
    }
  }
  void expr(const Expr& e, const std::set<Name>& bound) {
    switch (e.kind) {
      case Expr::Kind::Val:
        value(*e.val, bound);
        break;
      case Expr::Kind::Add:
      case Expr::Kind::Sub:
        expr(*e.a, bound);
        expr(*e.b, bound);
        break;
      case Expr::Kind::MkPair:
        if (!e.op.builtin) hit(e.op.user, bound);
        expr(*e.a, bound);
        break;
      case Expr::Kind::Loc:
      case Expr::Kind::Deploy:
        expr(*e.a, bound);
        break;
    }
  }
  void bexpr(const BoolExpr& b, const std::set<Name>& bound) {
    switch (b.kind) {
      case BoolExpr::Kind::Lit:
        break;
      case BoolExpr::Kind::Eq:
      case BoolExpr::Kind::Ne:
      case BoolExpr::Kind::Lt:
      case BoolExpr::Kind::Gt:
        expr(*b.a, bound);
        expr(*b.b, bound);
        break;
      case BoolExpr::Kind::And:
      case BoolExpr::Kind::Or:
        bexpr(*b.x, bound);
        bexpr(*b.y, bound);
        break;
      case BoolExpr::Kind::Not:
        bexpr(*b.x, bound);
        break;
    }
  }
  void term(const Term& t, const std::set<Name>& bound) {
    switch (t.kind) {
      case Term::Kind::Nil:
        break;
      case Term::Kind::Command: {
        ref(t.target, bound);
        ses(t.ses, bound);
        deleg(t.deleg, bound);
        if (t.arg) expr(*t.arg, bound);
        auto inner = bound;
        inner.insert(t.bind);
        term(*t.cont, inner);
        break;
      }
      case Term::Kind::Assign: {
        expr(*t.arg, bound);
        auto inner = bound;
        inner.insert(t.bind);
        term(*t.cont, inner);
        break;
      }
      case Term::Kind::Send:
        hit(t.bind, bound);
        deleg(t.deleg, bound);
        expr(*t.arg, bound);
        term(*t.cont, bound);
        break;
      case Term::Kind::Receive: {
        hit(t.bind, bound);
        auto inner = bound;
        inner.insert(t.param);
        term(*t.cont, inner);
        break;
      }
      case Term::Kind::Spawn:
        term(*t.child, bound);
        term(*t.cont, bound);
        break;
      case Term::Kind::If:
        bexpr(*t.guard, bound);
        term(*t.child, bound);
        term(*t.cont, bound);
        break;
      case Term::Kind::NewSession:
      case Term::Kind::DropSession:
        if (!t.symbolic) ses(t.ses_id, bound);
        term(*t.cont, bound);
        break;
      case Term::Kind::Return:
        expr(*t.arg, bound);
        break;
      case Term::Kind::Restrict: {
        auto inner = bound;
        inner.insert(t.bind);
        term(*t.cont, inner);
        break;
      }
    }
  }
};

struct AllWalk {
  std::set<Name>* out;

  void hit(const Name& n) {
    if (!n.empty()) out->insert(n);
  }
  void ses(const SessionId& s) {
    if (!s.is_ns()) hit(s.id);
  }
  void relpath(const RelPath& p) {
    for (const auto& s : p.segs)
      if (s != "..") hit(s);
  }
  void pattern(const Pattern& p) {
    for (const auto& s : p.segs) hit(s);
  }
  void url(const Url& u) {
    if (u.base.var_root) hit(u.base.root_var);
    if (u.base.ses) ses(*u.base.ses);
    for (const auto& s : u.base.segments) hit(s);
  }
  void ref(const Ref& r) {
    if (r.base == RefBase::Abs)
      url(r.url);
    else
      relpath(r.path);
  }
  void deleg(const Deleg& d) {
    for (const auto& en : d.entries) ses(en.ses);
  }
  void value(const Value& v) {
    switch (v.kind) {
      case Value::Kind::Ok:
      case Value::Kind::Err:
      case Value::Kind::Num:
        break;
      case Value::Kind::NameV:
        hit(v.name);
        break;
      case Value::Kind::Passive:
      case Value::Kind::Deployed:
        for (const auto& d : v.decls->defs) {
          if (!d.op.builtin) hit(d.op.user);
          hit(d.param);
          term(*d.body);
        }
        if (v.kind == Value::Kind::Deployed) {
          if (v.codebase) url(*v.codebase);
          pattern(v.pattern);
        }
        break;
      case Value::Kind::OpPair:
        if (!v.op.builtin) hit(v.op.user);
        value(*v.payload);
        break;
      case Value::Kind::RefV:
        ref(v.ref);
        break;
    }
  }
  void expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Val:
        value(*e.val);
        break;
      case Expr::Kind::Add:
      case Expr::Kind::Sub:
        expr(*e.a);
        expr(*e.b);
        break;
      case Expr::Kind::MkPair:
        if (!e.op.builtin) hit(e.op.user);
        expr(*e.a);
        break;
      case Expr::Kind::Loc:
        expr(*e.a);
        break;
      case Expr::Kind::Deploy:
        expr(*e.a);
        if (e.codebase) url(*e.codebase);
        pattern(e.pattern);
        break;
    }
  }
  void bexpr(const BoolExpr& b) {
    switch (b.kind) {
      case BoolExpr::Kind::Lit:
        break;
      case BoolExpr::Kind::Eq:
      case BoolExpr::Kind::Ne:
      case BoolExpr::Kind::Lt:
      case BoolExpr::Kind::Gt:
        expr(*b.a);
        expr(*b.b);
        break;
      case BoolExpr::Kind::And:
      case BoolExpr::Kind::Or:
        bexpr(*b.x);
        bexpr(*b.y);
        break;
      case BoolExpr::Kind::Not:
        bexpr(*b.x);
        break;
    }
  }
  void term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Nil:
        break;
      case Term::Kind::Command:
        hit(t.bind);
        ref(t.target);
        ses(t.ses);
        deleg(t.deleg);
        if (t.arg) expr(*t.arg);
        term(*t.cont);
        break;
      case Term::Kind::Assign:
        hit(t.bind);
        expr(*t.arg);
        term(*t.cont);
        break;
      case Term::Kind::Send:
        hit(t.bind);
        deleg(t.deleg);
        expr(*t.arg);
        term(*t.cont);
        break;
      case Term::Kind::Receive:
        hit(t.bind);
        hit(t.param);
        term(*t.cont);
        break;
      case Term::Kind::Spawn:
        term(*t.child);
        term(*t.cont);
        break;
      case Term::Kind::If:
        bexpr(*t.guard);
        term(*t.child);
        term(*t.cont);
        break;
      case Term::Kind::NewSession:
      case Term::Kind::DropSession:
        if (!t.symbolic) ses(t.ses_id);
        term(*t.cont);
        break;
      case Term::Kind::Return:
        expr(*t.arg);
        break;
      case Term::Kind::Restrict:
        hit(t.bind);
        term(*t.cont);
        break;
    }
  }
};

}  // namespace

void free_names(const Term& t, std::set<Name>& out) {
  FreeWalk w{&out};
  w.term(t, {});
}
void free_names(const Value& v, std::set<Name>& out) {
  FreeWalk w{&out};
  w.value(v, {});
}
void free_names(const Expr& e, std::set<Name>& out) {
  FreeWalk w{&out};
  w.expr(e, {});
}
void free_names(const BoolExpr& b, std::set<Name>& out) {
  FreeWalk w{&out};
  w.bexpr(b, {});
}

void free_names(const Network& n, std::set<Name>& out) {
  std::set<Name> raw;
  FreeWalk w{&raw};
  for (const auto& it : n.items) {
    w.url(it.url, {});
    if (it.res.is_value)
      w.value(*it.res.val, {});
    else
      w.term(*it.res.prog, {});
  }
  for (const auto& r : n.restricted) raw.erase(r);
  out.insert(raw.begin(), raw.end());
}

std::set<Name> free_names(const Network& n) {
  std::set<Name> out;
  free_names(n, out);
  return out;
}
std::set<Name> free_names(const Term& t) {
  std::set<Name> out;
  free_names(t, out);
  return out;
}

void all_names(const Term& t, std::set<Name>& out) {
  AllWalk w{&out};
  w.term(t);
}
void all_names(const Value& v, std::set<Name>& out) {
  AllWalk w{&out};
  w.value(v);
}
void all_names(const Url& u, std::set<Name>& out) {
  AllWalk w{&out};
  w.url(u);
}
void all_names(const Network& n, std::set<Name>& out) {
  AllWalk w{&out};
  for (const auto& r : n.restricted) w.hit(r);
  for (const auto& it : n.items) {
    w.url(it.url);
    if (it.res.is_value)
      w.value(*it.res.val);
    else
      w.term(*it.res.prog);
  }
}
std::set<Name> all_names(const Network& n) {
  std::set<Name> out;
  all_names(n, out);
  return out;
}

}  // namespace webos
