#include "webos/printer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace webos {

namespace {

void p_term(std::ostream& os, const Term& t);
void p_value(std::ostream& os, const Value& v);
void p_expr(std::ostream& os, const Expr& e);
void p_bool(std::ostream& os, const BoolExpr& b);

void p_location(std::ostream& os, const Location& l) { os << "//" << l.host << "/" << l.ctx; }

void p_ses(std::ostream& os, const SessionId& s) {
  if (s.is_ns())
    os << "ns";
  else
    os << s.id;
}

void p_url(std::ostream& os, const Url& u) {
  if (u.base.var_root)
    os << "<" << u.base.root_var << ">";
  else
    p_location(os, u.base.loc);
  switch (u.base.extra) {
    case ExtraKind::None:
      break;
    case ExtraKind::Exec:
      os << "/exec";
      break;
    case ExtraKind::Application:
      os << "/application";
      break;
    case ExtraKind::Session:
      os << "/session";
      if (u.base.ses) {
        os << "/";
        p_ses(os, *u.base.ses);
      }
      break;
  }
  for (const auto& s : u.base.segments) os << "/" << s;
  if (u.collection) os << "/";
}

void p_relpath(std::ostream& os, const RelPath& p) {
  for (std::size_t i = 0; i < p.segs.size(); ++i) {
    if (i) os << "/";
    os << p.segs[i];
  }
  if (p.collection && !p.segs.empty()) os << "/";
}

void p_pattern(std::ostream& os, const Pattern& p) {
  for (const auto& s : p.segs) os << "/" << s;
  if (p.wildcard) os << "/*";
}

void p_ref(std::ostream& os, const Ref& r) {
  switch (r.base) {
    case RefBase::Abs:
      p_url(os, r.url);
      return;
    case RefBase::Rel:
      p_relpath(os, r.path);
      return;
    case RefBase::Root:
      os << "/";
      p_relpath(os, r.path);
      return;
    case RefBase::ExecRoot:
      os << "/exec/";
      p_relpath(os, r.path);
      return;
    case RefBase::SymSession:
      os << "<session>";
      break;
    case RefBase::SymApplication:
      os << "<application>";
      break;
    case RefBase::SymPhbase:
      os << "<phbase>";
      break;
    case RefBase::SymIpath:
      os << "<ipath>";
      break;
  }
  if (!r.path.segs.empty()) {
    os << "/";
    p_relpath(os, r.path);
  } else if (!r.path.collection) {
    // single-resource shaped empty tail cannot occur; print nothing
  }
}

void p_opname(std::ostream& os, const OpName& op) {
  if (op.builtin)
    os << cmd_word(op.cmd);
  else
    os << op.user;
}

void p_deleg(std::ostream& os, const Deleg& d) {
  if (d.internal) {
    os << "^I";
    return;
  }
  os << "^{";
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    if (i) os << ", ";
    const auto& en = d.entries[i];
    if (en.self) {
      os << "eps";
    } else {
      p_location(os, en.ctx);
      if (!en.ses.is_ns()) {
        os << ":";
        p_ses(os, en.ses);
      }
    }
  }
  os << "}";
}

void p_decls(std::ostream& os, const Declaration& d) {
  for (const auto& def : d.defs) {
    p_opname(os, def.op);
    os << "(" << def.param << ") = ";
    p_term(os, *def.body);
    os << " ; ";
  }
}

void p_value(std::ostream& os, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Ok:
      os << "ok";
      break;
    case Value::Kind::Err:
      os << "err";
      break;
    case Value::Kind::Num:
      os << v.num;
      break;
    case Value::Kind::NameV:
      os << v.name;
      break;
    case Value::Kind::Passive:
      os << "comp:" << v.type << " <";
      p_decls(os, *v.decls);
      os << ">";
      break;
    case Value::Kind::Deployed:
      os << "comp:" << v.type << " [";
      if (v.codebase)
        p_url(os, *v.codebase);
      else
        os << "_";
      os << " -> ";
      p_pattern(os, v.pattern);
      os << "] <";
      p_decls(os, *v.decls);
      os << ">";
      break;
    case Value::Kind::OpPair:
      p_opname(os, v.op);
      os << "<";
      p_value(os, *v.payload);
      os << ">";
      break;
    case Value::Kind::RefV:
      p_ref(os, v.ref);
      break;
  }
}

void p_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Val:
      p_value(os, *e.val);
      break;
    case Expr::Kind::Add:
      p_expr(os, *e.a);
      os << " + ";
      p_expr(os, *e.b);
      break;
    case Expr::Kind::Sub:
      p_expr(os, *e.a);
      os << " - ";
      p_expr(os, *e.b);
      break;
    case Expr::Kind::MkPair:
      p_opname(os, e.op);
      os << "<";
      p_expr(os, *e.a);
      os << ">";
      break;
    case Expr::Kind::Loc:
      os << "loc(";
      p_location(os, e.loc);
      os << ", ";
      p_expr(os, *e.a);
      os << ")";
      break;
    case Expr::Kind::Deploy:
      os << "deploy(";
      p_expr(os, *e.a);
      os << ", ";
      if (e.codebase)
        p_url(os, *e.codebase);
      else
        os << "_";
      os << ", ";
      p_pattern(os, e.pattern);
      os << ")";
      break;
  }
}

void p_bool(std::ostream& os, const BoolExpr& b) {
  switch (b.kind) {
    case BoolExpr::Kind::Lit:
      os << (b.lit ? "true" : "false");
      break;
    case BoolExpr::Kind::Eq:
    case BoolExpr::Kind::Ne:
    case BoolExpr::Kind::Lt:
    case BoolExpr::Kind::Gt: {
      const char* op = b.kind == BoolExpr::Kind::Eq   ? " == "
                       : b.kind == BoolExpr::Kind::Ne ? " != "
                       : b.kind == BoolExpr::Kind::Lt ? " < "
                                                      : " > ";
      p_expr(os, *b.a);
      os << op;
      p_expr(os, *b.b);
      break;
    }
    case BoolExpr::Kind::And:
      os << "(";
      p_bool(os, *b.x);
      os << " && ";
      p_bool(os, *b.y);
      os << ")";
      break;
    case BoolExpr::Kind::Or:
      os << "(";
      p_bool(os, *b.x);
      os << " || ";
      p_bool(os, *b.y);
      os << ")";
      break;
    case BoolExpr::Kind::Not:
      os << "!(";
      p_bool(os, *b.x);
      os << ")";
      break;
  }
}

void p_session_url(std::ostream& os, const Location& l, const SessionId& s) {
  p_location(os, l);
  os << "/session/";
  p_ses(os, s);
}

void p_term(std::ostream& os, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Nil:
      os << "nil";
      break;
    case Term::Kind::Command:
      os << t.bind << " = " << cmd_word(t.cmd);
      p_deleg(os, t.deleg);
      os << "@";
      p_ref(os, t.target);
      os << " : ";
      p_ses(os, t.ses);
      if (t.arg) {
        os << " (";
        p_expr(os, *t.arg);
        os << ")";
      }
      os << " . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::Assign:
      os << t.bind << " = ";
      p_expr(os, *t.arg);
      os << " . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::Send:
      os << t.bind << "!";
      p_deleg(os, t.deleg);
      os << " ";
      p_expr(os, *t.arg);
      os << " . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::Receive:
      os << t.bind << "(" << t.param << ") . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::Spawn:
      os << "spawn(";
      p_term(os, *t.child);
      os << ") . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::If:
      os << "if ";
      p_bool(os, *t.guard);
      os << " then ";
      p_term(os, *t.child);
      os << " else ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::NewSession:
      os << "newsession";
      if (!t.symbolic) {
        os << " ";
        p_session_url(os, t.ses_loc, t.ses_id);
      }
      os << " . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::DropSession:
      os << "dropsession";
      if (!t.symbolic) {
        os << " ";
        p_session_url(os, t.ses_loc, t.ses_id);
      }
      os << " . ";
      p_term(os, *t.cont);
      break;
    case Term::Kind::Return:
      os << "return ";
      p_expr(os, *t.arg);
      break;
    case Term::Kind::Restrict:
      os << "new " << t.bind << ".";
      p_term(os, *t.cont);
      break;
  }
}

void p_resource(std::ostream& os, const Resource& r) {
  if (r.is_value)
    p_value(os, *r.val);
  else
    p_term(os, *r.prog);
}

void p_network(std::ostream& os, const Network& n) {
  for (const auto& r : n.restricted) os << "new " << r << ".(";
  for (std::size_t i = 0; i < n.items.size(); ++i) {
    if (i) os << " || ";
    os << "[ ";
    p_resource(os, n.items[i].res);
    os << " ]@";
    p_url(os, n.items[i].url);
  }
  for (std::size_t i = 0; i < n.restricted.size(); ++i) os << ")";
}

}  // namespace

std::string print(const Url& u) {
  std::ostringstream os;
  p_url(os, u);
  return os.str();
}
std::string print(const Location& l) {
  std::ostringstream os;
  p_location(os, l);
  return os.str();
}
std::string print(const SessionId& s) {
  std::ostringstream os;
  p_ses(os, s);
  return os.str();
}
std::string print(const RelPath& p) {
  std::ostringstream os;
  p_relpath(os, p);
  return os.str();
}
std::string print(const Pattern& p) {
  std::ostringstream os;
  p_pattern(os, p);
  return os.str();
}
std::string print(const Ref& r) {
  std::ostringstream os;
  p_ref(os, r);
  return os.str();
}
std::string print(const OpName& op) {
  std::ostringstream os;
  p_opname(os, op);
  return os.str();
}
std::string print(const Deleg& d) {
  std::ostringstream os;
  p_deleg(os, d);
  return os.str();
}
std::string print(const Value& v) {
  std::ostringstream os;
  p_value(os, v);
  return os.str();
}
std::string print(const Expr& e) {
  std::ostringstream os;
  p_expr(os, e);
  return os.str();
}
std::string print(const BoolExpr& b) {
  std::ostringstream os;
  p_bool(os, b);
  return os.str();
}
std::string print(const Term& t) {
  std::ostringstream os;
  p_term(os, t);
  return os.str();
}
std::string print(const Resource& r) {
  std::ostringstream os;
  p_resource(os, r);
  return os.str();
}
std::string print(const Network& n) {
  std::ostringstream os;
  p_network(os, n);
  return os.str();
}

std::string print_alpha(const Network& n) {
  // Alias by first occurrence in the item text (binder prefix excluded), so
  // binder list order does not affect the alpha-normal form.
  Network body = n;
  body.restricted.clear();
  std::string s = print(body);
  // Rename each restricted name to a positional alias, in order of first
  // occurrence in the printed text; names are whole identifier tokens.
  std::map<std::size_t, const Name*> firsts;
  auto find_tok = [&](const Name& w, std::size_t from) -> std::size_t {
    std::size_t pos = from;
    while ((pos = s.find(w, pos)) != std::string::npos) {
      bool left_ok = pos == 0 || (!std::isalnum(static_cast<unsigned char>(s[pos - 1])) &&
                                  s[pos - 1] != '_');
      std::size_t end = pos + w.size();
      bool right_ok = end >= s.size() || (!std::isalnum(static_cast<unsigned char>(s[end])) &&
                                          s[end] != '_');
      if (left_ok && right_ok) return pos;
      ++pos;
    }
    return std::string::npos;
  };
  for (const auto& r : n.restricted) {
    auto p = find_tok(r, 0);
    if (p != std::string::npos) firsts.emplace(p, &r);
  }
  int idx = 0;
  std::map<Name, std::string> alias;
  for (const auto& [pos, name] : firsts) alias[*name] = "%" + std::to_string(idx++);
  for (const auto& r : n.restricted)
    if (!alias.count(r)) alias[r] = "%" + std::to_string(idx++);
  std::string out;
  out.reserve(s.size() + 16);
  {
    std::vector<std::string> binders;
    for (const auto& r : n.restricted) binders.push_back(alias[r]);
    std::sort(binders.begin(), binders.end());
    out += "nu[";
    for (std::size_t k = 0; k < binders.size(); ++k) {
      if (k) out += ",";
      out += binders[k];
    }
    out += "] ";
  }
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string w = s.substr(i, j - i);
      auto it = alias.find(w);
      out += (it == alias.end()) ? w : it->second;
      i = j;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

}  // namespace webos
