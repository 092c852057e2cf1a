// Abstract syntax for the resource-calculus interpreter: names, URLs,
// patterns, values, expressions, terms and networks.
#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace webos {

using Name = std::string;

bool is_reserved_word(const Name& n);
bool is_valid_name(const Name& n);
bool is_generated_name(const Name& n);  // "_g<k>" namespace, engine-owned

// A server plus one of its application contexts.
struct Location {
  std::string host;
  Name ctx;
  auto operator<=>(const Location&) const = default;
};

// ns (empty id) or a session name.
struct SessionId {
  Name id;
  bool is_ns() const { return id.empty(); }
  static SessionId ns() { return {}; }
  static SessionId named(Name n) { return {std::move(n)}; }
  auto operator<=>(const SessionId&) const = default;
};

// Reserved directory after the context, if any.  Session with no id is the
// session root collection l/session/; with an id it is the l/session/S base.
enum class ExtraKind { None, Exec, Application, Session };

struct UrlBase {
  bool var_root = false;  // runtime-only: the root is a name variable
  Name root_var;
  Location loc;
  ExtraKind extra = ExtraKind::None;
  std::optional<SessionId> ses;  // meaningful only for ExtraKind::Session
  std::vector<Name> segments;
};

struct Url {
  UrlBase base;
  bool collection = false;
};

// Relative path; empty segs with collection=true is epsilon.
struct RelPath {
  std::vector<Name> segs;  // ".." allowed as a segment
  bool collection = true;
};

// Root-relative literal prefix, optionally followed by /*.
struct Pattern {
  std::vector<Name> segs;
  bool wildcard = false;
};

enum class Cmd { Put, Get, Delete, Rexec, Lexec };
const char* cmd_word(Cmd c);

// Builtin command name or user-defined operation name.
struct OpName {
  bool builtin = false;
  Cmd cmd = Cmd::Put;
  Name user;
  static OpName of_cmd(Cmd c) { return {true, c, {}}; }
  static OpName of_user(Name n) { return {false, Cmd::Put, std::move(n)}; }
  bool operator==(const OpName& o) const {
    return builtin == o.builtin && (builtin ? cmd == o.cmd : user == o.user);
  }
};

// Address forms usable in a command: absolute (possibly variable-rooted),
// relative, root-relative, exec-rooted, or rooted at a resolution symbol.
enum class RefBase { Abs, Rel, Root, ExecRoot, SymSession, SymApplication, SymPhbase, SymIpath };

struct Ref {
  RefBase base = RefBase::Abs;
  Url url;       // Abs only
  RelPath path;  // all other bases
};

struct Term;
struct Expr;
struct BoolExpr;
struct Value;
struct Declaration;
using TermPtr = std::shared_ptr<const Term>;
using ExprPtr = std::shared_ptr<const Expr>;
using BoolPtr = std::shared_ptr<const BoolExpr>;
using ValuePtr = std::shared_ptr<const Value>;
using DeclPtr = std::shared_ptr<const Declaration>;

struct OpDef {
  OpName op;
  Name param;
  TermPtr body;
};

// Partial function from operation names to definitions.
struct Declaration {
  std::vector<OpDef> defs;
  const OpDef* find(const OpName& op) const;
};

struct Value {
  enum class Kind { Ok, Err, Num, NameV, Passive, Deployed, OpPair, RefV };
  Kind kind = Kind::Ok;
  long long num = 0;
  Name name;  // NameV
  DeclPtr decls;
  Name type;                    // Passive / Deployed
  std::optional<Url> codebase;  // Deployed; nullopt = bottom (service component)
  Pattern pattern;              // Deployed
  OpName op;                    // OpPair
  ValuePtr payload;             // OpPair
  Ref ref;                      // RefV
};

struct Expr {
  enum class Kind { Val, Add, Sub, MkPair, Loc, Deploy };
  Kind kind = Kind::Val;
  ValuePtr val;
  ExprPtr a, b;  // Add/Sub operands; MkPair payload, Loc type operand, Deploy source in `a`
  OpName op;     // MkPair
  Location loc;  // Loc
  std::optional<Url> codebase;  // Deploy
  Pattern pattern;              // Deploy
};

struct BoolExpr {
  enum class Kind { Lit, Eq, Ne, Lt, Gt, And, Or, Not };
  Kind kind = Kind::Lit;
  bool lit = false;
  ExprPtr a, b;
  BoolPtr x, y;
};

// Unified static/runtime delegation: rs entries have ses = ns and may use
// the self (epsilon) marker; sls entries carry concrete sessions.
struct DelegEntry {
  bool self = false;  // epsilon: context of the base URL (static form only)
  Location ctx;
  SessionId ses;
};

struct Deleg {
  bool internal = false;  // the I marker
  std::vector<DelegEntry> entries;
  static Deleg empty() { return {}; }
  static Deleg internal_marker() { return {true, {}}; }
};

struct Term {
  enum class Kind {
    Nil, Command, Assign, Send, Receive, Spawn, If,
    NewSession, DropSession, Return, Restrict
  };
  Kind kind = Kind::Nil;

  Name bind;     // Command/Assign binder; Send/Receive channel; Restrict name
  Cmd cmd = Cmd::Put;
  Deleg deleg;   // Command delegation; Send sls
  Ref target;
  SessionId ses;  // Command target session annotation
  ExprPtr arg;    // Command/Assign/Send/Return expression
  Name param;     // Receive binder
  TermPtr child;  // Spawn child; If then-branch
  BoolPtr guard;  // If
  bool symbolic = false;  // NewSession/DropSession: the <session> static form
  Location ses_loc;
  SessionId ses_id;
  TermPtr cont;  // continuation; If else-branch
};

struct Resource {
  bool is_value = false;
  ValuePtr val;
  TermPtr prog;
};

struct Located {
  Url url;
  Resource res;
};

// Parse-level network tree.
struct NetNode;
using NetPtr = std::shared_ptr<const NetNode>;
struct NetNode {
  enum class Kind { Item, Par, Restrict };
  Kind kind = Kind::Item;
  Located item;
  NetPtr a, b;  // Par
  Name bind;    // Restrict
  NetPtr body;
};

// Canonical flat network: all restrictions hoisted to the outside.
struct Network {
  std::vector<Name> restricted;
  std::vector<Located> items;
};

// ---- builders ----

ValuePtr v_ok();
ValuePtr v_err();
ValuePtr v_num(long long n);
ValuePtr v_name(Name n);
ValuePtr v_passive(DeclPtr d, Name type);
ValuePtr v_deployed(DeclPtr d, Name type, std::optional<Url> codebase, Pattern pat);
ValuePtr v_pair(OpName op, ValuePtr payload);
ValuePtr v_ref(Ref r);

ExprPtr e_val(ValuePtr v);
ExprPtr e_name(Name n);
ExprPtr e_bin(Expr::Kind k, ExprPtr a, ExprPtr b);
ExprPtr e_pair(OpName op, ExprPtr payload);
ExprPtr e_loc(Location l, ExprPtr of);
ExprPtr e_deploy(ExprPtr src, std::optional<Url> codebase, Pattern pat);

TermPtr t_nil();
TermPtr t_command(Name bind, Cmd c, Deleg d, Ref target, SessionId s, ExprPtr arg, TermPtr cont);
TermPtr t_assign(Name bind, ExprPtr e, TermPtr cont);
TermPtr t_send(Name chan, Deleg sls, ExprPtr e, TermPtr cont);
TermPtr t_receive(Name chan, Name param, TermPtr cont);
TermPtr t_spawn(TermPtr child, TermPtr cont);
TermPtr t_if(BoolPtr guard, TermPtr then_t, TermPtr else_t);
TermPtr t_newsession_sym(TermPtr cont);
TermPtr t_newsession(Location l, SessionId s, TermPtr cont);
TermPtr t_dropsession_sym(TermPtr cont);
TermPtr t_dropsession(Location l, SessionId s, TermPtr cont);
TermPtr t_return(ExprPtr e);
TermPtr t_restrict(Name n, TermPtr cont);

// ---- names ----
// free_names: variable occurrences minus binders — name values, channel
// names, session ids, variable url roots and user operation names.  Literal
// url/pattern segments are addresses, not variables, and do not count.
void free_names(const Term& t, std::set<Name>& out);
void free_names(const Value& v, std::set<Name>& out);
void free_names(const Expr& e, std::set<Name>& out);
void free_names(const BoolExpr& b, std::set<Name>& out);
void free_names(const Network& n, std::set<Name>& out);
std::set<Name> free_names(const Network& n);
std::set<Name> free_names(const Term& t);

// all_names: every identifier occurrence, binders and literal segments
// included.  This is the notion the freshness side conditions and scope
// extrusion use.
void all_names(const Term& t, std::set<Name>& out);
void all_names(const Value& v, std::set<Name>& out);
void all_names(const Url& u, std::set<Name>& out);
void all_names(const Network& n, std::set<Name>& out);
std::set<Name> all_names(const Network& n);

// Sort delegation entries into canonical order (by context, self first).
void canonicalize(Deleg& d);

}  // namespace webos
