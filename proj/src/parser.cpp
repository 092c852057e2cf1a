#include "webos/parser.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "webos/printer.hpp"

namespace webos {

namespace {

enum class Tok {
  End, Name, Int,
  DPipe, LBrack, RBrack, At, DSlash, Slash, Caret, LBrace, RBrace,
  Comma, Dot, DotDot, Bang, LParen, RParen, Lt, Gt, Eq, EqEq, BangEq,
  AmpAmp, Minus, Plus, Star, Colon, Semi, Arrow
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long num = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { lex(); }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  const std::string& src_;
  std::vector<Token> toks_;

  void lex() {
    std::size_t i = 0;
    int line = 1, col = 1;
    auto push = [&](Tok k, std::string t, long long n = 0) {
      toks_.push_back({k, std::move(t), n, line, col});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') {
        ++i; ++line; col = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i; ++col;
        continue;
      }
      if (c == '#') {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      auto two = [&](char a, char b) {
        return c == a && i + 1 < src_.size() && src_[i + 1] == b;
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
          ++j;
        push(Tok::Name, src_.substr(i, j - i));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        push(Tok::Int, src_.substr(i, j - i), std::stoll(src_.substr(i, j - i)));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      struct P2 { const char* s; Tok k; };
      static const P2 two_char[] = {
          {"||", Tok::DPipe}, {"//", Tok::DSlash}, {"==", Tok::EqEq},
          {"!=", Tok::BangEq}, {"&&", Tok::AmpAmp}, {"..", Tok::DotDot},
          {"->", Tok::Arrow}};
      bool matched = false;
      for (const auto& p : two_char) {
        if (two(p.s[0], p.s[1])) {
          push(p.k, p.s);
          i += 2; col += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      Tok k;
      switch (c) {
        case '[': k = Tok::LBrack; break;
        case ']': k = Tok::RBrack; break;
        case '@': k = Tok::At; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ',': k = Tok::Comma; break;
        case '.': k = Tok::Dot; break;
        case '!': k = Tok::Bang; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '<': k = Tok::Lt; break;
        case '>': k = Tok::Gt; break;
        case '=': k = Tok::Eq; break;
        case '-': k = Tok::Minus; break;
        case '+': k = Tok::Plus; break;
        case '*': k = Tok::Star; break;
        case ':': k = Tok::Colon; break;
        case ';': k = Tok::Semi; break;
        default:
          throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      push(k, std::string(1, c));
      ++i; ++col;
    }
    toks_.push_back({Tok::End, "", 0, line, col});
  }
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lx_(src) {}

  NetPtr network() {
    auto n = net_item();
    while (accept(Tok::DPipe)) {
      auto rhs = net_item();
      auto par = std::make_shared<NetNode>();
      par->kind = NetNode::Kind::Par;
      par->a = n;
      par->b = rhs;
      n = par;
    }
    return n;
  }

  TermPtr term() { return p_term(); }
  Url url() { return p_url(); }
  Ref ref() { return p_ref(); }
  ValuePtr value() { return p_value(); }
  Pattern pattern() { return p_pattern(); }
  Location location() { return p_location(); }

  void expect_end() {
    if (peek().kind != Tok::End) fail("trailing input");
  }
  bool at_end() const { return toks()[pos_].kind == Tok::End; }

 private:
  Lexer lx_;
  std::size_t pos_ = 0;

  const std::vector<Token>& toks() const { return lx_.tokens(); }
  const Token& peek(int k = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(k);
    return i < toks().size() ? toks()[i] : toks().back();
  }
  const Token& advance() { return toks()[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return toks()[pos_++];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, msg + " (got '" + (t.kind == Tok::End ? "<eof>" : t.text) + "')");
  }
  bool kw(const char* w, int k = 0) const {
    return peek(k).kind == Tok::Name && peek(k).text == w;
  }
  Name name_tok(const char* what) {
    const Token& t = expect(Tok::Name, what);
    if (is_reserved_word(t.text))
      throw ParseError(t.line, t.col, "reserved word '" + t.text + "' used as " + what);
    return t.text;
  }

  // ---- addresses ----

  Location p_location() {
    expect(Tok::DSlash, "'//'");
    std::string host = expect(Tok::Name, "host").text;
    while (peek().kind == Tok::Dot && peek(1).kind == Tok::Name) {
      advance();
      host += "." + advance().text;
    }
    expect(Tok::Slash, "'/' after host");
    Name ctx = name_tok("context name");
    return {host, ctx};
  }

  SessionId p_ses() {
    if (kw("ns")) {
      advance();
      return SessionId::ns();
    }
    return SessionId::named(name_tok("session id"));
  }

  // Tail of a url after its base: reserved first directory, segments and the
  // collection marker.
  void p_url_tail(Url& u, bool allow_extra) {
    bool first = true;
    while (accept(Tok::Slash)) {
      if (peek().kind == Tok::Int) {
        u.base.segments.push_back(advance().text);
        first = false;
        continue;
      }
      if (peek().kind != Tok::Name) {
        u.collection = true;
        return;
      }
      const Token& t = peek();
      if (first && allow_extra &&
          (t.text == "exec" || t.text == "session" || t.text == "application")) {
        advance();
        if (t.text == "exec")
          u.base.extra = ExtraKind::Exec;
        else if (t.text == "application")
          u.base.extra = ExtraKind::Application;
        else {
          u.base.extra = ExtraKind::Session;
          if (peek().kind == Tok::Slash && peek(1).kind == Tok::Name) {
            advance();
            u.base.ses = p_ses();
          }
        }
        first = false;
        continue;
      }
      if (is_reserved_word(t.text)) {
        if (t.text == "exec" || t.text == "session" || t.text == "application")
          fail("reserved directory '" + t.text + "' not allowed here");
        // keyword after the separator: the url ends as a collection here
        u.collection = true;
        return;
      }
      u.base.segments.push_back(advance().text);
      first = false;
    }
    u.collection = false;
  }

  Url p_url() {
    Url u;
    u.base.loc = p_location();
    p_url_tail(u, true);
    return u;
  }

  RelPath p_relpath() {
    RelPath p;
    p.collection = false;
    auto seg = [&]() -> std::optional<Name> {
      if (peek().kind == Tok::DotDot) {
        advance();
        return Name("..");
      }
      if (peek().kind == Tok::Int) return advance().text;
      if (peek().kind == Tok::Name && !is_reserved_word(peek().text))
        return advance().text;
      return std::nullopt;
    };
    auto s = seg();
    if (!s) fail("expected path segment");
    p.segs.push_back(*s);
    while (peek().kind == Tok::Slash) {
      advance();
      auto n = seg();
      if (!n) {
        p.collection = true;
        return p;
      }
      p.segs.push_back(*n);
    }
    return p;
  }

  Ref p_ref() {
    switch (peek().kind) {
      case Tok::DSlash: {
        Ref r;
        r.base = RefBase::Abs;
        r.url = p_url();
        return r;
      }
      case Tok::Slash: {
        advance();
        if (kw("exec")) {
          advance();
          expect(Tok::Slash, "'/' after exec");
          Ref r;
          r.base = RefBase::ExecRoot;
          r.path = p_relpath();
          return r;
        }
        Ref r;
        r.base = RefBase::Root;
        r.path = p_relpath();
        return r;
      }
      case Tok::Lt: {
        advance();
        const Token& t = expect(Tok::Name, "symbol name");
        std::string sym = t.text;
        expect(Tok::Gt, "'>'");
        if (sym == "session" || sym == "application" || sym == "phbase" || sym == "ipath") {
          Ref r;
          r.base = sym == "session"       ? RefBase::SymSession
                   : sym == "application" ? RefBase::SymApplication
                   : sym == "phbase"      ? RefBase::SymPhbase
                                          : RefBase::SymIpath;
          r.path = RelPath{{}, false};
          if (peek().kind == Tok::Slash && peek(1).kind != Tok::Slash) {
            advance();
            if (peek().kind == Tok::Name || peek().kind == Tok::DotDot)
              r.path = p_relpath();
            else
              r.path = RelPath{{}, true};
          }
          return r;
        }
        if (is_reserved_word(sym))
          throw ParseError(t.line, t.col, "unknown symbolic base <" + sym + ">");
        Ref r;
        r.base = RefBase::Abs;
        r.url.base.var_root = true;
        r.url.base.root_var = sym;
        p_url_tail(r.url, true);
        return r;
      }
      case Tok::Name:
      case Tok::DotDot: {
        Ref r;
        r.base = RefBase::Rel;
        r.path = p_relpath();
        return r;
      }
      default:
        fail("expected reference");
    }
  }

  Pattern p_pattern() {
    Pattern p;
    expect(Tok::Slash, "'/' starting pattern");
    p.segs.push_back(pat_seg());
    while (peek().kind == Tok::Slash) {
      advance();
      if (accept(Tok::Star)) {
        p.wildcard = true;
        return p;
      }
      p.segs.push_back(pat_seg());
    }
    return p;
  }

  Name pat_seg() {
    if (peek().kind == Tok::Int) return advance().text;
    return name_tok("pattern segment");
  }

  // ---- delegation ----

  Deleg p_deleg() {
    expect(Tok::Caret, "'^'");
    if (kw("I")) {
      advance();
      return Deleg::internal_marker();
    }
    expect(Tok::LBrace, "'{' or 'I' after '^'");
    Deleg d;
    if (!accept(Tok::RBrace)) {
      do {
        DelegEntry en;
        if (kw("eps")) {
          advance();
          en.self = true;
        } else {
          en.ctx = p_location();
          if (accept(Tok::Colon)) en.ses = p_ses();
        }
        d.entries.push_back(en);
      } while (accept(Tok::Comma));
      expect(Tok::RBrace, "'}'");
    }
    canonicalize(d);
    return d;
  }

  // ---- operations / values ----

  OpName p_opname() {
    const Token& t = expect(Tok::Name, "operation name");
    if (t.text == "put") return OpName::of_cmd(Cmd::Put);
    if (t.text == "get") return OpName::of_cmd(Cmd::Get);
    if (t.text == "delete") return OpName::of_cmd(Cmd::Delete);
    if (t.text == "rexec") return OpName::of_cmd(Cmd::Rexec);
    if (is_reserved_word(t.text))
      throw ParseError(t.line, t.col, "reserved word '" + t.text + "' as operation name");
    return OpName::of_user(t.text);
  }

  DeclPtr p_decls() {
    auto d = std::make_shared<Declaration>();
    while (peek().kind != Tok::Gt) {
      const Token& at = peek();
      OpDef def;
      def.op = p_opname();
      if (d->find(def.op))
        throw ParseError(at.line, at.col, "duplicate definition for " + print(def.op));
      expect(Tok::LParen, "'('");
      def.param = name_tok("parameter");
      expect(Tok::RParen, "')'");
      expect(Tok::Eq, "'='");
      def.body = p_term();
      if (def.op.builtin && (def.op.cmd == Cmd::Get || def.op.cmd == Cmd::Delete)) {
        std::set<Name> fn;
        free_names(*def.body, fn);
        if (fn.count(def.param))
          throw ParseError(at.line, at.col,
                           "parameter of " + print(def.op) + " occurs free in its body");
      }
      expect(Tok::Semi, "';' after definition");
      d->defs.push_back(std::move(def));
    }
    return d;
  }

  ValuePtr p_component() {
    // "comp" consumed by caller
    expect(Tok::Colon, "':' after comp");
    Name type = name_tok("component type");
    if (accept(Tok::LBrack)) {
      std::optional<Url> cbase;
      if (kw("_") || (peek().kind == Tok::Name && peek().text == "_")) {
        advance();
      } else {
        Url cb = p_url();
        if (!cb.collection) fail("codebase must be a collection url");
        cbase = cb;
      }
      expect(Tok::Arrow, "'->'");
      Pattern pat = p_pattern();
      expect(Tok::RBrack, "']'");
      expect(Tok::Lt, "'<'");
      auto d = p_decls();
      expect(Tok::Gt, "'>'");
      return v_deployed(d, type, cbase, pat);
    }
    expect(Tok::Lt, "'<'");
    auto d = p_decls();
    expect(Tok::Gt, "'>'");
    return v_passive(d, type);
  }

  ValuePtr p_value() {
    switch (peek().kind) {
      case Tok::Int:
        return v_num(advance().num);
      case Tok::Minus: {
        advance();
        const Token& t = expect(Tok::Int, "number");
        return v_num(-t.num);
      }
      case Tok::DSlash:
      case Tok::Slash:
      case Tok::Lt:
      case Tok::DotDot:
        return v_ref(p_ref());
      case Tok::Name: {
        if (kw("ok")) {
          advance();
          return v_ok();
        }
        if (kw("err")) {
          advance();
          return v_err();
        }
        if (kw("comp")) {
          advance();
          return p_component();
        }
        if (is_reserved_word(peek().text)) fail("reserved word in value position");
        if (peek(1).kind == Tok::Lt) {
          OpName op = p_opname();
          expect(Tok::Lt, "'<'");
          auto payload = p_value();
          expect(Tok::Gt, "'>'");
          return v_pair(op, payload);
        }
        if (peek(1).kind == Tok::Slash) return v_ref(p_ref());
        return v_name(advance().text);
      }
      default:
        fail("expected value");
    }
  }

  // ---- expressions ----

  ExprPtr p_expr(bool allow_pair = true) {
    auto e = p_expr_atom(allow_pair);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool plus = advance().kind == Tok::Plus;
      auto rhs = p_expr_atom(allow_pair);
      e = e_bin(plus ? Expr::Kind::Add : Expr::Kind::Sub, e, rhs);
    }
    return e;
  }

  ExprPtr p_expr_atom(bool allow_pair) {
    switch (peek().kind) {
      case Tok::LParen: {
        advance();
        auto e = p_expr(true);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Name: {
        if (kw("loc") && peek(1).kind == Tok::LParen) {
          advance();
          advance();
          Location l = p_location();
          expect(Tok::Comma, "','");
          auto of = p_expr(true);
          expect(Tok::RParen, "')'");
          return e_loc(l, of);
        }
        if (kw("deploy") && peek(1).kind == Tok::LParen) {
          advance();
          advance();
          auto src = p_expr(true);
          expect(Tok::Comma, "','");
          std::optional<Url> cbase;
          if (peek().kind == Tok::Name && peek().text == "_") {
            advance();
          } else {
            Url cb = p_url();
            if (!cb.collection) fail("codebase must be a collection url");
            cbase = cb;
          }
          expect(Tok::Comma, "','");
          Pattern pat = p_pattern();
          expect(Tok::RParen, "')'");
          return e_deploy(src, cbase, pat);
        }
        if (allow_pair && peek().kind == Tok::Name && !is_reserved_word(peek().text) &&
            peek(1).kind == Tok::Lt) {
          OpName op = p_opname();
          expect(Tok::Lt, "'<'");
          auto payload = p_expr(true);
          expect(Tok::Gt, "'>'");
          return e_pair(op, payload);
        }
        return e_val(p_value());
      }
      default:
        return e_val(p_value());
    }
  }

  BoolPtr p_bool() {
    auto b = p_bool_and();
    while (accept(Tok::DPipe)) {
      auto rhs = p_bool_and();
      auto n = std::make_shared<BoolExpr>();
      n->kind = BoolExpr::Kind::Or;
      n->x = b;
      n->y = rhs;
      b = n;
    }
    return b;
  }

  BoolPtr p_bool_and() {
    auto b = p_bool_atom();
    while (accept(Tok::AmpAmp)) {
      auto rhs = p_bool_atom();
      auto n = std::make_shared<BoolExpr>();
      n->kind = BoolExpr::Kind::And;
      n->x = b;
      n->y = rhs;
      b = n;
    }
    return b;
  }

  BoolPtr p_bool_atom() {
    if (accept(Tok::Bang)) {
      auto n = std::make_shared<BoolExpr>();
      n->kind = BoolExpr::Kind::Not;
      n->x = p_bool_atom();
      return n;
    }
    if (kw("true") || kw("false")) {
      auto n = std::make_shared<BoolExpr>();
      n->kind = BoolExpr::Kind::Lit;
      n->lit = peek().text == "true";
      advance();
      return n;
    }
    if (peek().kind == Tok::LParen) {
      // could be a grouped boolean or a parenthesized comparison operand
      std::size_t save = pos_;
      try {
        advance();
        auto b = p_bool();
        expect(Tok::RParen, "')'");
        switch (peek().kind) {
          case Tok::EqEq:
          case Tok::BangEq:
          case Tok::Lt:
          case Tok::Gt:
            break;  // it was an operand after all
          default:
            return b;
        }
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    auto a = p_expr(false);
    BoolExpr::Kind k;
    switch (peek().kind) {
      case Tok::EqEq: k = BoolExpr::Kind::Eq; break;
      case Tok::BangEq: k = BoolExpr::Kind::Ne; break;
      case Tok::Lt: k = BoolExpr::Kind::Lt; break;
      case Tok::Gt: k = BoolExpr::Kind::Gt; break;
      default:
        fail("expected comparison operator");
    }
    advance();
    auto b = p_expr(false);
    auto n = std::make_shared<BoolExpr>();
    n->kind = k;
    n->a = a;
    n->b = b;
    return n;
  }

  // ---- terms ----

  std::optional<Cmd> cmd_from(const std::string& s) {
    if (s == "put") return Cmd::Put;
    if (s == "get") return Cmd::Get;
    if (s == "delete") return Cmd::Delete;
    if (s == "rexec") return Cmd::Rexec;
    if (s == "lexec") return Cmd::Lexec;
    return std::nullopt;
  }

  TermPtr p_session_construct(bool is_new) {
    if (accept(Tok::Dot)) {
      auto cont = p_term();
      return is_new ? t_newsession_sym(cont) : t_dropsession_sym(cont);
    }
    const Token& at = peek();
    Url u = p_url();
    if (u.base.var_root || u.base.extra != ExtraKind::Session || !u.base.ses ||
        !u.base.segments.empty() || u.collection)
      throw ParseError(at.line, at.col, "expected l/session/S url in session construct");
    expect(Tok::Dot, "'.'");
    auto cont = p_term();
    return is_new ? t_newsession(u.base.loc, *u.base.ses, cont)
                  : t_dropsession(u.base.loc, *u.base.ses, cont);
  }

  TermPtr p_command(Name bind) {
    Cmd c = *cmd_from(advance().text);
    Deleg d = p_deleg();
    expect(Tok::At, "'@'");
    Ref r = p_ref();
    SessionId s = SessionId::ns();
    if (accept(Tok::Colon)) s = p_ses();
    ExprPtr arg;
    if (c != Cmd::Get && c != Cmd::Delete) {
      expect(Tok::LParen, "'(' before command argument");
      arg = p_expr(true);
      expect(Tok::RParen, "')'");
    }
    if (d.internal && r.base != RefBase::Rel && r.base != RefBase::SymIpath)
      fail("Internal delegation requires a relative target");
    expect(Tok::Dot, "'.' after command");
    auto cont = p_term();
    return t_command(std::move(bind), c, std::move(d), std::move(r), std::move(s),
                     std::move(arg), cont);
  }

  TermPtr p_term() {
    if (kw("nil")) {
      advance();
      return t_nil();
    }
    if (kw("return")) {
      advance();
      return t_return(p_expr(true));
    }
    if (kw("spawn")) {
      advance();
      expect(Tok::LParen, "'('");
      auto child = p_term();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return t_spawn(child, p_term());
    }
    if (kw("if")) {
      advance();
      auto g = p_bool();
      if (!kw("then")) fail("expected 'then'");
      advance();
      auto th = p_term();
      if (!kw("else")) fail("expected 'else'");
      advance();
      auto el = p_term();
      return t_if(g, th, el);
    }
    if (kw("newsession")) {
      advance();
      return p_session_construct(true);
    }
    if (kw("dropsession")) {
      advance();
      return p_session_construct(false);
    }
    if (kw("new")) {
      advance();
      Name n = name_tok("restricted name");
      expect(Tok::Dot, "'.'");
      return t_restrict(std::move(n), p_term());
    }
    if (peek().kind == Tok::Name && !is_reserved_word(peek().text)) {
      Name head = peek().text;
      if (peek(1).kind == Tok::Eq) {
        advance();
        advance();
        if (peek().kind == Tok::Name && cmd_from(peek().text) && peek(1).kind == Tok::Caret)
          return p_command(std::move(head));
        auto e = p_expr(true);
        expect(Tok::Dot, "'.' after assignment");
        return t_assign(std::move(head), e, p_term());
      }
      if (peek(1).kind == Tok::Bang) {
        advance();
        advance();
        Deleg sls;
        if (peek().kind == Tok::Caret) sls = p_deleg();
        if (sls.internal) fail("send cannot carry the internal marker");
        auto e = p_expr(true);
        expect(Tok::Dot, "'.' after send");
        return t_send(std::move(head), std::move(sls), e, p_term());
      }
      if (peek(1).kind == Tok::LParen) {
        advance();
        advance();
        Name param = name_tok("receive parameter");
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.' after receive");
        return t_receive(std::move(head), std::move(param), p_term());
      }
    }
    fail("expected term");
  }

 public:
  // ---- networks ----

  NetPtr net_item() {
    if (kw("new")) {
      advance();
      Name n = name_tok("restricted name");
      expect(Tok::Dot, "'.'");
      expect(Tok::LParen, "'('");
      auto body = network();
      expect(Tok::RParen, "')'");
      auto node = std::make_shared<NetNode>();
      node->kind = NetNode::Kind::Restrict;
      node->bind = std::move(n);
      node->body = body;
      return node;
    }
    expect(Tok::LBrack, "'['");
    Located it;
    it.res = p_resource();
    expect(Tok::RBrack, "']'");
    expect(Tok::At, "'@'");
    it.url = p_url();
    auto node = std::make_shared<NetNode>();
    node->kind = NetNode::Kind::Item;
    node->item = std::move(it);
    return node;
  }

  Resource p_resource() {
    Resource r;
    bool termish = false;
    if (peek().kind == Tok::Name) {
      const std::string& w = peek().text;
      if (w == "nil" || w == "spawn" || w == "if" || w == "newsession" ||
          w == "dropsession" || w == "return" || w == "new")
        termish = true;
      else if (!is_reserved_word(w) &&
               (peek(1).kind == Tok::Eq || peek(1).kind == Tok::Bang ||
                peek(1).kind == Tok::LParen))
        termish = true;
    }
    if (termish) {
      r.is_value = false;
      r.prog = p_term();
    } else {
      r.is_value = true;
      r.val = p_value();
    }
    return r;
  }
};

// Flattens the restriction tree; binders must be pairwise distinct and must
// not collide with names used outside their scope (the engine alpha-renames
// into its own namespace on load anyway).
void flatten(const NetPtr& n, std::vector<Name>& restricted, std::vector<Located>& items) {
  switch (n->kind) {
    case NetNode::Kind::Item:
      items.push_back(n->item);
      break;
    case NetNode::Kind::Par:
      flatten(n->a, restricted, items);
      flatten(n->b, restricted, items);
      break;
    case NetNode::Kind::Restrict:
      for (const auto& r : restricted)
        if (r == n->bind)
          throw ParseError(1, 1, "duplicate restricted name '" + n->bind +
                                     "'; alpha-rename the binders");
      restricted.push_back(n->bind);
      flatten(n->body, restricted, items);
      break;
  }
}

}  // namespace

Network parse_network(const std::string& text) {
  Parser p(text);
  Network net;
  if (p.at_end()) return net;
  auto tree = p.network();
  p.expect_end();
  flatten(tree, net.restricted, net.items);
  std::set<Name> fn = free_names(net);
  for (const auto& r : net.restricted)
    if (fn.count(r))
      throw ParseError(1, 1, "restricted name '" + r + "' also occurs free");
  return net;
}

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  auto t = p.term();
  p.expect_end();
  return t;
}

Url parse_url(const std::string& text) {
  Parser p(text);
  Url u = p.url();
  p.expect_end();
  return u;
}

Ref parse_ref(const std::string& text) {
  Parser p(text);
  Ref r = p.ref();
  p.expect_end();
  return r;
}

ValuePtr parse_value(const std::string& text) {
  Parser p(text);
  auto v = p.value();
  p.expect_end();
  return v;
}

Pattern parse_pattern(const std::string& text) {
  Parser p(text);
  Pattern q = p.pattern();
  p.expect_end();
  return q;
}

Location parse_location(const std::string& text) {
  Parser p(text);
  Location l = p.location();
  p.expect_end();
  return l;
}

}  // namespace webos
