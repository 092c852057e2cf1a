#include "webos/eval.hpp"

#include "webos/printer.hpp"

namespace webos {

bool value_equal(const Value& a, const Value& b) { return print(a) == print(b); }

std::optional<ValuePtr> eval_expr(const Expr& e, const Config& cfg) {
  switch (e.kind) {
    case Expr::Kind::Val:
      return e.val;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      auto a = eval_expr(*e.a, cfg);
      auto b = eval_expr(*e.b, cfg);
      if (!a || !b) return std::nullopt;
      if ((*a)->kind != Value::Kind::Num || (*b)->kind != Value::Kind::Num)
        return std::nullopt;
      long long r = e.kind == Expr::Kind::Add ? (*a)->num + (*b)->num
                                              : (*a)->num - (*b)->num;
      return v_num(r);
    }
    case Expr::Kind::MkPair: {
      auto p = eval_expr(*e.a, cfg);
      if (!p) return std::nullopt;
      return v_pair(e.op, *p);
    }
    case Expr::Kind::Loc: {
      auto a = eval_expr(*e.a, cfg);
      if (!a) return std::nullopt;
      auto l = loc_lookup(cfg, e.loc, value_type(**a));
      if ((*a)->kind == Value::Kind::Err || !l) return v_err();
      Ref r;
      r.base = RefBase::Abs;
      r.url.base.loc = *l;
      r.url.collection = true;
      return v_ref(r);
    }
    case Expr::Kind::Deploy: {
      auto a = eval_expr(*e.a, cfg);
      if (!a) return std::nullopt;
      if ((*a)->kind != Value::Kind::Passive) return v_err();
      return v_deployed((*a)->decls, (*a)->type, e.codebase, e.pattern);
    }
  }
  return std::nullopt;
}

std::optional<bool> eval_bool(const BoolExpr& b, const Config& cfg) {
  switch (b.kind) {
    case BoolExpr::Kind::Lit:
      return b.lit;
    case BoolExpr::Kind::Eq:
    case BoolExpr::Kind::Ne: {
      auto x = eval_expr(*b.a, cfg);
      auto y = eval_expr(*b.b, cfg);
      if (!x || !y) return std::nullopt;
      bool eq = value_equal(**x, **y);
      return b.kind == BoolExpr::Kind::Eq ? eq : !eq;
    }
    case BoolExpr::Kind::Lt:
    case BoolExpr::Kind::Gt: {
      auto x = eval_expr(*b.a, cfg);
      auto y = eval_expr(*b.b, cfg);
      if (!x || !y) return std::nullopt;
      if ((*x)->kind != Value::Kind::Num || (*y)->kind != Value::Kind::Num)
        return std::nullopt;
      return b.kind == BoolExpr::Kind::Lt ? (*x)->num < (*y)->num
                                          : (*x)->num > (*y)->num;
    }
    case BoolExpr::Kind::And: {
      auto x = eval_bool(*b.x, cfg);
      if (!x) return std::nullopt;
      if (!*x) return false;
      return eval_bool(*b.y, cfg);
    }
    case BoolExpr::Kind::Or: {
      auto x = eval_bool(*b.x, cfg);
      if (!x) return std::nullopt;
      if (*x) return true;
      return eval_bool(*b.y, cfg);
    }
    case BoolExpr::Kind::Not: {
      auto x = eval_bool(*b.x, cfg);
      if (!x) return std::nullopt;
      return !*x;
    }
  }
  return std::nullopt;
}

}  // namespace webos
