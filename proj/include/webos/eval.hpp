// Expression evaluation.  Expressions are closed at evaluation time; free
// names stand for themselves as data.
#pragma once

#include <optional>

#include "webos/ast.hpp"
#include "webos/urlalg.hpp"

namespace webos {

// nullopt on type mismatch (e.g. ok + 1).  loc() and deploy() degrade to
// err when the lookup fails or the source is not a passive component, so a
// failed local-execution chain errs instead of wedging.
std::optional<ValuePtr> eval_expr(const Expr& e, const Config& cfg);
std::optional<bool> eval_bool(const BoolExpr& b, const Config& cfg);

bool value_equal(const Value& a, const Value& b);

}  // namespace webos
