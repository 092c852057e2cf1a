// Canonical pretty-printer.  Printing is deterministic; two structurally
// equal fragments print identically, which the rest of the code base uses
// as its equality test.
#pragma once

#include <string>

#include "webos/ast.hpp"

namespace webos {

std::string print(const Url& u);
std::string print(const Location& l);
std::string print(const SessionId& s);
std::string print(const RelPath& p);
std::string print(const Pattern& p);
std::string print(const Ref& r);
std::string print(const OpName& op);
std::string print(const Deleg& d);
std::string print(const Value& v);
std::string print(const Expr& e);
std::string print(const BoolExpr& b);
std::string print(const Term& t);
std::string print(const Resource& r);
std::string print(const Network& n);

// Printed form with restricted names renamed to a0, a1, ... in order of
// first occurrence; used for equality modulo alpha.
std::string print_alpha(const Network& n);

inline std::string print(const TermPtr& t) { return print(*t); }
inline std::string print(const ValuePtr& v) { return print(*v); }

}  // namespace webos
