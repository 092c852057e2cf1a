// The four substitution families used by the reduction rules, plus
// capture-avoiding name-for-value substitution.
#pragma once

#include <functional>
#include <map>

#include "webos/ast.hpp"

namespace webos {

using FreshFn = std::function<Name()>;

using SlsMap = std::map<Location, SessionId>;

SlsMap to_sls_map(const Deleg& d);
Deleg from_sls_map(const SlsMap& m);

// {v/x}: capture-avoiding; binders that would capture a name free in v are
// alpha-renamed via `fresh`.
TermPtr subst_name(const TermPtr& t, const Name& x, const ValuePtr& v, const FreshFn& fresh);
ExprPtr subst_name(const ExprPtr& e, const Name& x, const ValuePtr& v, const FreshFn& fresh);
ValuePtr subst_name(const ValuePtr& w, const Name& x, const ValuePtr& v, const FreshFn& fresh);

// Delegation update (sync): rewrites, for each l:S' in sls, every command
// annotation toward l, every delegation entry for l, and every session url
// l/session/_ to carry S'.  Does not descend into component declarations.
TermPtr apply_delegation(const TermPtr& t, const SlsMap& sls);

// Session rebind (session rules): all session annotations and session urls
// for context l become s.
TermPtr apply_session_rebind(const TermPtr& t, const Location& l, const SessionId& s);

// Symbol resolution (capture theta1): <session> -> l/session/ns,
// <application> -> l/application, <phbase> -> l ++ dir(pat),
// <ipath> -> ipath; also instantiates symbolic session constructs at l.
TermPtr apply_capture_symbols(const TermPtr& t, const Location& l, const Pattern& pat,
                              const RelPath& ipath);

// Command resolution (capture theta2): every non-internal command prefix has
// its target resolved against `external_base`, its delegation entries
// resolved against `deleg_base` with session ns, and its annotation set to
// ns; internal commands resolve against `internal_base` keeping the marker.
TermPtr apply_capture_commands(const TermPtr& t, const Url& internal_base,
                               const Url& external_base, const Url& deleg_base);

// {z^sls / return}: every return e becomes a send of e on z carrying sls.
TermPtr replace_return(const TermPtr& t, const Name& chan, const Deleg& sls);

}  // namespace webos
