#include "doctest.h"
#include "webos/engine.hpp"
#include "webos/eval.hpp"
#include "webos/parser.hpp"
#include "webos/printer.hpp"

using namespace webos;

namespace {

const Config kCfg;

std::string eval_str(const std::string& net_text) {
  // evaluate the expression of the leading assign in a one-item net
  Network n = parse_network("[ x = " + net_text + " . nil ]@//h/c/p");
  auto v = eval_expr(*n.items[0].res.prog->arg, kCfg);
  return v ? print(**v) : "<error>";
}

// run a net to termination under the deterministic policy
Network run_det(const std::string& text, const Config& cfg = kCfg, int max = 1000) {
  Engine eng(parse_network(text), cfg);
  eng.run(Policy::det(), max);
  return eng.net();
}

std::vector<TraceEvent> trace_det(const std::string& text, const Config& cfg = kCfg) {
  Engine eng(parse_network(text), cfg);
  return eng.run(Policy::det(), 1000).trace;
}

std::string value_at(const Network& n, const std::string& url) {
  std::string id = url_id(parse_url(url));
  for (const auto& it : n.items)
    if (it.res.is_value && url_id(it.url) == id) return print(*it.res.val);
  return "<absent>";
}

bool has_rule(const std::vector<TraceEvent>& tr, RuleId r) {
  for (const auto& ev : tr)
    if (ev.rule == r) return true;
  return false;
}

}  // namespace

TEST_CASE("expression evaluation") {
  CHECK(eval_str("5") == "5");
  CHECK(eval_str("2 + 3") == "5");
  CHECK(eval_str("tag<1 + 1>") == "tag<2>");
  CHECK(eval_str("ok + 1") == "<error>");
}

TEST_CASE("boolean evaluation") {
  Config cfg;
  auto check = [&](const std::string& s, bool want) {
    Network n = parse_network("[ if " + s + " then nil else nil ]@//h/c/p");
    auto b = eval_bool(*n.items[0].res.prog->guard, cfg);
    REQUIRE(b.has_value());
    CHECK(*b == want);
  };
  check("ok == ok", true);
  check("3 < 2", false);
  check("err == ok", false);
  check("1 != 2 && 2 > 1", true);
}

TEST_CASE("sync applies the payload and the delegation substitution") {
  Network n = run_det(
      "[ z!^{//h/c1:s9} (2 + 3) . nil ]@//h/c/p || "
      "[ z(x) . r = put^{}@//h/c1/f : ns (x) . nil ]@//h/c/q || [ ok ]@//h/c1/g");
  // payload arrived evaluated; the annotation toward //h/c1 was rewritten
  bool found = false;
  for (const auto& it : n.items)
    if (!it.res.is_value && print(*it.res.prog).find(": s9") != std::string::npos)
      found = true;
  // the put already ran (default rules ignore unknown sessions), so check
  // the stored value instead when the program finished
  if (!found) CHECK(value_at(n, "//h/c1/f") == "5");
}

TEST_CASE("sync with empty sls leaves the receiver unchanged") {
  auto tr = trace_det("[ z!^{} (5) . nil ]@//h/c/p || [ z(x) . nil ]@//h/c/q");
  REQUIRE(tr.size() == 1);
  CHECK(tr[0].rule == RuleId::Sync);
}

TEST_CASE("spawn places the child under a fresh name at the collection") {
  Network n = run_det("[ spawn(y = put^{}@//h/c/f : ns (1) . nil) . nil ]@//h/c/p/");
  CHECK(value_at(n, "//h/c/f") == "1");
  CHECK(n.restricted.size() == 1);  // the fresh spawn directory
}

TEST_CASE("spawn at a single-resource url is stuck, not an error") {
  Engine eng(parse_network("[ spawn(nil) . nil ]@//h/c/p"), kCfg);
  auto rr = eng.run(Policy::det(), 100);
  CHECK(rr.terminal);
  CHECK(rr.trace.empty());
  REQUIRE(rr.stuck.size() == 1);
  CHECK(rr.stuck[0] == "//h/c/p");
}

TEST_CASE("if selects a branch; unevaluable guards are stuck") {
  CHECK(has_rule(trace_det("[ if ok == ok then nil else nil ]@//h/c/p"), RuleId::IfT));
  CHECK(has_rule(trace_det("[ if 1 < 0 then nil else nil ]@//h/c/p"), RuleId::IfF));
  Engine eng(parse_network("[ if err == 1 + ok then nil else nil ]@//h/c/p"), kCfg);
  auto rr = eng.run(Policy::det(), 100);
  CHECK(rr.trace.empty());
  CHECK(rr.stuck.size() == 1);
}

TEST_CASE("command error: absent get, blocked delete, orphan put") {
  Network n = run_det(
      "[ x = get^{}@//h/c/missing : ns . a = put^{}@//h/c/r1 : ns (x) . nil ]@//h/c/p1 || "
      "[ y = delete^{}@//h/c/dir/ : ns . b = put^{}@//h/c/r2 : ns (y) . nil ]@//h/c/p2 || "
      "[ z = put^{}@//h/c/no/parent : ns (1) . c = put^{}@//h/c/r3 : ns (z) . nil ]@//h/c/p3 || "
      "[ 1 ]@//h/c/dir/kid");
  CHECK(value_at(n, "//h/c/r1") == "err");
  CHECK(value_at(n, "//h/c/r2") == "err");
  CHECK(value_at(n, "//h/c/r3") == "err");
}

TEST_CASE("put: overwrite, create under live parent, application attributes") {
  Network n = run_det(
      "[ x = put^{}@//h/c/f : ns (5) . nil ]@//h/c/p1 || [ 1 ]@//h/c/f");
  CHECK(value_at(n, "//h/c/f") == "5");

  Network n2 = run_det("[ x = put^{}@//h/c/fresh : ns (5) . nil ]@//h/c/p1");
  CHECK(value_at(n2, "//h/c/fresh") == "5");  // l/ is implicitly live

  Network n3 = run_det("[ x = put^{}@//h/c/application/k : ns (7) . nil ]@//h/c/p1");
  CHECK(value_at(n3, "//h/c/application/k") == "7");
}

TEST_CASE("get preserves the resource; delete requires leaf") {
  Network n = run_det(
      "[ x = get^{}@//h/c/f : ns . y = get^{}@//h/c/f : ns . "
      "r = put^{}@//h/c/out : ns (x + y) . nil ]@//h/c/p || [ 7 ]@//h/c/f");
  CHECK(value_at(n, "//h/c/f") == "7");
  CHECK(value_at(n, "//h/c/out") == "14");

  auto tr = trace_det(
      "[ x = delete^{}@//h/c/a/ : ns . nil ]@//h/c/p || [ 1 ]@//h/c/a/x");
  CHECK(has_rule(tr, RuleId::CmdErr));
  CHECK_FALSE(has_rule(tr, RuleId::Delete));
}

TEST_CASE("get on an exec url returns the component value") {
  Network n = run_det(
      "[ a = get^{}@//h/c/exec/m/ : ns . r = put^{}@//h/c/out : ns (a) . nil ]@//h/c/p || "
      "[ comp:code [_ -> /a/*] <get(q) = return 1 ; > ]@//h/c/exec/m/");
  CHECK(value_at(n, "//h/c/out") ==
        "comp:code [_ -> /a/*] <get(q) = return 1 ; >");
}

TEST_CASE("rexec mints distinct fresh names and honors cond") {
  Network n = run_det(
      "[ a = rexec^{}@//h/c/items/ : ns (1) . b = rexec^{}@//h/c/items/ : ns (2) . "
      "r = put^{}@//h/c/done : ns (ok) . nil ]@//h/c/p || [ 0 ]@//h/c/items/seed");
  CHECK(value_at(n, "//h/c/done") == "ok");
  int singles = 0;
  for (const auto& it : n.items)
    if (!it.url.collection && it.url.base.segments.size() == 2 &&
        it.url.base.segments[0] == "items" && is_generated_name(it.url.base.segments[1]))
      ++singles;
  CHECK(singles == 2);

  // at the session root the fresh subresource is forced to be a collection
  Network n2 = run_det("[ a = rexec^{}@//h/c/session/ : ns (ok) . nil ]@//h/c/p");
  bool coll = false;
  for (const auto& it : n2.items)
    if (it.url.base.extra == ExtraKind::Session && it.url.collection) coll = true;
  CHECK(coll);
}

TEST_CASE("capture: builtin get with ipath resolution") {
  Network n = run_det(
      "[ comp:code [_ -> /a/*] <get(q) = return 9 ; > ]@//h/c/exec/m/ || "
      "[ x = get^{}@//h/c/a/q : ns . r = put^{}@//h/c/out : ns (x) . nil ]@//h/c/p");
  CHECK(value_at(n, "//h/c/out") == "9");
}

TEST_CASE("capture excludes the default rule (footer condition)") {
  // the stored value exists, but the component owns the pattern
  auto tr = trace_det(
      "[ comp:code [_ -> /a/*] <get(q) = return 9 ; > ]@//h/c/exec/m/ || "
      "[ 5 ]@//h/c/a/q || "
      "[ x = get^{}@//h/c/a/q : ns . nil ]@//h/c/p");
  CHECK(has_rule(tr, RuleId::CaptureCom));
  CHECK_FALSE(has_rule(tr, RuleId::Get));

  // internal delegation bypasses the capture (runtime form, built directly
  // because the static grammar only allows internal commands with relative
  // targets)
  Network n = parse_network(
      "[ comp:code [_ -> /a/*] <get(q) = return 9 ; > ]@//h/c/exec/m/ || "
      "[ 5 ]@//h/c/a/q || [ nil ]@//h/c/p");
  Ref tgt;
  tgt.base = RefBase::Abs;
  tgt.url = parse_url("//h/c/a/q");
  n.items[2].res.prog = t_command("x", Cmd::Get, Deleg::internal_marker(), tgt,
                                  SessionId::ns(), nullptr, t_nil());
  Engine eng(n, kCfg);
  auto rr = eng.run(Policy::det(), 100);
  CHECK(has_rule(rr.trace, RuleId::Get));
  CHECK_FALSE(has_rule(rr.trace, RuleId::CaptureCom));
}

TEST_CASE("user-op dispatch needs the op defined and rexec undefined") {
  // op undefined -> error path
  auto tr = trace_det(
      "[ comp:code [_ -> /a/*] <f(v) = return ok ; > ]@//h/c/exec/m/ || "
      "[ 5 ]@//h/c/a/q || "
      "[ x = rexec^{}@//h/c/a/q : ns (other<1>) . nil ]@//h/c/p");
  CHECK(has_rule(tr, RuleId::CmdErr));

  // component defining rexec captures the whole request as a builtin
  auto tr2 = trace_det(
      "[ comp:code [_ -> /a/*] <rexec(v) = return ok ; f(v) = return err ; > ]"
      "@//h/c/exec/m/ || [ 5 ]@//h/c/a/q || "
      "[ x = rexec^{}@//h/c/a/q : ns (f<1>) . nil ]@//h/c/p");
  CHECK(has_rule(tr2, RuleId::CaptureCom));
  CHECK_FALSE(has_rule(tr2, RuleId::CaptureUserop));
}

TEST_CASE("op-pair rexec at a collection stores the pair as data by default") {
  Network n = run_det(
      "[ comp:code [_ -> /a/*] <f(v) = return ok ; > ]@//h/c/exec/m/ || "
      "[ 0 ]@//h/c/a/seed || "
      "[ x = rexec^{}@//h/c/a/ : ns (f<1>) . nil ]@//h/c/p");
  bool stored_pair = false;
  for (const auto& it : n.items)
    if (it.res.is_value && print(*it.res.val) == "f<1>") stored_pair = true;
  CHECK(stored_pair);
}

TEST_CASE("op-pair rexec at a collection dispatches under the flag") {
  Config cfg;
  cfg.collection_op_dispatch = true;
  auto tr = trace_det(
      "[ comp:code [_ -> /a/*] <f(v) = return ok ; > ]@//h/c/exec/m/ || "
      "[ 0 ]@//h/c/a/seed || "
      "[ x = rexec^{}@//h/c/a/ : ns (f<1>) . nil ]@//h/c/p",
      cfg);
  CHECK(has_rule(tr, RuleId::CaptureUserop));
}

TEST_CASE("sessions: noop forms and fresh-drop-fresh") {
  auto tr = trace_det("[ newsession //h/c/session/s1 . nil ]@//h/c/p");
  CHECK(has_rule(tr, RuleId::SesNewNoop));
  auto tr2 = trace_det("[ dropsession //h/c/session/ns . nil ]@//h/c/p");
  CHECK(has_rule(tr2, RuleId::SesDropNoop));

  Network n = run_det(
      "[ newsession //h/c/session/ns . dropsession //h/c/session/ns . "
      "newsession //h/c/session/ns . x = put^{}@//h/c/session/ns/k : ns (1) . nil ]"
      "@//h/c/p");
  // the second session is a different fresh name and the write landed in it
  int session_dirs = 0;
  for (const auto& it : n.items)
    if (it.url.base.extra == ExtraKind::Session) ++session_dirs;
  CHECK(session_dirs == 2);  // second session dir + the value inside it
}

TEST_CASE("lexec errs cleanly when the code url is missing") {
  Network n = run_det(
      "[ y = lexec^{}@//h/c/lib/m : ns (0) . r = put^{}@//h/c/out : ns (y) . nil ]"
      "@//h/c/p");
  CHECK(value_at(n, "//h/c/out") == "err");
}

TEST_CASE("lexec deploys with the source codebase and a live method url") {
  Config cfg;
  cfg.loc_capability[{{"h", "c"}, "code"}] = {"h", "run"};
  Network n = run_det(
      "[ comp:code <f(v) = return v + 1 ; > ]@//h/c/lib/m || "
      "[ y = lexec^{}@//h/c/lib/m : ns (0) . q = rexec^{}@<y>/m : ns (f<5>) . "
      "r = put^{}@//h/c/out : ns (q) . nil ]@//h/c/p",
      cfg);
  CHECK(value_at(n, "//h/c/out") == "6");
  bool deployed = false;
  for (const auto& it : n.items)
    if (it.res.is_value && it.res.val->kind == Value::Kind::Deployed) {
      deployed = true;
      REQUIRE(it.res.val->codebase.has_value());
      CHECK(print(*it.res.val->codebase) == "//h/c/lib/");
      CHECK(it.url.base.loc == Location{"h", "run"});
    }
  CHECK(deployed);
}
