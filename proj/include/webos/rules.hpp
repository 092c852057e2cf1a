// Redex recognizers and rewrites for the reduction rules: basic rules,
// default (uncaptured) command behaviours, component capture, sessions and
// local execution.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "webos/ast.hpp"
#include "webos/subst.hpp"
#include "webos/urlalg.hpp"

namespace webos {

enum class RuleId {
  Assign, Sync, Spawn, IfT, IfF, CmdErr,
  PutOverwrite, PutCreate, Get, Delete, RexecFresh,
  CaptureCom, CaptureUserop,
  SesNewNoop, SesNew, SesDropNoop, SesDrop,
  Lexec
};

const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& s);

struct Redex {
  RuleId rule;
  int pos;        // resource driving the step
  int pos2 = -1;  // partner: target value, component, or receiver
};

struct ApplyResult {
  Network net;
  std::vector<Name> fresh;
  std::string note;
};

// All redexes headed at `pos`, excluding CmdErr (the engine adds CmdErr when
// a command has no other redex, realizing the negative premise).
std::vector<Redex> redexes_at(const Network& net, const Config& cfg, int pos);

// Whether the program at `pos` starts with a command prefix subject to the
// error rule.
bool command_head(const Network& net, int pos);

ApplyResult apply(const Network& net, const Config& cfg, const Redex& r, const FreshFn& fresh);

// Urls of the resources participating in a redex, target urls included.
std::vector<std::string> focus_urls(const Network& net, const Redex& r);

}  // namespace webos
