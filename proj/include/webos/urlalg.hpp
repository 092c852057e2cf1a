// URL and pattern algebra: reference resolution, pattern membership and
// ordering, dispatch auxiliaries (maxpat/match), and the configurable
// cond/loc hooks.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webos/ast.hpp"

namespace webos {

struct Config {
  // (context, technology type) -> context on the same host able to run it
  std::map<std::pair<Location, Name>, Location> loc_capability;
  // collection url id -> whether fresh subresources are collections
  std::map<std::string, bool> cond_overrides;
  bool collection_op_dispatch = false;
  bool gc = false;
};

// ---- url identity and structure ----

// Path after the context with reserved directories expanded into leading
// segments ("exec", "session" [id], "application").  Not defined for
// variable-rooted urls.
std::vector<Name> abs_segments(const UrlBase& b);

// Canonical identity: trailing separator stripped.
std::string url_id(const Url& u);

// Rebuild a url from a location and expanded segments.
std::optional<Url> url_from_segments(const Location& l, const std::vector<Name>& segs,
                                     bool collection);

// Parent directory (collection) of a url; nullopt for a bare context root.
std::optional<Url> url_dir(const Url& u);

// Root-relative path of the url, when it has no reserved directory.
std::optional<RelPath> root_path(const Url& u);

bool in_int_g(const Url& u);  // l/, l/session/, l/exec/
bool in_int_d(const Url& u);  // l/, l/application/

// ---- resolution ----

// Resolves a symbol-free reference against a collection base url.
// nullopt if ".." climbs above the context root or the ref still carries a
// symbolic or variable base that cannot be resolved here.
std::optional<Url> resolve_url(const Url& base, const Ref& ref);

// epsilon entries denote the context of the base url.
Location resolve_ctx(const Url& base, const DelegEntry& entry);
Location resolve_ctx_self(const Url& base);

// ---- patterns ----

bool pat_member(const RelPath& path, const Pattern& pat);
std::strong_ordering pat_order(const Pattern& a, const Pattern& b);

// Directory of a pattern: wildcard /p/x/* -> /p/x/, exact /p/x -> /p/.
RelPath pat_dir(const Pattern& p);

// Suffix of path matching *, or epsilon for an exact pattern.
// Precondition: pat_member(path, pat).
RelPath path_minus(const RelPath& path, const Pattern& pat);

// ---- network views ----

struct DeployedPat {
  Location loc;
  Pattern pat;
  int pos;  // index into Network::items
};

// Patterns of deployed components located at l/exec/m/ urls.
std::vector<DeployedPat> pats(const Network& net);

// Maximum matching pattern among components at location l, if any.
std::optional<Pattern> maxpat(const Network& net, const Location& l, const RelPath& path);

// Membership and prefix-extension queries over the stored urls of a network
// (stored urls plus all their collection prefixes, by canonical identity).
class UrlIndex {
 public:
  explicit UrlIndex(const Network& net, const std::vector<int>& exclude = {});
  bool contains(const Url& u) const;
  bool has_strict_extension(const Url& u) const;

 private:
  // per-location expanded segment lists of stored urls
  std::vector<std::pair<Location, std::vector<Name>>> stored_;
  std::map<std::string, bool> ids_;
};

// match(l path, pat, R): liveness /\ membership /\ maximality.  `exclude`
// removes the focused resources from R.  Liveness counts stored urls, their
// collection prefixes, and urls covered by a deployed wildcard pattern at
// the same location (component-managed virtual resources).
bool match(const Url& target, const Pattern& pat, const Network& net,
           const std::vector<int>& exclude);

// ---- configuration hooks ----

// Forced true on Int_g members; otherwise the configured override or false.
bool cond(const Url& collection, const Config& cfg);

std::optional<Location> loc_lookup(const Config& cfg, const Location& l, const Name& type);

// Components carry their type annotation; everything else is "data".
Name value_type(const Value& v);

}  // namespace webos
