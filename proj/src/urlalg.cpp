#include "webos/urlalg.hpp"

#include <algorithm>

namespace webos {

std::vector<Name> abs_segments(const UrlBase& b) {
  std::vector<Name> out;
  switch (b.extra) {
    case ExtraKind::None:
      break;
    case ExtraKind::Exec:
      out.push_back("exec");
      break;
    case ExtraKind::Application:
      out.push_back("application");
      break;
    case ExtraKind::Session:
      out.push_back("session");
      if (b.ses) out.push_back(b.ses->is_ns() ? "ns" : b.ses->id);
      break;
  }
  out.insert(out.end(), b.segments.begin(), b.segments.end());
  return out;
}

std::string url_id(const Url& u) {
  std::string s;
  if (u.base.var_root)
    s = "<" + u.base.root_var + ">";
  else
    s = "//" + u.base.loc.host + "/" + u.base.loc.ctx;
  for (const auto& seg : abs_segments(u.base)) s += "/" + seg;
  return s;
}

std::optional<Url> url_from_segments(const Location& l, const std::vector<Name>& segs,
                                     bool collection) {
  Url u;
  u.base.loc = l;
  u.collection = collection;
  std::size_t i = 0;
  if (i < segs.size()) {
    if (segs[i] == "exec") {
      u.base.extra = ExtraKind::Exec;
      ++i;
    } else if (segs[i] == "application") {
      u.base.extra = ExtraKind::Application;
      ++i;
    } else if (segs[i] == "session") {
      u.base.extra = ExtraKind::Session;
      ++i;
      if (i < segs.size()) {
        if (is_reserved_word(segs[i]) && segs[i] != "ns") return std::nullopt;
        u.base.ses = segs[i] == "ns" ? SessionId::ns() : SessionId::named(segs[i]);
        ++i;
      }
    }
  }
  for (; i < segs.size(); ++i) {
    if (is_reserved_word(segs[i]) || segs[i] == "..") return std::nullopt;
    u.base.segments.push_back(segs[i]);
  }
  return u;
}

std::optional<Url> url_dir(const Url& u) {
  if (u.base.var_root) return std::nullopt;
  auto segs = abs_segments(u.base);
  if (segs.empty()) return std::nullopt;
  segs.pop_back();
  return url_from_segments(u.base.loc, segs, true);
}

std::optional<RelPath> root_path(const Url& u) {
  if (u.base.var_root || u.base.extra != ExtraKind::None) return std::nullopt;
  return RelPath{u.base.segments, u.collection};
}

bool in_int_g(const Url& u) {
  if (u.base.var_root || !u.base.segments.empty() || !u.collection) return false;
  if (u.base.extra == ExtraKind::None) return true;
  if (u.base.extra == ExtraKind::Exec) return true;
  if (u.base.extra == ExtraKind::Session && !u.base.ses) return true;
  return false;
}

bool in_int_d(const Url& u) {
  if (u.base.var_root || !u.base.segments.empty() || !u.collection) return false;
  return u.base.extra == ExtraKind::None || u.base.extra == ExtraKind::Application;
}

// Append `path` to `segs`, eliminating "..".  False if it climbs above the
// context root.
static bool push_path(std::vector<Name>& segs, const RelPath& path) {
  for (const auto& s : path.segs) {
    if (s == "..") {
      if (segs.empty()) return false;
      segs.pop_back();
    } else {
      segs.push_back(s);
    }
  }
  return true;
}

std::optional<Url> resolve_url(const Url& base, const Ref& ref) {
  if (ref.base == RefBase::Abs) {
    if (ref.url.base.var_root) return std::nullopt;
    return ref.url;
  }
  if (base.base.var_root || !base.collection) return std::nullopt;
  std::vector<Name> segs;
  switch (ref.base) {
    case RefBase::Rel:
      segs = abs_segments(base.base);
      break;
    case RefBase::Root:
      break;
    case RefBase::ExecRoot:
      segs.push_back("exec");
      break;
    default:
      return std::nullopt;  // unresolved symbolic base
  }
  if (!push_path(segs, ref.path)) return std::nullopt;
  return url_from_segments(base.base.loc, segs, ref.path.collection);
}

Location resolve_ctx(const Url& base, const DelegEntry& entry) {
  return entry.self ? base.base.loc : entry.ctx;
}

Location resolve_ctx_self(const Url& base) { return base.base.loc; }

bool pat_member(const RelPath& path, const Pattern& pat) {
  if (path.segs.size() < pat.segs.size()) return false;
  if (!std::equal(pat.segs.begin(), pat.segs.end(), path.segs.begin())) return false;
  if (pat.wildcard)
    return path.segs.size() > pat.segs.size() ||
           (path.segs.size() == pat.segs.size() && path.collection);
  return path.segs.size() == pat.segs.size() && !path.collection;
}

std::strong_ordering pat_order(const Pattern& a, const Pattern& b) {
  if (auto c = a.segs.size() <=> b.segs.size(); c != 0) return c;
  // an exact pattern is more specific than a wildcard of the same depth
  if (auto c = static_cast<int>(!a.wildcard) <=> static_cast<int>(!b.wildcard); c != 0)
    return c;
  return a.segs <=> b.segs;
}

RelPath pat_dir(const Pattern& p) {
  if (p.wildcard) return {p.segs, true};
  auto segs = p.segs;
  if (!segs.empty()) segs.pop_back();
  return {segs, true};
}

RelPath path_minus(const RelPath& path, const Pattern& pat) {
  if (!pat.wildcard) return {{}, true};
  return {std::vector<Name>(path.segs.begin() + static_cast<long>(pat.segs.size()),
                            path.segs.end()),
          path.collection};
}

std::vector<DeployedPat> pats(const Network& net) {
  std::vector<DeployedPat> out;
  for (int i = 0; i < static_cast<int>(net.items.size()); ++i) {
    const Located& it = net.items[i];
    if (!it.res.is_value || it.res.val->kind != Value::Kind::Deployed) continue;
    const Url& u = it.url;
    if (u.base.var_root || u.base.extra != ExtraKind::Exec ||
        u.base.segments.size() != 1 || !u.collection)
      continue;
    out.push_back({u.base.loc, it.res.val->pattern, i});
  }
  return out;
}

std::optional<Pattern> maxpat(const Network& net, const Location& l, const RelPath& path) {
  std::optional<Pattern> best;
  for (const auto& dp : pats(net)) {
    if (dp.loc != l || !pat_member(path, dp.pat)) continue;
    if (!best || pat_order(dp.pat, *best) > 0) best = dp.pat;
  }
  return best;
}

UrlIndex::UrlIndex(const Network& net, const std::vector<int>& exclude) {
  for (int i = 0; i < static_cast<int>(net.items.size()); ++i) {
    if (std::find(exclude.begin(), exclude.end(), i) != exclude.end()) continue;
    const Url& u = net.items[i].url;
    if (u.base.var_root) continue;
    auto segs = abs_segments(u.base);
    stored_.emplace_back(u.base.loc, segs);
    // the url and all its collection prefixes down to the context root
    std::string id = "//" + u.base.loc.host + "/" + u.base.loc.ctx;
    ids_[id] = true;
    for (const auto& s : segs) {
      id += "/" + s;
      ids_[id] = true;
    }
  }
}

bool UrlIndex::contains(const Url& u) const {
  if (u.base.var_root) return false;
  return ids_.count(url_id(u)) != 0;
}

bool UrlIndex::has_strict_extension(const Url& u) const {
  if (u.base.var_root) return false;
  auto segs = abs_segments(u.base);
  for (const auto& [loc, ss] : stored_) {
    if (loc != u.base.loc || ss.size() <= segs.size()) continue;
    if (std::equal(segs.begin(), segs.end(), ss.begin())) return true;
  }
  return false;
}

bool match(const Url& target, const Pattern& pat, const Network& net,
           const std::vector<int>& exclude) {
  auto path = root_path(target);
  if (!path) return false;
  if (!pat_member(*path, pat)) return false;
  // liveness: stored url, a collection prefix of one, or a virtual resource
  // managed by a wildcard component at the same location
  UrlIndex idx(net, exclude);
  bool live = idx.contains(target) || pat.wildcard;
  if (!live) {
    for (const auto& dp : pats(net)) {
      if (std::find(exclude.begin(), exclude.end(), dp.pos) != exclude.end()) continue;
      if (dp.loc == target.base.loc && dp.pat.wildcard && pat_member(*path, dp.pat)) {
        live = true;
        break;
      }
    }
  }
  if (!live) return false;
  // maximality against the rest of the net
  for (const auto& dp : pats(net)) {
    if (std::find(exclude.begin(), exclude.end(), dp.pos) != exclude.end()) continue;
    if (dp.loc == target.base.loc && pat_member(*path, dp.pat) &&
        pat_order(dp.pat, pat) > 0)
      return false;
  }
  return true;
}

bool cond(const Url& collection, const Config& cfg) {
  if (in_int_g(collection)) return true;
  auto it = cfg.cond_overrides.find(url_id(collection));
  return it != cfg.cond_overrides.end() ? it->second : false;
}

std::optional<Location> loc_lookup(const Config& cfg, const Location& l, const Name& type) {
  auto it = cfg.loc_capability.find({l, type});
  if (it == cfg.loc_capability.end()) return std::nullopt;
  return it->second;
}

Name value_type(const Value& v) {
  if (v.kind == Value::Kind::Passive || v.kind == Value::Kind::Deployed) return v.type;
  return "data";
}

}  // namespace webos
