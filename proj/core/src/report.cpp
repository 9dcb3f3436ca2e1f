#include "semik/report.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "semik/errors.hpp"
#include "semik/hull.hpp"
#include "semik/ktheory.hpp"
#include "semik/orbits.hpp"
#include "semik/paction.hpp"
#include "semik/presentation.hpp"
#include "semik/smashlab.hpp"
#include "semik/tiling.hpp"

#ifndef SEMIK_VERSION
#define SEMIK_VERSION "0.0.0"
#endif

namespace semik {

using json = nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool valid_key(const std::string& k) {
  if (k.empty() || !(std::islower(static_cast<unsigned char>(k[0])) || k[0] == '_')) return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

const std::vector<std::string> kPresetKeys{"preset", "n", "m", "k", "l", "gens", "u", "v", "generators"};

std::vector<std::string> with_presets(std::vector<std::string> keys) {
  keys.insert(keys.end(), kPresetKeys.begin(), kPresetKeys.end());
  return keys;
}

json param_value(const std::string& key, const std::string& s) {
  if (key == "gens") {
    json arr = json::array();
    for (const auto& x : split_list(s)) arr.push_back(x);
    return arr;
  }
  if (key == "generators" && s.find(',') != std::string::npos) return split_list(s);
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  return s;
}

bool get_bool(const RunConfig& c, const std::string& key, bool dflt) {
  auto v = c.get(key);
  if (!v) return dflt;
  if (*v == "true" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "no" || *v == "0") return false;
  throw Error(ErrorKind::ConfigError, key + " must be true or false");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

// Preset from a presentation file or a named family with its parameters.
Preset load_preset(const RunConfig& c, const std::string& file_key) {
  if (auto file = c.get(file_key)) {
    std::string text = read_file(*file);
    if (!c.seed_order.empty()) {
      Preset probe = parse_presentation(text);
      const auto& names = probe.presentation.alphabet.names();
      std::set<std::string> want(names.begin(), names.end()), got(c.seed_order.begin(), c.seed_order.end());
      if (want != got || got.size() != c.seed_order.size())
        throw Error(ErrorKind::ConfigError, "seed_order must list every generator of the presentation exactly once");
      text += "\norder shortlex";
      for (const auto& s : c.seed_order) text += " " + s;
      text += "\n";
    }
    return parse_presentation(text);
  }
  if (!c.seed_order.empty()) throw Error(ErrorKind::ConfigError, "seed_order applies to presentation files only");
  auto family = c.get("preset");
  if (!family) throw Error(ErrorKind::ConfigError, "give a preset or a " + file_key + " file");
  json params = json::object();
  for (const auto& k : kPresetKeys)
    if (k != "preset" && c.has(k)) params[k] = param_value(k, *c.get(k));
  return make_preset(*family, params);
}

json bounded(const std::string& name, bool ok, const json& bound, const json& detail) {
  json j{{"name", name}, {"verdict", ok ? "Holds" : "Fails"}};
  j["provenance"] = "verified-to-bound";
  j["bound"] = bound;
  j["detail"] = detail;
  return j;
}

json run_hull(const RunConfig& c) {
  Preset P = load_preset(c, "presentation");
  const int depth = c.get_positive("depth", 2), radius = c.get_positive("radius", 6);
  auto checks = split_list(c.get_or("check", "laws"));
  json out{{"presentation", P.to_json()}};
  json results = json::array();
  std::optional<Hull> h;
  if (P.model && !P.symbolic) {
    h.emplace(P.model, HullConfig{depth, radius, static_cast<std::size_t>(c.get_positive("max_elements", 200000))});
    h->generate();
    std::size_t idem = 0;
    for (const auto& s : h->elements()) idem += h->is_idempotent(s) ? 1 : 0;
    out["hull"] = {{"model", P.model->name()},
                   {"elements", h->elements().size()},
                   {"idempotents", idem},
                   {"exact_ideals", h->exact()},
                   {"bound", h->bound()}};
  } else {
    out["hull"] = {{"skipped", true}, {"reason", P.symbolic ? "symbolic presentation" : "no group model for this presentation"}};
  }
  auto need_hull = [&](const std::string& what) {
    if (!h) throw Error(ErrorKind::PrerequisiteFailed, what + " needs a hull, which this presentation does not provide");
  };
  for (const auto& chk : checks) {
    if (chk == "laws") {
      need_hull("laws");
      auto inv = check_inverse_laws(*h), pure = check_idempotent_pure(*h);
      results.push_back(bounded("inverse_laws", inv.failures == 0, h->bound(), inv.to_json()));
      results.push_back(bounded("idempotent_pure", pure.failures == 0, h->bound(), pure.to_json()));
    } else if (chk == "independence") {
      need_hull("independence");
      auto r = independence_check(*h).to_json();
      r["name"] = "independence";
      results.push_back(r);
    } else if (chk == "rlcm") {
      const MonoidOracle* o = P.oracle();
      if (!o) throw Error(ErrorKind::PrerequisiteFailed, "rlcm needs a computable monoid");
      auto r = right_lcm_check(h ? &*h : nullptr, *o, depth, radius).to_json();
      r["name"] = "rlcm";
      results.push_back(r);
    } else if (chk == "toeplitz") {
      if (!P.model) throw Error(ErrorKind::PrerequisiteFailed, "toeplitz needs a group model");
      auto el = c.get("element");
      if (!el) throw Error(ErrorKind::ConfigError, "toeplitz needs an element");
      auto r = toeplitz_check(*P.model, parse_group_word(*el, P.model->alphabet()), depth, radius).to_json();
      r["name"] = "toeplitz";
      r["element"] = *el;
      results.push_back(r);
    } else {
      throw Error(ErrorKind::ConfigError, "unknown check '" + chk + "' (laws, independence, rlcm, toeplitz)");
    }
  }
  out["checks"] = results;
  return out;
}

struct LoadedAction {
  PartialAction action;
  json source;
};

LoadedAction load_action(const RunConfig& c) {
  if (auto f = c.get("from_file")) return {action_from_json(read_json(*f)), {{"file", *f}}};
  if (auto e = c.get("example")) {
    int size = c.get_positive("size", 4);
    return {example_action(*e, size), {{"example", *e}, {"size", size}}};
  }
  if (c.has("from_hull") || c.has("preset")) {
    Preset P = load_preset(c, "from_hull");
    if (!P.model || P.symbolic) throw Error(ErrorKind::PrerequisiteFailed, "the presentation has no group model to build a hull from");
    HullConfig hc{c.get_positive("depth", 2), c.get_positive("radius", 6),
                  static_cast<std::size_t>(c.get_positive("max_elements", 200000))};
    Hull h(P.model, hc);
    h.generate();
    json src{{"hull", P.to_json()}, {"bound", h.bound()}};
    return {action_from_hull(h), src};
  }
  throw Error(ErrorKind::ConfigError, "give from_file, from_hull, preset or example");
}

json run_paction(const RunConfig& c) {
  auto [a, src] = load_action(c);
  auto v = a.verify();
  json out{{"source", src}, {"action", a.to_json()}, {"verification", v.to_json()}, {"verdict", v.ok() ? "Holds" : "Fails"}};
  if (a.windowed()) {
    out["provenance"] = "verified-to-bound";
    out["bound"] = {{"group_window", a.G.size()}};
  } else {
    out["provenance"] = "verified-exact";
    out["invariant_basis"] = a.verify_invariant_basis().to_json();
    if (get_bool(c, "roundtrip", false)) out["roundtrip"] = roundtrip_action(a).to_json();
  }
  if (src.contains("bound")) out["bound"] = src["bound"];
  return out;
}

json run_orbits(const RunConfig& c) {
  auto [a, src] = load_action(c);
  json out = orbit_report(a, get_bool(c, "verify", true));
  out["source"] = src;
  if (src.contains("bound")) {
    out["bound"] = out.contains("bound") ? json{{"hull", src["bound"]}, {"group_window", out["bound"]["group_window"]}}
                                         : json{{"hull", src["bound"]}};
  }
  return out;
}

std::vector<int> group_indices(const PartialAction& a, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) {
    int i = a.G.index(n);
    if (i < 0) throw Error(ErrorKind::ConfigError, "unknown group element '" + n + "'");
    out.push_back(i);
  }
  return out;
}

json run_smashlab(const RunConfig& c) {
  const std::string name = c.get_or("action", "z2_swap");
  auto which = split_list(c.get_or("verify", "all"));
  static const std::set<std::string> known{"phi", "psi", "irho", "nilpotent", "conjugation", "neumann", "all"};
  for (const auto& w : which)
    if (!known.count(w)) throw Error(ErrorKind::ConfigError, "unknown verification '" + w + "'");
  const bool custom = c.has("sigma") || c.has("subgroup") || c.has("seed") || c.has("cap") || c.has("redundant_len") ||
                      name.find('.') != std::string::npos;
  if (!custom) return smashlab_example(name, c.get_positive("size", 4)).report(which);
  PartialAction a = name.find('.') != std::string::npos ? action_from_json(read_json(name)) : example_action(name, c.get_positive("size", 4));
  std::vector<int> sigma, F{0}, seeds;
  if (auto s = c.get("sigma")) {
    sigma = group_indices(a, split_list(*s));
  } else {
    for (int g = 0; g < a.G.size(); ++g) sigma.push_back(g);
  }
  if (auto s = c.get("subgroup")) F = group_indices(a, split_list(*s));
  if (auto s = c.get("seed")) {
    for (const auto& n : split_list(*s)) {
      int e = a.E.index(n);
      if (e <= 0) throw Error(ErrorKind::ConfigError, "unknown idempotent '" + n + "'");
      seeds.push_back(e);
    }
  } else {
    for (int e = 1; e < a.E.size(); ++e) seeds.push_back(e);
  }
  SmashConfig sc;
  sc.cap = static_cast<std::size_t>(c.get_positive("cap", static_cast<int>(sc.cap)));
  sc.redundant_len = c.get_positive("redundant_len", sc.redundant_len);
  SmashLab lab(std::move(a), sigma, F, sc);
  lab.build(seeds);
  return lab.report(which);
}

BcVariant parse_bc(const std::string& s) {
  if (s == "coefficients") return BcVariant::Coefficients;
  if (s == "strong") return BcVariant::Strong;
  throw Error(ErrorKind::ConfigError, "bc must be coefficients or strong");
}

json run_ktheory(const RunConfig& c) {
  KTable table = KTable::builtin();
  if (auto t = c.get("table")) table.merge(KTable::load(*t));
  KTheoryExpression x;
  if (auto f = c.get("from")) {
    json rep = read_json(*f);
    if (rep.contains("result") && rep.contains("subcommand")) {
      if (rep["subcommand"] != "orbits") throw Error(ErrorKind::ConfigError, *f + " is not an orbits report");
      rep = rep["result"];
    }
    const std::string route = c.get_or("route", "partial-crossed-product");
    Route r = Route::PartialCrossedProduct;
    if (route == "inverse-semigroup") r = Route::InverseSemigroup;
    else if (route == "semigroup") r = Route::Semigroup;
    else if (route != "partial-crossed-product") throw Error(ErrorKind::ConfigError, "unknown route '" + route + "'");
    x = resolve(formula_from_orbit_report(rep, r), table);
  } else {
    PresetOptions po;
    po.depth = c.get_positive("depth", 3);
    po.radius = c.get_positive("radius", 6);
    if (auto bc = c.get("bc")) po.bc = parse_bc(*bc);
    if (!c.has("preset")) throw Error(ErrorKind::ConfigError, "give from or preset");
    json params = json::object();
    for (const auto& k : kPresetKeys)
      if (k != "preset" && c.has(k)) params[k] = param_value(k, *c.get(k));
    x = preset_report(*c.get("preset"), params, po);
    if (c.has("table")) x = resolve(x, table);
  }
  return x.to_json();
}

json run_tiling(const RunConfig& c) {
  auto pts = c.get("points");
  if (!pts) throw Error(ErrorKind::ConfigError, "tiling needs points");
  TilingConfig tc;
  tc.max_points = static_cast<std::size_t>(c.get_positive("max_points", static_cast<int>(tc.max_points)));
  tc.table_points = static_cast<std::size_t>(c.get_positive("table_points", static_cast<int>(tc.table_points)));
  if (auto adj = c.get("adjacency")) tc.adjacency = Adjacency::load(*adj);
  return tiling_report(PointSet::parse(*pts), tc);
}

}  // namespace

std::string version() { return SEMIK_VERSION; }

std::vector<std::string> subcommands() { return {"hull", "paction", "smashlab", "orbits", "ktheory", "tiling"}; }

const std::vector<std::string>& config_keys(const std::string& sub) {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"hull", with_presets({"presentation", "depth", "radius", "max_elements", "check", "element"})},
      {"paction", with_presets({"from_file", "from_hull", "example", "size", "depth", "radius", "max_elements", "roundtrip"})},
      {"orbits", with_presets({"from_file", "from_hull", "example", "size", "depth", "radius", "max_elements", "verify"})},
      {"smashlab", {"action", "size", "sigma", "subgroup", "seed", "verify", "cap", "redundant_len"}},
      {"ktheory", with_presets({"from", "route", "bc", "depth", "radius", "table"})},
      {"tiling", {"points", "adjacency", "max_points", "table_points"}},
  };
  auto it = keys.find(sub);
  if (it == keys.end()) throw Error(ErrorKind::ConfigError, "unknown subcommand '" + sub + "'");
  return it->second;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"') quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    auto eq = body.find('=');
    auto err = [&](const std::string& msg) {
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(lineno) + ": " + msg);
    };
    if (eq == std::string::npos) err("expected key = value");
    std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
    if (!valid_key(key)) err("bad key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    else if (value.find('"') != std::string::npos) err("unbalanced quotes");
    if (!seen.insert(key).second) err("duplicate key '" + key + "'");
    c.set(key, value);
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) { return parse(read_file(path)); }

std::optional<std::string> RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& dflt) const { return get(key).value_or(dflt); }

long long RunConfig::get_int(const std::string& key, long long dflt) const {
  auto v = get(key);
  if (!v) return dflt;
  try {
    std::size_t pos = 0;
    long long x = std::stoll(*v, &pos);
    if (pos == v->size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ConfigError, key + " must be an integer, got '" + *v + "'");
}

int RunConfig::get_positive(const std::string& key, int dflt) const {
  long long x = get_int(key, dflt);
  if (x <= 0 || x > 1000000000) throw Error(ErrorKind::ConfigError, key + " must be a positive integer");
  return static_cast<int>(x);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "subcommand") {
    subcommand = value;
  } else if (key == "out") {
    out = value;
  } else if (key == "threads") {
    values_[key] = value;
    threads = get_positive("threads", 1);
    values_.erase(key);
  } else if (key == "seed_order") {
    seed_order = split_list(value);
  } else {
    values_[key] = value;
  }
}

void RunConfig::validate() const {
  if (subcommand.empty()) throw Error(ErrorKind::ConfigError, "no subcommand given");
  const auto& keys = config_keys(subcommand);
  for (const auto& [k, v] : values_)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw Error(ErrorKind::ConfigError, "key '" + k + "' is not used by " + subcommand);
  for (const auto& k : {"depth", "radius", "max_elements", "size", "cap", "redundant_len", "max_points", "table_points"})
    if (has(k)) get_positive(k, 1);
  if (threads <= 0) throw Error(ErrorKind::ConfigError, "threads must be positive");
  std::set<std::string> uniq(seed_order.begin(), seed_order.end());
  if (uniq.size() != seed_order.size()) throw Error(ErrorKind::ConfigError, "seed_order repeats a generator");
}

json RunConfig::to_json() const {
  json j{{"subcommand", subcommand}, {"threads", threads}};
  json vals = json::object();
  for (const auto& [k, v] : values_) vals[k] = v;
  j["values"] = vals;
  if (!seed_order.empty()) j["seed_order"] = seed_order;
  return j;
}

json make_report(const RunConfig& cfg, json result) {
  return {{"schema_version", kSchemaVersion},
          {"tool", "semik"},
          {"version", version()},
          {"subcommand", cfg.subcommand},
          {"config", cfg.to_json()},
          {"result", std::move(result)}};
}

json make_error_report(const RunConfig& cfg, const std::string& kind, const std::string& message, const json& payload) {
  json err{{"kind", kind}, {"message", message}};
  if (!payload.is_null()) err["partial"] = payload;
  return {{"schema_version", kSchemaVersion},
          {"tool", "semik"},
          {"version", version()},
          {"subcommand", cfg.subcommand},
          {"config", cfg.to_json()},
          {"error", err}};
}

json run(const RunConfig& cfg) {
  cfg.validate();
  json result;
  const auto& s = cfg.subcommand;
  if (s == "hull") result = run_hull(cfg);
  else if (s == "paction") result = run_paction(cfg);
  else if (s == "orbits") result = run_orbits(cfg);
  else if (s == "smashlab") result = run_smashlab(cfg);
  else if (s == "ktheory") result = run_ktheory(cfg);
  else if (s == "tiling") result = run_tiling(cfg);
  return make_report(cfg, std::move(result));
}

}  // namespace semik
