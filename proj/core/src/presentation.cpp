#include "semik/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "semik/errors.hpp"

namespace semik {

using nlohmann::json;

bool MonoidPresentation::length_preserving() const {
  return std::all_of(relations.begin(), relations.end(),
                     [](const auto& r) { return r.first.size() == r.second.size(); });
}

std::string MonoidPresentation::str() const {
  std::string s = "<";
  for (int i = 0; i < alphabet.size(); ++i) s += (i ? "," : "") + alphabet.name(i);
  if (!relations.empty()) s += " |";
  for (std::size_t i = 0; i < relations.size(); ++i)
    s += (i ? ", " : " ") + to_string(relations[i].first, alphabet) + " = " + to_string(relations[i].second, alphabet);
  return s + ">^+";
}

json MonoidPresentation::to_json() const {
  json rel = json::array();
  for (const auto& [u, v] : relations) rel.push_back(to_string(u, alphabet) + " = " + to_string(v, alphabet));
  return {{"alphabet", alphabet.names()}, {"relations", rel}, {"text", str()}};
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::InP: return "InP";
    case Membership::NotInP: return "NotInP";
    case Membership::Unknown: return "Unknown";
  }
  return "?";
}

json MembershipResult::to_json(const Alphabet& a) const {
  json j{{"verdict", semik::to_string(verdict)}, {"method", method}};
  if (verdict == Membership::InP) j["word"] = to_string(word, a);
  return j;
}

json Fact::to_json() const {
  json j{{"name", name}, {"value", value}, {"provenance", provenance}, {"reason", reason}};
  if (!bound.is_null()) j["bound"] = bound;
  return j;
}

namespace {

Alphabet letters(int n) {
  if (n < 1 || n > 26) throw Error(ErrorKind::InvalidParams, "generator count must lie in 1..26");
  std::string s;
  for (int i = 0; i < n; ++i) s += static_cast<char>('a' + i);
  return Alphabet::letters(s);
}

std::vector<std::pair<Word, Word>> commutations(int n) {
  std::vector<std::pair<Word, Word>> r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r.push_back({{j, i}, {i, j}});
  return r;
}

Word pow_word(int letter, long long n) { return Word(static_cast<std::size_t>(n), letter); }

Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int count_letter(const Word& w, int x) { return static_cast<int>(std::count(w.begin(), w.end(), x)); }

// Letters whose occurrence count is preserved by every relation.
std::vector<bool> invariant_letters(const MonoidPresentation& p) {
  std::vector<bool> inv(static_cast<std::size_t>(p.alphabet.size()), true);
  for (const auto& [u, v] : p.relations)
    for (int x = 0; x < p.alphabet.size(); ++x)
      if (count_letter(u, x) != count_letter(v, x)) inv[static_cast<std::size_t>(x)] = false;
  return inv;
}

void add_group_rs(Preset& P) {
  const auto& A = P.presentation.alphabet;
  std::vector<std::string> names;
  for (int i = 0; i < A.size(); ++i) {
    names.push_back(A.name(i));
    names.push_back(A.name(i) + "'");
  }
  Alphabet D(names);
  std::vector<std::pair<Word, Word>> rel;
  for (int i = 0; i < A.size(); ++i) {
    rel.push_back({{2 * i, 2 * i + 1}, {}});
    rel.push_back({{2 * i + 1, 2 * i}, {}});
  }
  for (const auto& [u, v] : P.presentation.relations) {
    Word w;
    for (int x : u) w.push_back(2 * x);
    for (auto it = v.rbegin(); it != v.rend(); ++it) w.push_back(2 * *it + 1);
    rel.push_back({w, {}});
  }
  KbOptions o;
  o.max_rules = 80;
  o.max_passes = 10;
  o.max_rule_length = 24;
  o.return_partial = true;
  P.group_rs = knuth_bendix(D, rel, WordOrder::shortlex(D.size()), o);
}

void finish_rs(Preset& P, const WordOrder& order, const KbOptions& opts = {}) {
  try {
    P.monoid_rs = knuth_bendix(P.presentation.alphabet, P.presentation.relations, order, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    KbOptions o = opts;
    o.return_partial = true;
    P.monoid_rs = knuth_bendix(P.presentation.alphabet, P.presentation.relations, order, o);
    P.notes.push_back("monoid completion did not close within budget; normal forms come from " +
                      std::string(P.model ? "the group model" : P.classes ? "word classes" : "the partial system"));
  }
}

void units_fact(Preset& P) {
  const auto& rel = P.presentation.relations;
  bool nonempty = std::all_of(rel.begin(), rel.end(), [](const auto& r) { return !r.first.empty() && !r.second.empty(); });
  if (P.presentation.length_preserving()) {
    P.facts.push_back({"units_trivial", true, "verified-exact", nullptr,
                       "relations preserve word length, so no non-empty word equals 1"});
  } else if (P.model) {
    const int r = 6;
    bool ok = true;
    for (const auto& [e, w] : P.model->ball(r))
      if (!P.model->group().is_identity(e) && P.model->in_P(P.model->group().inv(e))) ok = false;
    P.facts.push_back({"units_trivial", ok, "verified-to-bound", json{{"radius", r}},
                       "no non-trivial element of the ball has its inverse in P"});
  } else {
    P.facts.push_back({"units_trivial", nonempty, "assumed", nullptr, "both relation sides non-empty"});
  }
}

long long get_int(const json& params, const char* key, long long dflt) {
  if (!params.contains(key)) return dflt;
  const auto& v = params.at(key);
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    try {
      std::size_t pos = 0;
      long long x = std::stoll(v.get<std::string>(), &pos);
      if (pos == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::InvalidParams, std::string("parameter '") + key + "' must be an integer");
}

// m-entry: integer >= 2, or infinity (encoded 0).
long long get_m(const json& v) {
  if (v.is_string() && (v == "inf" || v == "infinity" || v == "oo")) return 0;
  if (v.is_number_integer() && v.get<long long>() >= 2) return v.get<long long>();
  if (v.is_string()) {
    try {
      long long x = std::stoll(v.get<std::string>());
      if (x >= 2) return x;
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::InvalidParams, "Coxeter-type entries must be integers >= 2 or inf, got " + v.dump());
}

Preset artin(const json& params) {
  const int n = static_cast<int>(get_int(params, "n", 2));
  Preset P;
  P.family = "artin";
  P.presentation.alphabet = letters(n);
  std::vector<std::vector<long long>> M(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 1));
  if (params.contains("M")) {
    const auto& m = params.at("M");
    if (!m.is_array() || m.size() != static_cast<std::size_t>(n))
      throw Error(ErrorKind::InvalidParams, "M must be an n x n matrix");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = get_m(m.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)));
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
          throw Error(ErrorKind::InvalidParams, "M must be symmetric");
  } else {
    long long m = params.contains("m") ? get_m(params.at("m")) : 2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m;
  }
  bool all2 = true, allinf = true;
  json Mj = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      long long m = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      row.push_back(i == j ? json(1) : m == 0 ? json("inf") : json(m));
      if (i >= j) continue;
      if (m != 2) all2 = false;
      if (m != 0) allinf = false;
      if (m == 0) continue;
      Word u, v;
      for (long long t = 0; t < m; ++t) {
        u.push_back(t % 2 == 0 ? i : j);
        v.push_back(t % 2 == 0 ? j : i);
      }
      P.presentation.relations.push_back({u, v});
    }
    Mj.push_back(row);
  }
  P.params = {{"n", n}, {"M", Mj}};
  if (n == 1 || allinf) {
    P.model = std::make_shared<FreeMonoidModel>(P.presentation.alphabet);
  } else if (all2) {
    P.model = std::make_shared<FreeAbelianMonoidModel>(P.presentation.alphabet);
  }
  P.classes = std::make_shared<HomogeneousModel>(P.presentation.alphabet, P.presentation.relations);
  KbOptions o;
  o.max_rules = 60;
  o.max_passes = 8;
  finish_rs(P, WordOrder::shortlex(n), o);
  if (!P.model) add_group_rs(P);
  P.facts.push_back({"embeds", true, "assumed", nullptr, "Artin monoids embed in their Artin groups (Paris)"});
  P.facts.push_back({"right_lcm", true, "assumed", nullptr, "Artin monoids are right LCM (Brieskorn-Saito)"});
  units_fact(P);
  return P;
}

Preset bs(const json& params) {
  const long long k = get_int(params, "k", 2), l = get_int(params, "l", 3);
  if (k == 0 || l == 0) throw Error(ErrorKind::InvalidParams, "bs needs k and l nonzero");
  if (std::max(std::abs(k), std::abs(l)) > 64) throw Error(ErrorKind::InvalidParams, "|k|, |l| must be at most 64");
  Preset P;
  P.family = "bs";
  P.params = {{"k", k}, {"l", l}};
  P.presentation.alphabet = Alphabet::letters("ab");
  const Word a{0};
  Word u, v;
  if (k > 0 && l > 0) {
    u = cat(a, pow_word(1, k));
    v = cat(pow_word(1, l), a);
  } else if (k < 0 && l > 0) {
    u = a;
    v = cat(cat(pow_word(1, l), a), pow_word(1, -k));
  } else if (k > 0 && l < 0) {
    u = cat(cat(pow_word(1, -l), a), pow_word(1, k));
    v = a;
  } else {
    u = cat(pow_word(1, -l), a);
    v = cat(a, pow_word(1, -k));
  }
  P.presentation.relations.push_back({u, v});
  P.model = std::make_shared<BSMonoidModel>(k, l);
  KbOptions o;
  o.max_rules = 40;
  o.max_passes = 6;
  finish_rs(P, k > 0 && l > 0 ? WordOrder::wreath({1, 0}) : WordOrder::shortlex({1, 0}), o);
  P.facts.push_back({"embeds", true, "verified-exact", nullptr,
                     "every defining relation holds in BS(k,l) and P-membership is decided on Britton normal forms"});
  P.facts.push_back({"right_lcm", true, "assumed", nullptr, "Baumslag-Solitar monoids are right LCM (Spielberg)"});
  units_fact(P);
  return P;
}

Preset one_relator(const json& params) {
  Preset P;
  P.family = "one_relator";
  if (!params.contains("u") || !params.contains("v")) throw Error(ErrorKind::InvalidParams, "one_relator needs u and v");
  const std::string us = params.at("u").get<std::string>(), vs = params.at("v").get<std::string>();
  json gens = params.value("generators", json(3));
  if (gens.is_string() && (gens == "inf" || gens == "infinity" || gens == "oo")) {
    P.symbolic = true;
    std::string s;
    for (char c : us + vs)
      if (std::isalpha(static_cast<unsigned char>(c)) && s.find(c) == std::string::npos) s += c;
    std::sort(s.begin(), s.end());
    P.presentation.alphabet = Alphabet::letters(s);
  } else if (gens.is_array()) {
    P.presentation.alphabet = Alphabet(gens.get<std::vector<std::string>>());
  } else {
    P.presentation.alphabet = letters(static_cast<int>(get_int(params, "generators", 3)));
  }
  const auto& A = P.presentation.alphabet;
  Word u = parse_word(us, A), v = parse_word(vs, A);
  if (u.empty() || v.empty()) throw Error(ErrorKind::InvalidParams, "u and v must be non-empty words");
  if (u.front() == v.front()) throw Error(ErrorKind::InvalidParams, "the first letter of u must differ from the first letter of v");
  for (const auto& [x, y] : {std::pair{u, v}, std::pair{v, u}})
    if (x.size() == 1 && count_letter(y, x[0]) == 0)
      throw Error(ErrorKind::InvalidParams, "generator " + A.name(x[0]) + " is redundant (equals a word in the others)");
  P.presentation.relations.push_back({u, v});
  P.params = {{"generators", P.symbolic ? json("inf") : json(A.names())}, {"u", to_string(u, A)}, {"v", to_string(v, A)}};
  if (P.symbolic) {
    P.notes.push_back("infinite generating set: only the letters occurring in u and v are materialised; no bounded checks run");
  } else {
    if (P.presentation.length_preserving()) {
      P.classes = std::make_shared<HomogeneousModel>(A, P.presentation.relations);
      add_group_rs(P);
    }
    KbOptions o;
    o.max_rules = 60;
    o.max_passes = 8;
    finish_rs(P, WordOrder::shortlex(A.size()), o);
  }
  bool rlcm = u.size() == v.size();
  std::string why = "l(u) = l(v)";
  for (const auto& [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
    if (x.size() >= y.size()) continue;
    for (int a = 0; a < A.size(); ++a)
      if (count_letter(x, a) > count_letter(y, a)) {
        rlcm = true;
        why = "shorter side has more occurrences of " + A.name(a);
      }
  }
  P.facts.push_back({"embeds", true, "assumed", nullptr, "first letters of u and v differ, so P embeds in the one-relator group"});
  P.facts.push_back({"right_lcm", rlcm, "assumed", nullptr, rlcm ? "word-length criterion: " + why : "word-length criterion not met"});
  P.facts.push_back({"units_trivial", true, "assumed", nullptr, "u and v are non-empty"});
  if (!P.symbolic && P.presentation.length_preserving()) {
    P.facts.back().provenance = "verified-exact";
    P.facts.back().reason = "relations preserve word length";
  }
  return P;
}

}  // namespace

Word Preset::normal_form(const Word& w) const {
  if (monoid_rs && monoid_rs->status() != RsStatus::Partial) return monoid_rs->normal_form(w);
  if (model) return *model->positive(model->eval(w));
  if (classes) return classes->canon(w);
  if (monoid_rs) return monoid_rs->normal_form(w);
  return w;
}

const MonoidOracle* Preset::oracle() const {
  if (model) return model.get();
  return classes.get();
}

const Fact* Preset::fact(const std::string& name) const {
  for (const auto& f : facts)
    if (f.name == name) return &f;
  return nullptr;
}

MembershipResult Preset::group_membership(const GroupWord& g0, int depth) const {
  GroupWord g = free_reduce(g0);
  if (model) {
    auto w = model->positive(model->eval(g));
    if (w) return {Membership::InP, *w, "group normal form"};
    return {Membership::NotInP, {}, "group normal form"};
  }
  if (is_positive(g)) return {Membership::InP, normal_form(positive_part(g)), "positive reduced word"};
  const auto& A = presentation.alphabet;
  auto inv = invariant_letters(presentation);
  std::vector<long long> sums(static_cast<std::size_t>(A.size()), 0);
  long long total = 0;
  for (const auto& l : g) {
    sums[static_cast<std::size_t>(l.gen)] += l.exp;
    total += l.exp;
  }
  for (int x = 0; x < A.size(); ++x)
    if (inv[static_cast<std::size_t>(x)] && sums[static_cast<std::size_t>(x)] < 0)
      return {Membership::NotInP, {}, "exponent sum of " + A.name(x) + " is negative"};
  if (!presentation.length_preserving()) return {Membership::Unknown, {}, "no decision procedure for this presentation"};
  if (total < 0) return {Membership::NotInP, {}, "total exponent sum is negative"};
  if (!classes || !group_rs) return {Membership::Unknown, {}, "no word-class model"};
  if (total > depth) return {Membership::Unknown, {}, "candidate length exceeds depth"};
  // g is in P iff it equals a positive word of length `total` in G.
  double space = std::pow(static_cast<double>(A.size()), static_cast<double>(total));
  if (space > 2e5) return {Membership::Unknown, {}, "candidate space too large"};
  std::set<Word> reps;
  for (const auto& w : classes->ball_words(static_cast<int>(total)))
    if (static_cast<long long>(w.size()) == total) reps.insert(w);
  for (const auto& c : reps) {
    bool ok = true;
    for (int x = 0; x < A.size() && ok; ++x)
      if (inv[static_cast<std::size_t>(x)] && count_letter(c, x) != sums[static_cast<std::size_t>(x)]) ok = false;
    if (!ok) continue;
    Word t;
    for (const auto& l : g) t.push_back(2 * l.gen + (l.exp > 0 ? 0 : 1));
    for (auto it = c.rbegin(); it != c.rend(); ++it) t.push_back(2 * *it + 1);
    if (group_rs->normal_form(t).empty()) return {Membership::InP, c, "group rewriting to the empty word"};
  }
  if (group_rs->status() == RsStatus::Confluent)
    return {Membership::NotInP, {}, "confluent group rewriting separates all candidates"};
  return {Membership::Unknown, {}, "group rewriting incomplete"};
}

json Preset::to_json() const {
  json j{{"family", family}, {"params", params}, {"presentation", presentation.to_json()}};
  if (monoid_rs) j["rewriting"] = monoid_rs->to_json();
  j["model"] = model ? json(model->name()) : json(nullptr);
  j["word_classes"] = classes != nullptr;
  if (group_rs) j["group_rewriting_status"] = to_string(group_rs->status());
  j["symbolic"] = symbolic;
  json f = json::array();
  for (const auto& x : facts) f.push_back(x.to_json());
  j["facts"] = f;
  j["notes"] = notes;
  return j;
}

Preset make_preset(const std::string& family, const json& params) {
  if (family == "free") {
    Preset P;
    P.family = "free";
    int n = static_cast<int>(get_int(params, "n", 2));
    P.params = {{"n", n}};
    P.presentation.alphabet = letters(n);
    P.model = std::make_shared<FreeMonoidModel>(P.presentation.alphabet);
    P.monoid_rs = RewritingSystem(P.presentation.alphabet, WordOrder::shortlex(n), {}, RsStatus::Confluent);
    P.facts.push_back({"embeds", true, "verified-exact", nullptr, "free monoid in free group"});
    P.facts.push_back({"right_lcm", true, "verified-exact", nullptr, "prefix order"});
    units_fact(P);
    return P;
  }
  if (family == "abelian") {
    Preset P;
    P.family = "abelian";
    int n = static_cast<int>(get_int(params, "n", 2));
    P.params = {{"n", n}};
    P.presentation.alphabet = letters(n);
    P.presentation.relations = commutations(n);
    P.model = std::make_shared<FreeAbelianMonoidModel>(P.presentation.alphabet);
    P.classes = std::make_shared<HomogeneousModel>(P.presentation.alphabet, P.presentation.relations);
    finish_rs(P, WordOrder::shortlex(n));
    P.facts.push_back({"embeds", true, "verified-exact", nullptr, "N^n in Z^n"});
    P.facts.push_back({"right_lcm", true, "verified-exact", nullptr, "componentwise maximum"});
    units_fact(P);
    return P;
  }
  if (family == "numerical") {
    Preset P;
    P.family = "numerical";
    std::vector<long long> gens;
    if (params.contains("gens")) {
      for (const auto& g : params.at("gens")) gens.push_back(g.is_string() ? std::stoll(g.get<std::string>()) : g.get<long long>());
    } else {
      gens = {2, 3};
    }
    auto m = std::make_shared<NumericalModel>(gens);
    P.model = m;
    P.params = {{"gens", m->gens()}};
    const int n = static_cast<int>(m->gens().size());
    P.presentation.alphabet = m->alphabet();
    P.presentation.relations = commutations(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long long gi = m->gens()[static_cast<std::size_t>(i)], gj = m->gens()[static_cast<std::size_t>(j)];
        long long d = std::gcd(gi, gj);
        P.presentation.relations.push_back({pow_word(j, gi / d), pow_word(i, gj / d)});
      }
    if (n > 2) P.notes.push_back("relations listed are valid but may not present the monoid; normal forms use the model");
    P.facts.push_back({"embeds", true, "verified-exact", nullptr, "subsemigroup of Z"});
    P.facts.push_back({"right_lcm", n == 1, "verified-exact", nullptr, n == 1 ? "cyclic" : "two generators have no common principal multiple ideal"});
    units_fact(P);
    return P;
  }
  if (family == "artin") return artin(params);
  if (family == "bs") return bs(params);
  if (family == "one_relator") return one_relator(params);
  if (family == "congruence")
    throw Error(ErrorKind::InvalidParams,
                "congruence monoids need number-field arithmetic (rings of integers, prime ideal factorisation, "
                "ray class data mod m); this preset is a stub");
  throw Error(ErrorKind::InvalidParams, "unknown preset '" + family + "'");
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> t;
  std::string s;
  while (in >> s) t.push_back(s);
  return t;
}

json scalar_value(const std::string& s) {
  if (s.find(',') != std::string::npos) {
    json arr = json::array();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) arr.push_back(scalar_value(item));
    return arr;
  }
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  return s;
}

}  // namespace

Preset parse_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<Alphabet> alphabet;
  std::vector<std::pair<std::string, std::string>> rel_text, rule_text;
  std::optional<std::pair<std::string, std::vector<std::string>>> order_spec;
  auto err = [&](const std::string& msg) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto t = tokens(line);
    if (t.empty()) continue;
    const std::string& kw = t[0];
    if (kw == "preset") {
      if (t.size() < 2) err("preset needs a family name");
      json params = json::object();
      for (std::size_t i = 2; i < t.size(); ++i) {
        auto eq = t[i].find('=');
        if (eq == std::string::npos) err("expected key=value, got '" + t[i] + "'");
        params[t[i].substr(0, eq)] = scalar_value(t[i].substr(eq + 1));
      }
      return make_preset(t[1], params);
    }
    if (kw == "numerical") {
      json gens = json::array();
      for (std::size_t i = 1; i < t.size(); ++i) gens.push_back(scalar_value(t[i]));
      return make_preset("numerical", {{"gens", gens}});
    }
    if (kw == "alphabet") {
      if (alphabet) err("alphabet given twice");
      alphabet = Alphabet(std::vector<std::string>(t.begin() + 1, t.end()));
    } else if (kw == "relation" || kw == "rule") {
      const std::string sep = kw == "relation" ? "=" : "->";
      auto body = line.substr(line.find(kw) + kw.size());
      auto pos = body.find(sep);
      if (pos == std::string::npos) err(kw + " needs '" + sep + "'");
      auto& dst = kw == "relation" ? rel_text : rule_text;
      dst.emplace_back(body.substr(0, pos), body.substr(pos + sep.size()));
    } else if (kw == "order") {
      if (t.size() < 2 || (t[1] != "shortlex" && t[1] != "wreath")) err("order must be shortlex or wreath");
      order_spec = {t[1], std::vector<std::string>(t.begin() + 2, t.end())};
    } else {
      err("unknown directive '" + kw + "'");
    }
  }
  if (!alphabet) throw Error(ErrorKind::ParseError, "missing alphabet line");
  Preset P;
  P.family = "custom";
  P.presentation.alphabet = *alphabet;
  const auto& A = *alphabet;
  for (const auto& [u, v] : rel_text) P.presentation.relations.push_back({parse_word(u, A), parse_word(v, A)});
  WordOrder order = WordOrder::shortlex(A.size());
  if (order_spec) {
    std::vector<int> asc;
    for (const auto& n : order_spec->second) {
      int i = A.index(n);
      if (i < 0) throw Error(ErrorKind::ParseError, "order names unknown generator '" + n + "'");
      asc.push_back(i);
    }
    if (static_cast<int>(asc.size()) != A.size()) throw Error(ErrorKind::ParseError, "order must list every generator once");
    order = order_spec->first == "shortlex" ? WordOrder::shortlex(asc) : WordOrder::wreath(asc);
  }
  const int n = A.size();
  auto rel = P.presentation.relations;
  auto comm = commutations(n);
  auto norm = [](std::vector<std::pair<Word, Word>> r) {
    for (auto& [u, v] : r)
      if (v < u) std::swap(u, v);
    std::sort(r.begin(), r.end());
    return r;
  };
  if (rel.empty()) {
    P.model = std::make_shared<FreeMonoidModel>(A);
  } else if (norm(rel) == norm(comm)) {
    P.model = std::make_shared<FreeAbelianMonoidModel>(A);
  }
  if (P.presentation.length_preserving()) {
    P.classes = std::make_shared<HomogeneousModel>(A, P.presentation.relations);
    if (!P.model) add_group_rs(P);
  }
  if (!rule_text.empty()) {
    std::vector<Rule> rules;
    for (const auto& [l, r] : rule_text) {
      Rule x{parse_word(l, A), parse_word(r, A)};
      if (!order.less(x.rhs, x.lhs)) throw Error(ErrorKind::ParseError, "rule does not decrease in " + order.str(A));
      rules.push_back(x);
    }
    P.monoid_rs = RewritingSystem(A, order, rules, RsStatus::UserAsserted);
  } else {
    finish_rs(P, order);
  }
  units_fact(P);
  P.params = {{"order", order.str(A)}};
  return P;
}

Preset load_presentation_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

}  // namespace semik
