#include "semik/ktheory.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "semik/errors.hpp"
#include "semik/ktable_data.hpp"
#include "semik/presentation.hpp"

namespace semik {

using nlohmann::json;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

}  // namespace

// ---- GroupDescriptor

GroupDescriptor GroupDescriptor::free_abelian(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "free-abelian needs n >= 1");
  return {Kind::FreeAbelian, n, {}, {}};
}

GroupDescriptor GroupDescriptor::finite_cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "finite-cyclic needs n >= 1");
  if (n == 1) return trivial();
  return {Kind::FiniteCyclic, n, {}, {}};
}

GroupDescriptor GroupDescriptor::free(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "free needs n >= 1");
  return {Kind::Free, n, {}, {}};
}

GroupDescriptor GroupDescriptor::opaque(std::string name, std::vector<std::string> generators) {
  return {Kind::Opaque, 0, std::move(name), std::move(generators)};
}

std::string GroupDescriptor::kind_name() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::FreeAbelian: return "free-abelian";
    case Kind::FiniteCyclic: return "finite-cyclic";
    case Kind::Free: return "free";
    case Kind::Opaque: return "opaque";
  }
  return "opaque";
}

std::string GroupDescriptor::str() const {
  switch (kind) {
    case Kind::Trivial: return "{1}";
    case Kind::FreeAbelian: return n == 1 ? "Z" : "Z^" + std::to_string(n);
    case Kind::FiniteCyclic: return "Z/" + std::to_string(n);
    case Kind::Free: return "F_" + std::to_string(n);
    case Kind::Opaque: {
      std::string s = name + "<";
      for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + generators[i];
      return s + ">";
    }
  }
  return name;
}

json GroupDescriptor::to_json() const {
  json j{{"kind", kind_name()}, {"str", str()}};
  if (kind != Kind::Trivial && kind != Kind::Opaque) j["n"] = n;
  if (kind == Kind::Opaque) {
    j["name"] = name;
    j["generators"] = generators;
  }
  return j;
}

GroupDescriptor GroupDescriptor::from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "trivial") return trivial();
  if (k == "free-abelian") return free_abelian(j.at("n").get<int>());
  if (k == "finite-cyclic") return finite_cyclic(j.at("n").get<int>());
  if (k == "free") return free(j.at("n").get<int>());
  if (k == "opaque")
    return opaque(j.value("name", std::string("G")), j.value("generators", std::vector<std::string>{}));
  throw Error(ErrorKind::ParseError, "unknown group kind '" + k + "'");
}

// ---- FgAbelianGroup

std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
  std::vector<long long> d;
  const std::size_t R = m.size();
  if (R == 0) return d;
  const std::size_t C = m[0].size();
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (m[i][j] != 0 && (pi == R || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    std::swap(m[t], m[pi]);
    for (auto& row : m) std::swap(row[t], row[pj]);
    bool done = false;
    while (!done) {
      done = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m[i][t] == 0) continue;
        const long long q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < C; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          done = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m[t][j] == 0) continue;
        const long long q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < R; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          done = false;
        }
      }
      if (!done) continue;
      for (std::size_t i = t + 1; i < R && done; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < C; ++c) m[t][c] += m[i][c];
            done = false;
            break;
          }
    }
    d.push_back(std::llabs(m[t][t]));
  }
  return d;
}

FgAbelianGroup::FgAbelianGroup(int rank, std::vector<long long> orders) : rank_(rank) {
  if (rank < 0) throw Error(ErrorKind::InvalidParams, "negative rank");
  std::vector<long long> finite;
  for (long long o : orders) {
    if (o == 0) {
      ++rank_;
    } else if (std::llabs(o) > 1) {
      finite.push_back(std::llabs(o));
    }
  }
  std::vector<std::vector<long long>> diag(finite.size(), std::vector<long long>(finite.size(), 0));
  for (std::size_t i = 0; i < finite.size(); ++i) diag[i][i] = finite[i];
  for (long long t : smith_diagonal(diag))
    if (t > 1) torsion_.push_back(t);
}

FgAbelianGroup FgAbelianGroup::cokernel(const std::vector<std::vector<long long>>& m, int rows) {
  auto d = smith_diagonal(m);
  return FgAbelianGroup(rows - static_cast<int>(d.size()), d);
}

FgAbelianGroup FgAbelianGroup::from_json(const json& j) {
  return FgAbelianGroup(j.at("rank").get<int>(), j.value("torsion", std::vector<long long>{}));
}

FgAbelianGroup operator+(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  auto t = a.torsion_;
  t.insert(t.end(), b.torsion_.begin(), b.torsion_.end());
  return FgAbelianGroup(a.rank_ + b.rank_, t);
}

std::string FgAbelianGroup::str() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  if (rank_ == 1) parts.push_back("Z");
  if (rank_ > 1) parts.push_back("Z^" + std::to_string(rank_));
  for (long long t : torsion_) parts.push_back("Z/" + std::to_string(t));
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  return s;
}

json FgAbelianGroup::to_json() const { return {{"group", str()}, {"rank", rank_}, {"torsion", torsion_}}; }

// ---- ledger and expressions

json LedgerEntry::to_json() const {
  json j{{"statement", statement}, {"provenance", provenance}};
  if (!bound.is_null()) j["bound"] = bound;
  if (!source.empty()) j["source"] = source;
  if (!check.is_null()) j["check"] = check;
  return j;
}

json Summand::to_json() const {
  json j{{"representative", representative}, {"group", group.to_json()}, {"provenance", provenance}};
  if (!bound.is_null()) j["bound"] = bound;
  return j;
}

json ResolvedK::to_json() const {
  return {{"K0", K0.to_json()}, {"K1", K1.to_json()}, {"unit_class", unit_class.empty() ? json(nullptr) : json(unit_class)}};
}

const char* to_string(Route r) {
  switch (r) {
    case Route::InverseSemigroup: return "inverse-semigroup";
    case Route::PartialCrossedProduct: return "partial-crossed-product";
    case Route::LeftInverseHull: return "left-inverse-hull";
    case Route::Semigroup: return "semigroup";
    case Route::RightLcm: return "right-lcm";
  }
  return "?";
}

namespace {

std::string default_target(Route r) {
  switch (r) {
    case Route::InverseSemigroup: return "C*_lambda(S)";
    case Route::PartialCrossedProduct: return "C_0(X) x_r G";
    case Route::LeftInverseHull: return "C*_lambda(I_l(P))";
    case Route::Semigroup:
    case Route::RightLcm: return "C*_lambda(P)";
  }
  return "?";
}

std::string formula_text(Route r, const std::string& target) {
  switch (r) {
    case Route::InverseSemigroup: return "K_*(" + target + ") = sum over [d] in S\\E^x of K_*(C*_lambda(S_d))";
    case Route::PartialCrossedProduct: return "K_*(" + target + ") = sum over [V] in G\\V^x of K_*(C*_lambda(G_V))";
    case Route::LeftInverseHull:
      return "K_*(" + target + ") = sum over [X] in I_l(P)\\J_P^x of K_*(C*_lambda(I_l(P)_X))";
    case Route::Semigroup: return "K_*(" + target + ") = sum over [X] in P\\J_P^x of K_*(C*_lambda(P_X))";
    case Route::RightLcm: return "K_*(" + target + ") = K_*(C*_lambda(P^*))";
  }
  return "";
}

LedgerEntry bc_assumption(Route r, BcVariant bc, const std::string& group) {
  const bool monoid = r == Route::Semigroup || r == Route::RightLcm || r == Route::LeftInverseHull;
  std::string who = monoid ? "P embeds into a countable group " + group + " which satisfies" : group + " satisfies";
  if (bc == BcVariant::Strong) return {who + " the strong Baum-Connes conjecture", "assumed", nullptr, "", nullptr};
  return {who + " the Baum-Connes conjecture for the coefficient algebras CalA and A built from the inverse semigroup",
          "assumed", nullptr, "", nullptr};
}

LedgerEntry verified(std::string statement, const std::string& provenance, json bound = nullptr, json check = nullptr) {
  return {std::move(statement), provenance, std::move(bound), "", std::move(check)};
}

LedgerEntry from_fact(const Fact& f, const std::string& statement) {
  LedgerEntry e{statement, f.provenance, f.bound, "", nullptr};
  if (f.provenance == "assumed") e.source = f.reason;
  else e.statement += " (" + f.reason + ")";
  return e;
}

}  // namespace

json KTheoryExpression::to_json() const {
  json s = json::array();
  for (const auto& x : summands) s.push_back(x.to_json());
  json as = json::array(), vs = json::array();
  for (const auto& e : assumptions) as.push_back(e.to_json());
  for (const auto& e : verified_inputs) vs.push_back(e.to_json());
  json j{{"target", target},
         {"route", to_string(route)},
         {"formula", formula_text(route, target)},
         {"baum_connes", bc == BcVariant::Strong ? "strong" : "coefficients"},
         {"conclusion", bc == BcVariant::Strong ? "KK-equivalence" : "K-theory isomorphism"},
         {"summands", s},
         {"resolved", resolved ? resolved->to_json() : json(nullptr)},
         {"unit_class", resolved && !resolved->unit_class.empty() ? json(resolved->unit_class) : json(nullptr)},
         {"assumptions", as},
         {"verified_inputs", vs},
         {"provenance", assumptions.empty() ? "verified-exact" : "assumed"}};
  if (!unresolved.empty()) j["unresolved"] = unresolved;
  if (!notes.empty()) j["notes"] = notes;
  if (!classification.is_null()) j["classification"] = classification;
  if (!evidence.is_null()) j["evidence"] = evidence;
  if (!refused.is_null()) j["refused"] = refused;
  return j;
}

// ---- table

namespace {

class RankParser {
 public:
  RankParser(const std::string& s, long long n) : s_(s), n_(n) {}
  long long run() {
    long long v = sum();
    skip();
    if (i_ != s_.size()) fail();
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail() const { throw Error(ErrorKind::ParseError, "bad rank expression '" + s_ + "'"); }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  long long sum() {
    long long v = product();
    while (true) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  long long product() {
    long long v = power();
    while (eat('*')) v *= power();
    return v;
  }
  long long power() {
    long long b = atom();
    if (!eat('^')) return b;
    long long e = power();
    if (e < 0 || e > 62) fail();
    long long r = 1;
    for (long long k = 0; k < e; ++k) r *= b;
    return r;
  }
  long long atom() {
    skip();
    if (eat('(')) {
      long long v = sum();
      if (!eat(')')) fail();
      return v;
    }
    if (eat('n')) return n_;
    if (eat('-')) return -atom();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail();
    return std::stoll(s_.substr(st, i_ - st));
  }

  const std::string& s_;
  long long n_;
  std::size_t i_ = 0;
};

long long eval_field(const json& v, long long n) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) return eval_rank_expression(v.get<std::string>(), n);
  throw Error(ErrorKind::ParseError, "rank must be an integer or an expression in n");
}

FgAbelianGroup eval_group(const json& g, long long n) {
  std::vector<long long> t;
  for (const auto& x : g.value("torsion", json::array())) t.push_back(eval_field(x, n));
  long long r = eval_field(g.at("rank"), n);
  if (r < 0) throw Error(ErrorKind::ParseError, "negative rank in table");
  return FgAbelianGroup(static_cast<int>(r), t);
}

}  // namespace

long long eval_rank_expression(const std::string& text, long long n) { return RankParser(text, n).run(); }

KTable KTable::from_json(const json& j) {
  KTable t;
  if (!j.contains("entries") || !j.at("entries").is_array()) throw Error(ErrorKind::ParseError, "K-table needs an entries array");
  for (const auto& e : j.at("entries")) {
    KTableEntry x{e.at("K0"), e.at("K1"), e.value("unit", std::string()), e.value("citation", std::string())};
    eval_group(x.K0, 1);
    eval_group(x.K1, 1);
    t.entries_[e.at("kind").get<std::string>()] = x;
  }
  return t;
}

KTable KTable::builtin() { return from_json(json::parse(detail::kBuiltinKTable)); }

KTable KTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read K-table " + path);
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

void KTable::merge(const KTable& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

std::optional<ResolvedK> KTable::lookup(const GroupDescriptor& g, std::string* citation) const {
  if (g.kind == GroupDescriptor::Kind::Opaque) return std::nullopt;
  auto it = entries_.find(g.kind_name());
  if (it == entries_.end()) {
    if (g.kind == GroupDescriptor::Kind::Trivial) return ResolvedK{FgAbelianGroup::Z(), FgAbelianGroup(), "1"};
    return std::nullopt;
  }
  if (citation) *citation = it->second.citation;
  return ResolvedK{eval_group(it->second.K0, g.n), eval_group(it->second.K1, g.n), it->second.unit};
}

// ---- formula

GroupDescriptor describe_stabilizer(const PartialAction& a, const StabilizerData& st) {
  if (st.G_d.size() == 1) return GroupDescriptor::trivial();
  std::vector<std::string> gens;
  for (int g : st.generators) gens.push_back(a.G.name(g));
  if (!a.windowed())
    for (int x : st.G_d)
      if (a.G.order(x) == static_cast<int>(st.G_d.size())) return GroupDescriptor::finite_cyclic(static_cast<int>(st.G_d.size()));
  return GroupDescriptor::opaque("G_" + a.E.name(st.d), gens);
}

namespace {

void require_independence(const FormulaOptions& opt) {
  const json offer{{"offered_route", to_string(Route::LeftInverseHull)}};
  if (!opt.independence)
    throw Error(ErrorKind::IndependenceUnknown, "the semigroup route needs an independence verdict", offer);
  if (opt.independence->verdict != "Holds") {
    json p = offer;
    p["independence"] = opt.independence->to_json();
    throw Error(ErrorKind::IndependenceUnknown, "independence verdict is " + opt.independence->verdict, p);
  }
}

}  // namespace

KTheoryExpression formula(const PartialAction& a, const OrbitPartition& orbits, const std::vector<StabilizerData>& stabilizers,
                          const FormulaOptions& opt) {
  if (opt.route == Route::Semigroup) require_independence(opt);
  if (stabilizers.size() != orbits.reps.size())
    throw Error(ErrorKind::InvalidParams, "one stabilizer per orbit representative is needed");
  KTheoryExpression x;
  x.route = opt.route;
  x.bc = opt.bc;
  x.target = default_target(opt.route);
  const bool windowed = a.windowed() && !opt.window_exact;
  const json wbound = windowed ? json{{"group_window", a.G.size()}} : json(nullptr);
  const std::string prov = windowed ? "verified-to-bound" : "verified-exact";
  for (std::size_t i = 0; i < orbits.reps.size(); ++i) {
    const auto& st = stabilizers[i];
    if (st.d != orbits.reps[i]) throw Error(ErrorKind::InvalidParams, "stabilizer does not match its representative");
    x.summands.push_back({a.E.name(st.d), describe_stabilizer(a, st), prov, wbound});
  }
  x.verified_inputs.push_back(verified("orbit partition of E^x into " + std::to_string(orbits.classes.size()) + " classes", prov, wbound));
  x.verified_inputs.push_back(verified("stabilizer G_d computed for every orbit representative", prov, wbound));
  if (opt.route == Route::Semigroup) {
    const auto& ind = *opt.independence;
    x.verified_inputs.push_back(verified("P satisfies the independence condition", ind.provenance, ind.bound, ind.to_json()));
    if (ind.provenance == "verified-to-bound")
      x.assumptions.push_back({"independence holds beyond the checked hull depth", "assumed", ind.bound, "", nullptr});
  }
  if (opt.route == Route::PartialCrossedProduct && !a.windowed()) {
    auto rep = a.verify_invariant_basis();
    if (!rep.ok()) throw Error(ErrorKind::NotInvariantBasis, "E is not a G-invariant regular basis", rep.to_json());
    x.verified_inputs.push_back(verified("E is a G-invariant regular basis: domains downward closed and mapped onto E_g",
                                         "verified-exact", nullptr, {{"checks", rep.checks}}));
  }
  if (windowed)
    x.assumptions.push_back({"orbit classes and stabilizers found inside the group window are complete", "assumed", wbound, "",
                             nullptr});
  x.assumptions.push_back(bc_assumption(opt.route, opt.bc, a.G.label().empty() ? "G" : a.G.label()));
  x.notes.push_back("the isomorphism is the Kasparov product with j_G([Phi]) through the Going-Down principle; only its "
                    "finite-stage identities are computed (smashlab, orbits)");
  return x;
}

KTheoryExpression formula(const PartialAction& a, const FormulaOptions& opt) {
  auto orbits = compute_orbits(a);
  std::vector<StabilizerData> st;
  for (int d : orbits.reps) st.push_back(stabilizer(a, d));
  return formula(a, orbits, st, opt);
}

KTheoryExpression formula(const InverseSemigroup& s, BcVariant bc) {
  auto rep = s.verify();
  if (!rep.ok()) throw Error(ErrorKind::PrerequisiteFailed, "not an inverse semigroup with partial homomorphism", rep.to_json());
  if (auto w = s.idempotent_pure_witness())
    throw Error(ErrorKind::NotIdempotentPure, "sigma(" + s.names[at(*w)] + ") = 1 but it is not idempotent");
  auto st = star(s);
  auto orbits = compute_orbits(st.action);
  std::vector<StabilizerData> stabs;
  for (int d : orbits.reps) stabs.push_back(stabilizer(st.action, d));
  FormulaOptions opt;
  opt.route = Route::InverseSemigroup;
  opt.bc = bc;
  opt.window_exact = true;
  auto x = formula(st.action, orbits, stabs, opt);
  for (std::size_t i = 0; i < stabs.size(); ++i) {
    const int d = st.basis[at(stabs[i].d)];
    auto lg = local_group(s, d);
    if (!lg.is_group || lg.elements.size() != stabs[i].G_d.size())
      throw Error(ErrorKind::PrerequisiteFailed, "S_d and G_d differ at " + s.names[at(d)]);
    x.summands[i].representative = s.names[at(d)];
  }
  x.verified_inputs.push_back(verified("sigma is an idempotent pure partial homomorphism", "verified-exact"));
  x.verified_inputs.push_back(verified("S_d is a group isomorphic to G_d via sigma for every representative", "verified-exact"));
  return x;
}

KTheoryExpression formula_from_orbit_report(const json& report, Route route) {
  if (route == Route::Semigroup) require_independence({});
  KTheoryExpression x;
  x.route = route;
  x.target = default_target(route);
  const auto& classes = report.at("orbits").at("classes");
  const auto& reps = report.at("representatives");
  if (classes.size() != reps.size()) throw Error(ErrorKind::ParseError, "orbit report: classes and representatives differ in length");
  bool windowed = report.contains("bound");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& st = reps[i].at("stabilizer");
    const auto gd = st.at("G_d");
    GroupDescriptor g;
    if (gd.size() == 1) {
      g = GroupDescriptor::trivial();
    } else if (st.value("cyclic", false)) {
      g = GroupDescriptor::finite_cyclic(static_cast<int>(gd.size()));
    } else {
      g = GroupDescriptor::opaque("G_" + st.at("d").get<std::string>(), st.value("generators", std::vector<std::string>{}));
    }
    Summand s{classes[i].at("representative").get<std::string>(), g, st.value("provenance", std::string("verified-exact")),
              st.value("bound", json(nullptr))};
    x.summands.push_back(s);
  }
  const json bound = report.value("bound", json(nullptr));
  const std::string prov = windowed ? "verified-to-bound" : "verified-exact";
  x.verified_inputs.push_back(verified("orbit partition read from report of " + report.value("action", std::string("?")), prov, bound));
  if (report.contains("verdict") && report.at("verdict") != "Skipped") {
    json chk{{"verdict", report.at("verdict")}, {"provenance", "verified-exact"}};
    x.verified_inputs.push_back(verified("Xi_d bijection and w cocycle identities", "verified-exact", nullptr, chk));
  }
  if (windowed)
    x.assumptions.push_back({"orbit classes and stabilizers found inside the group window are complete", "assumed", bound, "", nullptr});
  x.assumptions.push_back(bc_assumption(route, x.bc, "G"));
  return x;
}

KTheoryExpression resolve(KTheoryExpression expr, const KTable& table) {
  std::optional<ResolvedK> sum = ResolvedK{};
  std::set<std::string> cited;
  expr.unresolved = json::array();
  for (const auto& s : expr.summands) {
    std::string cite;
    auto k = table.lookup(s.group, &cite);
    if (!k) {
      expr.unresolved.push_back({{"representative", s.representative}, {"group", s.group.str()},
                                 {"reason", "no table entry for kind " + s.group.kind_name()}});
      sum.reset();
      continue;
    }
    if (s.group.kind != GroupDescriptor::Kind::Trivial && cited.insert(s.group.str()).second)
      expr.assumptions.push_back({"K_*(C*_lambda(" + s.group.str() + ")) = (" + k->K0.str() + ", " + k->K1.str() + ")", "assumed",
                                  nullptr, cite.empty() ? "user table" : cite, nullptr});
    if (sum) {
      sum->K0 = sum->K0 + k->K0;
      sum->K1 = sum->K1 + k->K1;
      if (expr.summands.size() == 1) sum->unit_class = k->unit_class;
    }
  }
  if (sum && !expr.summands.empty()) {
    if (expr.resolved && !expr.resolved->unit_class.empty()) sum->unit_class = expr.resolved->unit_class;
    expr.resolved = sum;
  } else {
    expr.resolved.reset();
    if (!expr.unresolved.empty()) expr.notes.push_back("some summands are not in the K-table and stay symbolic");
  }
  return expr;
}

KTheoryExpression semigroup_ktheory(const Hull& h, const std::string& label, BcVariant bc) {
  auto ind = independence_check(h);
  auto act = action_from_hull(h);
  auto orbits = compute_orbits(act);
  std::vector<StabilizerData> st;
  for (int d : orbits.reps) st.push_back(stabilizer(act, d));
  const std::string group = h.model().group().name();
  KTheoryExpression x;
  try {
    x = formula(act, orbits, st, {Route::Semigroup, bc, &ind});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IndependenceUnknown) throw;
    x = formula(act, orbits, st, {Route::LeftInverseHull, bc, nullptr});
    x.refused = {{"route", to_string(Route::Semigroup)},
                 {"error", "IndependenceUnknown"},
                 {"message", e.what()},
                 {"independence", ind.to_json()},
                 {"offered_route", to_string(Route::LeftInverseHull)}};
    x.notes.push_back("without the independence condition the canonical map C*_lambda(I_l(P)) -> C*_lambda(P) need not be "
                      "injective, so only the left inverse hull formula is emitted");
    x.target = "C*_lambda(I_l(" + label + "))";
  }
  if (x.route == Route::Semigroup) x.target = "C*_lambda(" + label + ")";
  x.assumptions.back() = bc_assumption(x.route, bc, group);
  x.verified_inputs.push_back(verified(label + " is modelled inside the group " + group + " with exact membership", "verified-exact"));
  x.evidence = {{"independence", ind.to_json()}, {"hull", h.bound()}};
  return resolve(x, KTable::builtin());
}

// ---- presets

namespace {

const Fact& need_fact(const Preset& P, const std::string& name) {
  const Fact* f = P.fact(name);
  if (!f) throw Error(ErrorKind::PrerequisiteFailed, P.family + " preset has no '" + name + "' fact");
  return *f;
}

BcVariant default_bc(const std::string& family) { return family == "artin" ? BcVariant::Coefficients : BcVariant::Strong; }

std::string group_name(const std::string& family, const json& params) {
  if (family == "artin") return "A_M";
  if (family == "bs") return "BS(" + std::to_string(params.at("k").get<long long>()) + "," + std::to_string(params.at("l").get<long long>()) + ")";
  if (family == "one_relator") return "the one-relator group G";
  if (family == "free") return "the free group";
  return "Z^n";
}

std::string monoid_name(const std::string& family) {
  if (family == "artin") return "A_M^+";
  if (family == "bs") return "BS(k,l)^+";
  return "P";
}

// Right LCM route with P^* = {1}: (Z, 0), unit class generating K_0.
KTheoryExpression lcm_report(const Preset& P, const PresetOptions& opt, BcVariant bc) {
  const auto& rl = need_fact(P, "right_lcm");
  if (!rl.value) throw Error(ErrorKind::PrerequisiteFailed, P.family + " preset is not right LCM: " + rl.reason);
  KTheoryExpression x;
  x.route = Route::RightLcm;
  x.bc = bc;
  x.target = "C*_lambda(" + monoid_name(P.family) + ")";
  x.verified_inputs.push_back(from_fact(rl, monoid_name(P.family) + " is right LCM"));
  if (!P.symbolic && P.oracle()) {
    const int radius = std::min(opt.radius, P.presentation.alphabet.size() > 3 ? 4 : opt.radius);
    const int depth = std::min(opt.depth, radius);
    auto r = right_lcm_check(nullptr, *P.oracle(), depth, radius);
    if (r.verdict == "Fails")
      throw Error(ErrorKind::PrerequisiteFailed, "right LCM check fails for the " + P.family + " preset", r.to_json());
    x.verified_inputs.push_back(verified("right LCM on the checked window", r.provenance, r.bound, r.to_json()));
  }
  const auto& emb = need_fact(P, "embeds");
  x.verified_inputs.push_back(from_fact(emb, monoid_name(P.family) + " embeds into " + group_name(P.family, P.params)));
  if (emb.provenance == "assumed") {
    x.assumptions.push_back(from_fact(emb, monoid_name(P.family) + " embeds into " + group_name(P.family, P.params)));
    x.verified_inputs.pop_back();
  }
  const auto& units = need_fact(P, "units_trivial");
  if (!units.value) throw Error(ErrorKind::PrerequisiteFailed, "P has non-trivial units", units.to_json());
  LedgerEntry u = from_fact(units, "P^* = {1}");
  if (units.provenance == "assumed") x.assumptions.push_back(u);
  else x.verified_inputs.push_back(u);
  x.summands.push_back({"P", GroupDescriptor::trivial(), units.provenance, units.bound});
  x.assumptions.push_back(bc_assumption(Route::RightLcm, bc, group_name(P.family, P.params)));
  x.resolved = ResolvedK{FgAbelianGroup::Z(), FgAbelianGroup(), "[1]_0 generates K_0"};
  x.notes.push_back("right LCM monoids satisfy the independence condition, and P_P = P^*");
  return resolve(x, KTable::builtin());
}

std::string kk_note(const std::string& monoid) {
  return "the unital embedding C -> C*_lambda(" + monoid + ") induces a KK-equivalence between C and C*_lambda(" + monoid + ")";
}

// Least constructible ideal containing pairs: aP n bP is non-empty only for the
// first letters of u and v, since a relation applied at the front is the only
// way to change the first letter.
json one_relator_boundary(const Preset& P, KTheoryExpression& x, int radius) {
  const auto& A = P.presentation.alphabet;
  const auto& [u, v] = P.presentation.relations.front();
  const int n = A.size();
  json bq;
  if (P.symbolic) {
    bq = {{"K0", FgAbelianGroup::Z().to_json()},
          {"K1", FgAbelianGroup().to_json()},
          {"unit_class", "1"},
          {"derivation", "|S| infinite: the boundary quotient equals C*_lambda(P)"}};
    return bq;
  }
  json pairs = json::array();
  int nonempty = 0;
  std::vector<Word> window;
  if (P.oracle()) window = P.oracle()->ball_words(radius);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const bool front = (a == u.front() && b == v.front()) || (a == v.front() && b == u.front());
      bool found = false;
      for (const auto& w : window)
        if (P.oracle()->divides({a}, w) && P.oracle()->divides({b}, w)) found = true;
      if (found != front && P.oracle())
        throw Error(ErrorKind::PrerequisiteFailed, "common multiples of " + A.name(a) + " and " + A.name(b) + " contradict the leading-letter argument");
      if (front) {
        ++nonempty;
        pairs.push_back(A.name(a) + "P n " + A.name(b) + "P = " + to_string(u, A) + "P");
      }
    }
  // [e_1] = [1] - sum_a [1_{aP}] + sum over non-empty pairwise intersections; all [1_{pP}] = [1].
  const long long m = 1 - n + nonempty;
  auto K0 = FgAbelianGroup::cokernel({{m}}, 1);
  auto K1 = m == 0 ? FgAbelianGroup::Z() : FgAbelianGroup();
  x.verified_inputs.push_back(verified("class of the rank-one projection onto delta_1 is " + std::to_string(m) +
                                           "[1] by inclusion-exclusion over the ideals aP",
                                       "verified-exact", nullptr,
                                       {{"nonempty_intersections", pairs},
                                        {"cross_check", {{"verdict", "Holds"}, {"provenance", "verified-to-bound"}, {"bound", {{"radius", radius}}}}}}));
  x.assumptions.push_back({"exact sequence 0 -> K(l^2 P) -> C*_lambda(P) -> boundary quotient -> 0", "assumed", nullptr,
                           "Li-Omland-Spielberg, boundary quotients of one-relator monoids", nullptr});
  bq = {{"K0", K0.to_json()},
        {"K1", K1.to_json()},
        {"unit_class", "1"},
        {"derivation", "six-term sequence: K_0 = coker(Z -> Z, 1 -> " + std::to_string(m) + "), K_1 = ker"}};
  return bq;
}

}  // namespace

KTheoryExpression preset_report(const std::string& family, const json& params, const PresetOptions& opt) {
  Preset P = make_preset(family, params);
  const BcVariant bc = opt.bc.value_or(default_bc(family));
  if (family == "numerical") {
    Hull h(P.model, {opt.depth, std::max(opt.radius, 8), 200000});
    h.generate();
    auto x = semigroup_ktheory(h, "P", bc);
    x.notes.push_back("numerical semigroup " + P.params.at("gens").dump() + " inside Z");
    return x;
  }
  KTheoryExpression x = lcm_report(P, opt, bc);
  const std::string mono = monoid_name(family);
  json cls;
  if (family == "artin") {
    x.target = "C*_lambda(A_M^+)";
    x.assumptions.back() = bc_assumption(Route::RightLcm, bc, "A_M");
    x.resolved->unit_class = "Z[1]_0";
    cls["K_theory"] = "K_0(C*_lambda(A_M^+)) = Z[1]_0 and K_1 = 0 if A_M satisfies the Baum-Connes conjecture for CalA and A";
    cls["if_strong_baum_connes"] = kk_note(mono);
    x.notes.push_back("the Toeplitz condition for A_M^+ in A_M is open in general; the right LCM route does not need it");
  } else if (family == "bs") {
    const long long k = P.params.at("k").get<long long>(), l = P.params.at("l").get<long long>();
    x.assumptions.back().source = "BS(k,l) has the Haagerup property (Gal-Januszkiewicz), so strong Baum-Connes holds (Higson-Kasparov)";
    cls["KK"] = kk_note(mono);
    x.notes.push_back(kk_note(mono));
    if ((k < -1 && l > 0) || (k > 1 && l < 0)) {
      const auto& A = P.presentation.alphabet;
      auto g = parse_group_word("a b a^-1", A);
      auto r = toeplitz_check(*P.model, g, opt.depth, opt.radius);
      x.evidence["toeplitz"] = r.to_json();
      x.evidence["toeplitz"]["g"] = "aba^-1";
      if (r.verdict == "Constructible")
        throw Error(ErrorKind::PrerequisiteFailed, "gP n P is constructible for g = aba^-1, contradicting the expected Toeplitz failure",
                    r.to_json());
      x.notes.push_back("the Toeplitz condition fails for this sign pattern, so the right LCM route is the one that applies");
    }
  } else if (family == "one_relator") {
    const int n = P.presentation.alphabet.size();
    if (!P.symbolic && n < 3) throw Error(ErrorKind::InvalidParams, "one_relator reports need |S| >= 3");
    x.assumptions.back().source = "one-relator groups satisfy strong Baum-Connes (Beguin-Bettaieb-Valette, Tu, Oyono-Oyono)";
    x.notes.push_back(kk_note("P"));
    const std::string S = P.symbolic ? "inf" : std::to_string(n);
    cls["generators"] = P.symbolic ? json("inf") : json(n);
    cls["boundary_quotient"] = one_relator_boundary(P, x, std::min(opt.radius, 4));
    cls["KK"] = kk_note("P");
    json nuc;
    nuc["assumption"] = "C*_lambda(P) is nuclear (equivalently, the boundary quotient is nuclear)";
    nuc["boundary_quotient"] = P.symbolic ? "O_inf" : "O_" + std::to_string(n - 1);
    nuc["C*_lambda(P)"] = P.symbolic ? "O_inf" : "E^{-1}_" + std::to_string(n - 1);
    nuc["source"] = "Kirchberg-Phillips classification (Rordam); extensions of Cuntz algebras (Eilers-Loring-Pedersen)";
    cls["if_nuclear"] = nuc;
    x.assumptions.push_back({"C*_lambda(P) is nuclear (only for the classification statements)", "assumed", nullptr,
                             "sufficient conditions in Li-Omland-Spielberg", nullptr});
  } else {
    cls["KK"] = kk_note(mono);
  }
  x.classification = cls;
  x.notes.push_back("preset " + family + " " + P.params.dump());
  return x;
}

}  // namespace semik
