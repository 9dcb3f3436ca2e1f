#include "semik/tiling.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "semik/errors.hpp"
#include "semik/group.hpp"
#include "semik/orbits.hpp"

namespace semik {

using nlohmann::json;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

Point parse_point(const std::string& text) {
  Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      p.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad coordinate '" + item + "'");
    }
    if (item.find_first_not_of(' ', used) != std::string::npos) throw Error(ErrorKind::ParseError, "bad coordinate '" + item + "'");
  }
  if (p.empty()) throw Error(ErrorKind::ParseError, "empty point");
  return p;
}

std::vector<Point> parse_points(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
  std::vector<Point> out;
  if (text.empty()) throw Error(ErrorKind::ParseError, "no points given");
  if (text.find('(') != std::string::npos) {
    std::size_t i = 0;
    while ((i = text.find('(', i)) != std::string::npos) {
      std::size_t j = text.find(')', i);
      if (j == std::string::npos) throw Error(ErrorKind::ParseError, "unbalanced parenthesis in '" + text + "'");
      out.push_back(parse_point(text.substr(i + 1, j - i - 1)));
      i = j + 1;
    }
  } else if (text.find(';') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) out.push_back(parse_point(item));
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_point(item));
  }
  return out;
}

Patch translate(const Patch& p, const Point& x) {
  Patch r;
  r.reserve(p.size());
  for (const auto& q : p) r.push_back(q + x);
  return r;
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::string to_string(const Point& p) {
  if (p.size() == 1) return std::to_string(p[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

std::string to_string(const Patch& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + "}";
}

PointSet::PointSet(int dim, std::vector<Point> pts) : n(dim), points(std::move(pts)) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "dimension must be >= 1");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != n) throw Error(ErrorKind::InvalidParams, "point " + to_string(p) + " has the wrong dimension");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end())
    throw Error(ErrorKind::InvalidParams, "points must be distinct");
}

PointSet PointSet::parse(const std::string& text) {
  auto pts = parse_points(text);
  return PointSet(static_cast<int>(pts.front().size()), pts);
}

bool PointSet::contains(const Point& p) const { return std::binary_search(points.begin(), points.end(), p); }

json PointSet::to_json() const {
  json pts = json::array();
  for (const auto& p : points) pts.push_back(to_string(p));
  return {{"dimension", n}, {"points", pts}};
}

Adjacency Adjacency::parse(const std::string& text) {
  Adjacency a;
  a.steps = parse_points(text);
  return a;
}

Adjacency Adjacency::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read adjacency file " + path);
  std::string line, all;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    all += (all.empty() ? "" : ";") + line;
  }
  if (all.find('(') != std::string::npos) std::replace(all.begin(), all.end(), ';', ',');
  return parse(all);
}

bool Adjacency::adjacent(const Point& p, const Point& q) const {
  const Point d = q - p, e = p - q;
  return std::any_of(steps.begin(), steps.end(), [&](const Point& s) { return s == d || s == e; });
}

bool Adjacency::connected(const Patch& p) const {
  if (p.empty()) return true;
  std::vector<bool> seen(p.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!seen[j] && adjacent(p[i], p[j])) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Patch normalize(Patch p) {
  if (p.empty()) return p;
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  const Point m = p.front();
  for (auto& q : p) q = q - m;
  return p;
}

PatchTriple PatchTriple::make(Point a, Patch P, Point b) {
  std::sort(P.begin(), P.end());
  P.erase(std::unique(P.begin(), P.end()), P.end());
  if (!std::binary_search(P.begin(), P.end(), a) || !std::binary_search(P.begin(), P.end(), b))
    throw Error(ErrorKind::InvalidParams, "a and b must lie in the patch");
  const Point m = P.front();
  PatchTriple t;
  t.a = a - m;
  t.b = b - m;
  t.P = normalize(std::move(P));
  return t;
}

PatchTriple PatchTriple::zero_triple() {
  PatchTriple t;
  t.zero = true;
  return t;
}

std::string PatchTriple::str() const {
  if (zero) return "0";
  return "[" + to_string(a) + "," + to_string(P) + "," + to_string(b) + "]";
}

bool embeds(const Patch& p, const PointSet& D) {
  const Patch q = normalize(p);
  for (const auto& d : D.points) {
    bool ok = true;
    for (const auto& x : q)
      if (!D.contains(x + d)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

PatchTriple triple_mul(const PatchTriple& s, const PatchTriple& t, const PointSet& D) {
  if (s.zero || t.zero) return PatchTriple::zero_triple();
  // Fix y = 0; then x = c - b, and any common translate of the union works.
  const Point x = t.a - s.b;
  Patch U = translate(s.P, x);
  U.insert(U.end(), t.P.begin(), t.P.end());
  std::sort(U.begin(), U.end());
  U.erase(std::unique(U.begin(), U.end()), U.end());
  if (!embeds(U, D)) return PatchTriple::zero_triple();
  return PatchTriple::make(s.a + x, U, t.b);
}

std::vector<Patch> patch_classes(const PointSet& D, const TilingConfig& cfg) {
  if (D.size() > cfg.max_points)
    throw Error(ErrorKind::SizeLimit, "|D| = " + std::to_string(D.size()) + " exceeds the patch enumeration cap " + std::to_string(cfg.max_points));
  if (D.size() >= 63) throw Error(ErrorKind::SizeLimit, "|D| too large for subset enumeration");
  std::set<Patch> seen;
  const unsigned long long total = 1ULL << D.size();
  for (unsigned long long mask = 1; mask < total; ++mask) {
    Patch p;
    for (std::size_t i = 0; i < D.size(); ++i)
      if (mask >> i & 1ULL) p.push_back(D.points[i]);
    if (cfg.adjacency && !cfg.adjacency->connected(p)) continue;
    seen.insert(normalize(std::move(p)));
  }
  std::vector<Patch> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Patch& x, const Patch& y) { return x.size() < y.size(); });
  return out;
}

GammaSemigroup gamma_semigroup(const PointSet& D, const TilingConfig& cfg) {
  if (D.size() > cfg.table_points)
    throw Error(ErrorKind::SizeLimit, "multiplication table limited to |D| <= " + std::to_string(cfg.table_points));
  GammaSemigroup g;
  g.triples.push_back(PatchTriple::zero_triple());
  for (const auto& P : patch_classes(D, cfg))
    for (const auto& a : P)
      for (const auto& b : P) g.triples.push_back(PatchTriple::make(a, P, b));
  std::map<PatchTriple, int> idx;
  for (std::size_t i = 0; i < g.triples.size(); ++i) idx[g.triples[i]] = static_cast<int>(i);

  AbelianGroup Zn(D.n, {});
  std::vector<Elem> diffs;
  for (const auto& p : D.points)
    for (const auto& q : D.points) diffs.push_back(Zn.vec(p - q));
  g.S.G = GroupTable::window(Zn, diffs);
  const std::size_t N = g.triples.size();
  g.S.mul.assign(N, std::vector<int>(N, 0));
  for (std::size_t i = 0; i < N; ++i) {
    g.S.names.push_back(g.triples[i].str());
    g.S.sigma.push_back(i == 0 ? -1 : g.S.G.index_of(Zn.vec(g.triples[i].sigma())));
    for (std::size_t j = 0; j < N; ++j) {
      auto r = triple_mul(g.triples[i], g.triples[j], D);
      auto it = idx.find(r);
      if (it == idx.end()) throw Error(ErrorKind::DomainViolation, "product " + r.str() + " is not a patch triple of D");
      g.S.mul[i][j] = it->second;
    }
  }
  return g;
}

namespace {

json exact_verdict(bool ok, std::size_t checks) {
  return {{"verdict", ok ? "Holds" : "Fails"}, {"provenance", "verified-exact"}, {"checks", checks}};
}

// A translation fixing a finite non-empty patch is zero, so S_[a,P,a] = {[a,P,a]}.
json stabilizer_check(const std::vector<Patch>& classes) {
  std::size_t checks = 0;
  bool ok = true;
  for (const auto& P : classes)
    for (const auto& a : P)
      for (const auto& b : P) {
        if (a == b) continue;
        ++checks;
        Patch Q = translate(P, a - b);
        std::sort(Q.begin(), Q.end());
        if (Q == P) ok = false;
      }
  return exact_verdict(ok, checks);
}

}  // namespace

KTheoryExpression gamma_ktheory(const PointSet& D, const TilingConfig& cfg) {
  auto classes = patch_classes(D, cfg);
  KTheoryExpression x;
  const std::string target = cfg.adjacency ? "C*_lambda(S(D))" : "C*_lambda(Gamma(D))";
  if (D.size() <= cfg.table_points) {
    auto g = gamma_semigroup(D, cfg);
    x = formula(g.S, BcVariant::Strong);
    if (x.summands.size() != classes.size())
      throw Error(ErrorKind::PrerequisiteFailed, "orbit count " + std::to_string(x.summands.size()) + " differs from patch class count " +
                                                     std::to_string(classes.size()));
    x.verified_inputs.push_back({"orbits of S on E^x match the patch classes one to one", "verified-exact", nullptr, "", nullptr});
  } else {
    x.route = Route::InverseSemigroup;
    x.bc = BcVariant::Strong;
    for (const auto& P : classes) x.summands.push_back({PatchTriple::make(P.front(), P, P.front()).str(), GroupDescriptor::trivial(), "verified-exact", nullptr});
    x.verified_inputs.push_back({"sigma([a,P,b]) = a - b is idempotent pure: a - b = 0 forces a = b", "verified-exact", nullptr, "", nullptr});
    x.verified_inputs.push_back({"orbits of idempotents [a,P,a] are the patch classes: [b,P,a] carries [a,P,a] to [b,P,b]",
                                 "verified-exact", nullptr, "", nullptr});
  }
  x.target = target;
  x.verified_inputs.push_back({"patch classes enumerated: " + std::to_string(classes.size()) + " classes of non-empty subsets up to translation",
                               "verified-exact", nullptr, "", nullptr});
  x.verified_inputs.push_back({"stabilizers of patch idempotents are trivial", "verified-exact", nullptr, "", stabilizer_check(classes)});
  x.assumptions.clear();
  x.assumptions.push_back({"G = <D - D> in Z^" + std::to_string(D.n) + " satisfies the strong Baum-Connes conjecture", "assumed", nullptr,
                           "G is abelian, hence amenable (Higson-Kasparov)", nullptr});
  x.notes.push_back("KK-equivalence between the direct sum of one copy of C per patch class and " + target);
  return resolve(x, KTable::builtin());
}

json tiling_report(const PointSet& D, const TilingConfig& cfg) {
  auto classes = patch_classes(D, cfg);
  json reps = json::array(), sizes = json::array();
  for (const auto& P : classes) {
    reps.push_back(to_string(P));
    sizes.push_back(P.size());
  }
  json checks;
  checks["stabilizers_trivial"] = stabilizer_check(classes);
  if (D.size() <= cfg.table_points) {
    auto g = gamma_semigroup(D, cfg);
    auto rep = g.S.verify();
    checks["inverse_semigroup_laws"] = exact_verdict(rep.ok(), rep.checks);
    if (!rep.ok()) checks["inverse_semigroup_laws"]["failures"] = rep.failures;
    std::size_t inv_checks = 0;
    bool inv_ok = true;
    for (int s = 1; s < g.S.size(); ++s) {
      ++inv_checks;
      const int t = g.S.inverse(s);
      if (t < 0 || !(g.triples[at(t)] == g.triples[at(s)].inverse())) inv_ok = false;
    }
    checks["inverse_is_[b,P,a]"] = exact_verdict(inv_ok, inv_checks);
    auto w = g.S.idempotent_pure_witness();
    checks["sigma_idempotent_pure"] = exact_verdict(!w.has_value(), static_cast<std::size_t>(g.S.size()));
    if (w) checks["sigma_idempotent_pure"]["witness"] = g.S.names[at(*w)];
    checks["elements"] = g.S.size();
  } else {
    checks["inverse_semigroup_laws"] = {{"verdict", "Skipped"},
                                        {"reason", "multiplication table limited to |D| <= " + std::to_string(cfg.table_points)}};
  }
  json j{{"points", D.to_json()},
         {"classes", classes.size()},
         {"representatives", reps},
         {"class_sizes", sizes},
         {"checks", checks},
         {"ktheory", gamma_ktheory(D, cfg).to_json()}};
  if (cfg.adjacency) {
    json st = json::array();
    for (const auto& s : cfg.adjacency->steps) st.push_back(to_string(s));
    j["adjacency_steps"] = st;
  }
  return j;
}

}  // namespace semik
