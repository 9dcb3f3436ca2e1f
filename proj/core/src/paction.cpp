#include "semik/paction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <numeric>

#include "semik/errors.hpp"
#include "semik/hull.hpp"

namespace semik {

using nlohmann::json;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

}  // namespace

// ---- GroupTable

GroupTable GroupTable::window(const Group& g, std::vector<Elem> elements) {
  std::vector<Elem> all = std::move(elements);
  all.push_back(g.identity());
  const std::size_t n0 = all.size();
  for (std::size_t i = 0; i < n0; ++i) all.push_back(g.inv(all[i]));
  std::sort(all.begin(), all.end(), [&](const Elem& x, const Elem& y) { return g.less(x, y); });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  auto id = std::find(all.begin(), all.end(), g.identity());
  std::rotate(all.begin(), id, id + 1);

  GroupTable t;
  t.label_ = g.name();
  t.elems_ = all;
  std::map<Elem, int> idx;
  for (std::size_t i = 0; i < all.size(); ++i) {
    idx[all[i]] = static_cast<int>(i);
    t.names_.push_back(g.str(all[i]));
  }
  t.mul_.assign(all.size(), std::vector<int>(all.size(), -1));
  t.inv_.assign(all.size(), -1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    t.inv_[i] = idx.at(g.inv(all[i]));
    for (std::size_t j = 0; j < all.size(); ++j) {
      auto it = idx.find(g.mul(all[i], all[j]));
      if (it == idx.end()) {
        t.closed_ = false;
      } else {
        t.mul_[i][j] = it->second;
      }
    }
  }
  return t;
}

GroupTable GroupTable::finite(const Group& g) {
  if (!g.is_finite()) throw Error(ErrorKind::InvalidParams, g.name() + " is infinite; use a window");
  GroupTable t = window(g, g.elements());
  if (!t.closed_) throw Error(ErrorKind::DomainViolation, "element list of " + g.name() + " is not closed");
  return t;
}

GroupTable GroupTable::cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "cyclic group order must be >= 1");
  if (n == 1) {
    GroupTable t;
    t.label_ = "1";
    t.elems_ = {{}};
    t.names_ = {"1"};
    t.mul_ = {{0}};
    t.inv_ = {0};
    return t;
  }
  return finite(AbelianGroup(0, {n}));
}

GroupTable GroupTable::integers(int radius) {
  if (radius < 1) throw Error(ErrorKind::InvalidParams, "window radius must be >= 1");
  AbelianGroup z(1, {});
  return window(z, z.ball(radius));
}

GroupTable GroupTable::symmetric(int n) {
  if (n < 2 || n > 5) throw Error(ErrorKind::InvalidParams, "symmetric group degree must be in 2..5");
  Elem swap(at(n)), cycle(at(n));
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cycle[at(i)] = (i + 1) % n;
  std::vector<Elem> gens{swap};
  if (n > 2) gens.push_back(cycle);
  GroupTable t = finite(PermGroup(n, gens));
  t.label_ = "S" + std::to_string(n);
  return t;
}

GroupTable GroupTable::from_json(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "trivial") return cyclic(1);
  if (kind == "cyclic") return cyclic(j.at("n").get<int>());
  if (kind == "integers") return integers(j.at("window").get<int>());
  if (kind == "symmetric") return symmetric(j.at("n").get<int>());
  throw Error(ErrorKind::ConfigError, "unknown group kind '" + kind + "' (trivial, cyclic, integers, symmetric)");
}

std::optional<int> GroupTable::mul(int a, int b) const {
  int r = mul_[at(a)][at(b)];
  if (r < 0) return std::nullopt;
  return r;
}

int GroupTable::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int GroupTable::index_of(const Elem& x) const {
  auto it = std::find(elems_.begin(), elems_.end(), x);
  return it == elems_.end() ? -1 : static_cast<int>(it - elems_.begin());
}

std::optional<int> GroupTable::order(int a) const {
  int x = a;
  for (int k = 1; k <= size(); ++k) {
    if (x == 0) return k;
    auto y = mul(x, a);
    if (!y) return std::nullopt;
    x = *y;
  }
  return std::nullopt;
}

json GroupTable::to_json() const {
  return {{"group", label_}, {"elements", names_}, {"window", !closed_}};
}

// ---- Semilattice

Semilattice::Semilattice(std::vector<std::string> names, std::vector<std::vector<int>> meet)
    : names_(std::move(names)), meet_(std::move(meet)) {
  if (names_.empty() || meet_.size() != names_.size())
    throw Error(ErrorKind::InvalidParams, "meet table does not match element list");
  for (const auto& row : meet_)
    if (row.size() != names_.size()) throw Error(ErrorKind::InvalidParams, "meet table is not square");
  auto bad = verify();
  if (!bad.empty()) throw Error(ErrorKind::InvalidParams, bad);
}

Semilattice Semilattice::from_sets(std::vector<std::string> names, std::vector<std::vector<int>> sets) {
  if (names.size() != sets.size()) throw Error(ErrorKind::InvalidParams, "one point set per element");
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw Error(ErrorKind::InvalidParams, "non-zero elements need non-empty point sets");
  }
  std::map<std::vector<int>, int> idx{{{}, 0}};
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!idx.emplace(sets[i], static_cast<int>(i + 1)).second)
      throw Error(ErrorKind::InvalidParams, "elements '" + names[i] + "' repeat a point set");
  std::vector<std::string> all{"0"};
  all.insert(all.end(), names.begin(), names.end());
  sets.insert(sets.begin(), std::vector<int>{});
  std::vector<std::vector<int>> meet(all.size(), std::vector<int>(all.size(), 0));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      std::vector<int> x;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(), std::back_inserter(x));
      auto it = idx.find(x);
      if (it == idx.end())
        throw Error(ErrorKind::InvalidParams, "meet of '" + all[i] + "' and '" + all[j] + "' is not in the family");
      meet[i][j] = it->second;
    }
  return Semilattice(std::move(all), std::move(meet));
}

Semilattice Semilattice::chain(int length) {
  if (length < 1) throw Error(ErrorKind::InvalidParams, "chain length must be >= 1");
  std::vector<std::string> names;
  std::vector<std::vector<int>> sets;
  for (int i = 1; i <= length; ++i) {
    names.push_back("e" + std::to_string(i));
    std::vector<int> s;
    for (int p = i; p <= length; ++p) s.push_back(p);
    sets.push_back(s);
  }
  return from_sets(names, sets);
}

Semilattice Semilattice::diamond() {
  return from_sets({"d", "e1", "e2", "e1e2"}, {{1, 2, 3}, {1, 3}, {2, 3}, {3}});
}

int Semilattice::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

std::string Semilattice::verify() const {
  const int n = size();
  for (int a = 0; a < n; ++a) {
    if (meet(a, a) != a) return "meet is not idempotent at " + name(a);
    if (meet(0, a) != 0 || meet(a, 0) != 0) return "zero is not absorbing at " + name(a);
    for (int b = 0; b < n; ++b) {
      int m = meet(a, b);
      if (m < 0 || m >= n) return "meet table entry out of range";
      if (m != meet(b, a)) return "meet is not commutative at " + name(a) + ", " + name(b);
      for (int c = 0; c < n; ++c)
        if (meet(m, c) != meet(a, meet(b, c))) return "meet is not associative at " + name(a) + ", " + name(b) + ", " + name(c);
    }
  }
  return {};
}

json Semilattice::to_json() const {
  json order = json::array();
  for (int a = 1; a < size(); ++a)
    for (int b = 1; b < size(); ++b)
      if (a != b && leq(a, b)) order.push_back({name(a), name(b)});
  return {{"elements", names_}, {"below", order}};
}

json VerifyReport::to_json() const {
  json j{{"checks", checks}, {"ok", ok()}};
  if (undecided) j["undecided"] = undecided;
  if (!failures.empty()) j["failures"] = failures;
  return j;
}

// ---- PartialAction

std::optional<int> PartialAction::act(int g, int e) const {
  if (e == 0) return 0;
  int r = theta[at(g)][at(e)];
  if (r < 0) return std::nullopt;
  return r;
}

std::vector<int> PartialAction::domain(int g) const {
  std::vector<int> d;
  for (int e = 1; e < E.size(); ++e)
    if (theta[at(g)][at(e)] >= 0) d.push_back(e);
  return d;
}

VerifyReport PartialAction::verify() const {
  VerifyReport r;
  const int ng = G.size(), ne = E.size();
  const bool cut = windowed();
  r.expect(static_cast<int>(theta.size()) == ng, "one map per group element");
  if (!r.ok()) return r;
  for (int e = 1; e < ne; ++e) r.expect(act(0, e) == e, "identity acts trivially on " + E.name(e));
  for (int g = 0; g < ng; ++g) {
    const std::string gn = G.name(g);
    const int gi = G.inv(g);
    auto dom = domain(g);
    for (int e : dom) {
      int f = *act(g, e);
      r.expect(f > 0, gn + " sends " + E.name(e) + " to zero");
      if (f <= 0) continue;
      r.expect(act(gi, f) == e, "inverse of " + gn + " does not undo it at " + E.name(e));
      for (int x = 1; x < ne; ++x)
        if (E.leq(x, e)) r.expect(act(g, x).has_value(), cut, "domain of " + gn + " is not downward closed at " + E.name(x));
      for (int e2 : dom) {
        int m = E.meet(e, e2);
        auto tm = act(g, m);
        if (!tm && cut) {
          ++r.undecided;
          continue;
        }
        r.expect(tm && *tm == E.meet(f, *act(g, e2)), gn + " does not preserve the meet of " + E.name(e) + ", " + E.name(e2));
      }
    }
    for (int h = 0; h < ng; ++h) {
      auto gh = G.mul(g, h);
      for (int e : domain(h)) {
        int he = *act(h, e);
        auto ghe = act(g, he);
        if (!ghe) continue;
        r.expect(gh.has_value(), cut, "composite " + gn + "." + G.name(h) + " leaves the window");
        if (!gh) continue;
        r.expect(act(*gh, e) == ghe, cut && !act(*gh, e), "theta_g theta_h is not contained in theta_gh at " + E.name(e));
      }
      if (!gh) continue;
      // h.(E_{(gh)^-1} n E_{h^-1}) = E_h n E_{g^-1}
      std::vector<int> lhs, rhs;
      for (int e = 1; e < ne; ++e) {
        if (act(*gh, e) && act(h, e)) lhs.push_back(*act(h, e));
        if (act(G.inv(h), e) && act(g, e)) rhs.push_back(e);
      }
      std::sort(lhs.begin(), lhs.end());
      r.expect(lhs == rhs, cut, "partial action axiom fails for g=" + gn + ", h=" + G.name(h));
    }
  }
  return r;
}

VerifyReport PartialAction::verify_invariant_basis() const {
  VerifyReport r;
  for (int g = 0; g < G.size(); ++g) {
    auto dom = domain(g);
    for (int e : dom)
      for (int x = 1; x < E.size(); ++x)
        if (E.leq(x, e)) r.expect(act(g, x).has_value(), "V_{g^-1} for g=" + G.name(g) + " is not downward closed");
    std::vector<int> img;
    for (int e : dom) img.push_back(*act(g, e));
    std::sort(img.begin(), img.end());
    r.expect(img == domain(G.inv(g)), "g.V_{g^-1} != V_g for g=" + G.name(g));
  }
  return r;
}

json PartialAction::to_json() const {
  json maps = json::object();
  for (int g = 0; g < G.size(); ++g) {
    json m = json::object();
    for (int e : domain(g)) m[E.name(e)] = E.name(*act(g, e));
    maps[G.name(g)] = m;
  }
  json j{{"label", label}, {"group", G.to_json()}, {"semilattice", E.to_json()}, {"action", maps}};
  if (windowed()) j["windowed"] = true;
  return j;
}

namespace {

PartialAction make_action(std::string label, GroupTable G, Semilattice E) {
  PartialAction a{std::move(G), std::move(E), {}, std::move(label)};
  a.theta.assign(at(a.G.size()), std::vector<int>(at(a.E.size()), -1));
  for (auto& row : a.theta) row[0] = 0;
  for (int e = 0; e < a.E.size(); ++e) a.theta[0][at(e)] = e;
  return a;
}

void set_theta(PartialAction& a, int g, int e, int f) {
  a.theta[at(g)][at(e)] = f;
  a.theta[at(a.G.inv(g))][at(f)] = e;
}

}  // namespace

PartialAction action_from_json(const json& j) {
  GroupTable G = GroupTable::from_json(j.at("group"));
  std::vector<std::string> names;
  std::vector<std::vector<int>> sets;
  const json& sl = j.at("semilattice");
  if (sl.is_array()) {
    for (const auto& item : sl) {
      names.push_back(item.at("name").get<std::string>());
      sets.push_back(item.at("points").get<std::vector<int>>());
    }
  } else {
    for (auto it = sl.begin(); it != sl.end(); ++it) {
      names.push_back(it.key());
      sets.push_back(it.value().get<std::vector<int>>());
    }
  }
  auto a = make_action(j.value("label", "custom"), std::move(G), Semilattice::from_sets(names, sets));
  for (auto it = j.at("action").begin(); it != j.at("action").end(); ++it) {
    int g = a.G.index(it.key());
    if (g < 0) throw Error(ErrorKind::ConfigError, "unknown group element '" + it.key() + "'");
    for (auto m = it.value().begin(); m != it.value().end(); ++m) {
      int e = a.E.index(m.key()), f = a.E.index(m.value().get<std::string>());
      if (e <= 0 || f <= 0) throw Error(ErrorKind::ConfigError, "unknown semilattice element in map of " + it.key());
      int prev = a.theta[at(g)][at(e)];
      if (prev >= 0 && prev != f) throw Error(ErrorKind::ConfigError, "conflicting images for " + it.key() + "." + m.key());
      set_theta(a, g, e, f);
    }
  }
  return a;
}

std::vector<std::string> example_names() {
  return {"trivial", "z2_swap", "n_window", "z4_swap", "s3_atoms", "chain1", "chain2", "chain3", "diamond"};
}

PartialAction example_action(const std::string& name, int size) {
  if (name == "trivial") return make_action(name, GroupTable::cyclic(1), Semilattice::from_sets({"e"}, {{0}}));
  if (name == "z2_swap") {
    auto a = make_action(name, GroupTable::cyclic(2), Semilattice::from_sets({"top", "d", "d'"}, {{0, 1, 2}, {1}, {2}}));
    set_theta(a, 1, a.E.index("d"), a.E.index("d'"));
    return a;
  }
  if (name == "z4_swap") {
    auto a = make_action(name, GroupTable::cyclic(4), Semilattice::from_sets({"d", "d'"}, {{0}, {1}}));
    const int d = a.E.index("d"), d2 = a.E.index("d'");
    for (int g = 1; g < 4; ++g) {
      bool odd = a.G.name(g) == "1" || a.G.name(g) == "3";
      set_theta(a, g, d, odd ? d2 : d);
      set_theta(a, g, d2, odd ? d : d2);
    }
    return a;
  }
  if (name == "s3_atoms") {
    auto a = make_action(name, GroupTable::symmetric(3), Semilattice::from_sets({"e0", "e1", "e2"}, {{0}, {1}, {2}}));
    for (int g = 0; g < a.G.size(); ++g)
      for (int i = 0; i < 3; ++i) a.theta[at(g)][at(i + 1)] = static_cast<int>(a.G.elem(g)[at(i)]) + 1;
    return a;
  }
  if (name == "n_window") {
    const int M = size;
    std::vector<std::string> names;
    std::vector<std::vector<int>> sets;
    // Intervals of {0..M}; [m,M] is the truncation of m+N.
    std::map<std::pair<int, int>, int> iv;
    for (int m = 0; m <= M; ++m)
      for (int n = M; n >= m; --n) {
        names.push_back(n == M ? (m == 0 ? "N" : std::to_string(m) + "+N")
                               : "[" + std::to_string(m) + "," + std::to_string(n) + "]");
        std::vector<int> s;
        for (int p = m; p <= n; ++p) s.push_back(p);
        sets.push_back(s);
        iv[{m, n}] = static_cast<int>(names.size());
      }
    auto a = make_action(name, GroupTable::integers(M), Semilattice::from_sets(names, sets));
    for (int g = 0; g < a.G.size(); ++g) {
      const int shift = static_cast<int>(a.G.elem(g)[0]);
      for (const auto& [mn, e] : iv)
        if (mn.first + shift >= 0 && mn.second + shift <= M)
          a.theta[at(g)][at(e)] = iv.at({mn.first + shift, mn.second + shift});
    }
    return a;
  }
  if (name == "diamond") return make_action(name, GroupTable::cyclic(1), Semilattice::diamond());
  if (name.rfind("chain", 0) == 0 && name.size() > 5) {
    int k = std::stoi(name.substr(5));
    return make_action(name, GroupTable::cyclic(1), Semilattice::chain(k));
  }
  throw Error(ErrorKind::ConfigError, "unknown example action '" + name + "'");
}

PartialAction action_from_hull(const Hull& h) {
  const MonoidModel& m = h.model();
  // Exact ideal keys when the model has them; traces on the test ball otherwise.
  auto key = [&](const HullElement& s) {
    if (h.exact()) return s.zero ? std::vector<long long>{} : s.dom.key();
    return std::vector<long long>(s.on_ball.begin(), s.on_ball.end());
  };
  auto is_zero = [&](const HullElement& s) {
    return s.zero || (!h.exact() && std::none_of(s.on_ball.begin(), s.on_ball.end(), [](bool b) { return b; }));
  };
  std::vector<HullElement> idem;
  for (const auto& e : h.idempotents())
    if (!e.empty_unproven) idem.push_back(e);
  // Close under meets: e f is again an idempotent of the hull.
  std::set<std::vector<long long>> seen;
  for (const auto& e : idem) seen.insert(key(e));
  for (std::size_t i = 0; i < idem.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      HullElement c = h.compose(idem[i], idem[j]);
      if (is_zero(c) || c.empty_unproven || !seen.insert(key(c)).second) continue;
      idem.push_back(c);
      if (idem.size() > h.config().max_elements)
        throw Error(ErrorKind::BudgetExceeded, "meet closure of the hull idempotents exceeds max_elements");
    }
  std::stable_sort(idem.begin(), idem.end(), [](const HullElement& x, const HullElement& y) {
    return std::count(x.on_ball.begin(), x.on_ball.end(), true) > std::count(y.on_ball.begin(), y.on_ball.end(), true);
  });
  std::vector<std::string> names{"0"};
  std::map<std::vector<long long>, int> by_key;
  for (const auto& e : idem) {
    by_key.emplace(key(e), static_cast<int>(names.size()));
    names.push_back(e.dom.exact() ? m.str(e.dom) : "dom(" + to_string(e.zigzag, m.alphabet()) + ")");
  }
  auto index_of = [&](const HullElement& s) -> std::optional<int> {
    if (is_zero(s)) return 0;
    auto it = by_key.find(key(s));
    if (it == by_key.end()) return std::nullopt;
    return it->second;
  };
  std::vector<std::vector<int>> meet(names.size(), std::vector<int>(names.size(), 0));
  for (std::size_t i = 1; i < names.size(); ++i)
    for (std::size_t j = 1; j < names.size(); ++j) {
      auto r = index_of(h.compose(idem[i - 1], idem[j - 1]));
      if (!r)
        throw Error(ErrorKind::ActionUndefined, "meet of " + names[i] + " and " + names[j] + " is not among the generated idempotents");
      meet[i][j] = *r;
    }
  std::vector<Elem> sig;
  for (const auto& s : h.elements())
    if (!s.zero) sig.push_back(s.sigma);
  auto a = make_action("hull of " + m.name(), GroupTable::window(m.group(), sig), Semilattice(names, meet));
  for (const auto& t : h.elements()) {
    if (t.zero || t.empty_unproven) continue;
    const int g = a.G.index_of(t.sigma);
    const HullElement src = h.compose(h.inverse(t), t);
    for (std::size_t i = 0; i < idem.size(); ++i) {
      const auto& e = idem[i];
      if (key(h.compose(src, e)) != key(e)) continue;  // e not below dom t
      HullElement u = h.compose(t, e);
      auto r = index_of(h.compose(u, h.inverse(u)));
      if (!r || *r == 0) continue;  // range outside the generated idempotents
      const int ei = static_cast<int>(i) + 1;
      int prev = a.theta[at(g)][at(ei)];
      if (prev >= 0 && prev != *r)
        throw Error(ErrorKind::NotIdempotentPure, "two hull elements with sigma " + m.str(t.sigma) + " disagree on " + names[at(ei)]);
      set_theta(a, g, ei, *r);
    }
  }
  return a;
}

// ---- InverseSemigroup

int InverseSemigroup::inverse(int s) const {
  int found = -1;
  for (int t = 0; t < size(); ++t)
    if (product(product(s, t), s) == s && product(product(t, s), t) == t) {
      if (found >= 0) return -1;
      found = t;
    }
  return found;
}

std::vector<int> InverseSemigroup::idempotents() const {
  std::vector<int> r;
  for (int s = 0; s < size(); ++s)
    if (idempotent(s)) r.push_back(s);
  return r;
}

VerifyReport InverseSemigroup::verify() const {
  VerifyReport r;
  const int n = size();
  for (int s = 0; s < n; ++s) {
    r.expect(product(0, s) == 0 && product(s, 0) == 0, "zero is not absorbing at " + names[at(s)]);
    r.expect(inverse(s) >= 0, names[at(s)] + " has no unique inverse");
    for (int t = 0; t < n; ++t) {
      const int st = product(s, t);
      for (int u = 0; u < n; ++u)
        if (product(st, u) != product(s, product(t, u))) {
          r.expect(false, "not associative at " + names[at(s)] + ", " + names[at(t)] + ", " + names[at(u)]);
          break;
        }
      if (s && t && st) {
        auto g = G.mul(sigma[at(s)], sigma[at(t)]);
        r.expect(g && *g == sigma[at(st)], "sigma is not multiplicative at " + names[at(s)] + ", " + names[at(t)]);
      }
    }
  }
  r.checks += static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  return r;
}

std::optional<int> InverseSemigroup::idempotent_pure_witness() const {
  for (int s = 1; s < size(); ++s)
    if (sigma[at(s)] == 0 && !idempotent(s)) return s;
  return std::nullopt;
}

json InverseSemigroup::to_json() const {
  json el = json::array();
  for (int s = 1; s < size(); ++s) el.push_back({{"name", names[at(s)]}, {"sigma", G.name(sigma[at(s)])}, {"idempotent", idempotent(s)}});
  return {{"group", G.to_json()}, {"nonzero_elements", el}, {"size", size()}};
}

Starred star(const InverseSemigroup& s) {
  if (auto w = s.idempotent_pure_witness())
    throw Error(ErrorKind::NotIdempotentPure, s.names[at(*w)] + " has sigma 1 but is not idempotent", {{"witness", s.names[at(*w)]}});
  Starred out;
  out.basis = s.idempotents();  // 0 comes first
  std::map<int, int> e_index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    e_index[out.basis[i]] = static_cast<int>(i);
    names.push_back(s.names[at(out.basis[i])]);
  }
  std::vector<std::vector<int>> meet(names.size(), std::vector<int>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) meet[i][j] = e_index.at(s.product(out.basis[i], out.basis[j]));
  out.action = make_action("star", s.G, Semilattice(names, meet));
  for (int x = 1; x < s.size(); ++x) {
    const int xi = s.inverse(x);
    const int e = e_index.at(s.product(xi, x)), f = e_index.at(s.product(x, xi));
    const int g = s.sigma[at(x)];
    int prev = out.action.theta[at(g)][at(e)];
    if (prev >= 0 && prev != f)
      throw Error(ErrorKind::NotIdempotentPure, "two elements with sigma " + s.G.name(g) + " share a source but not a range",
                  {{"witness", s.names[at(x)]}});
    set_theta(out.action, g, e, f);
  }
  return out;
}

InverseSemigroup starstar(const PartialAction& a) {
  auto basis = a.verify_invariant_basis();
  if (!basis.ok()) throw Error(ErrorKind::NotInvariantBasis, basis.failures.front(), basis.to_json());
  InverseSemigroup S;
  S.G = a.G;
  S.names = {"0"};
  S.sigma = {-1};
  std::map<std::pair<int, int>, int> idx;
  std::vector<std::pair<int, int>> pairs{{-1, 0}};
  for (int g = 0; g < a.G.size(); ++g)
    for (int v : a.domain(g)) {
      idx[{g, v}] = S.size();
      pairs.push_back({g, v});
      S.names.push_back("(" + a.G.name(g) + "," + a.E.name(v) + ")");
      S.sigma.push_back(g);
    }
  const int n = S.size();
  S.mul.assign(at(n), std::vector<int>(at(n), 0));
  for (int x = 1; x < n; ++x)
    for (int y = 1; y < n; ++y) {
      auto [h, W] = pairs[at(x)];
      auto [g, V] = pairs[at(y)];
      const int X = a.E.meet(W, *a.act(g, V));
      if (X == 0) continue;
      auto hg = a.G.mul(h, g);
      if (!hg) throw Error(ErrorKind::WindowEscape, "product " + S.names[at(x)] + S.names[at(y)] + " leaves the group window");
      const int U = *a.act(a.G.inv(g), X);
      auto it = idx.find({*hg, U});
      if (it == idx.end()) throw Error(ErrorKind::ActionUndefined, "product " + S.names[at(x)] + S.names[at(y)] + " is undefined");
      S.mul[at(x)][at(y)] = it->second;
    }
  return S;
}

json RoundTrip::to_json() const {
  json j{{"verdict", isomorphic ? "Isomorphic" : "Fails"}, {"provenance", "verified-exact"}, {"checks", report.to_json()}};
  if (!map.is_null()) j["map"] = map;
  return j;
}

RoundTrip roundtrip_check(const InverseSemigroup& s) {
  RoundTrip rt;
  auto& r = rt.report;
  auto base = s.verify();
  r.checks += base.checks;
  for (const auto& f : base.failures) r.expect(false, f);
  Starred st = star(s);
  InverseSemigroup T = starstar(st.action);
  std::map<int, int> e_index;
  for (std::size_t i = 0; i < st.basis.size(); ++i) e_index[st.basis[i]] = static_cast<int>(i);
  std::map<std::string, int> t_index;
  for (int t = 0; t < T.size(); ++t) t_index[T.names[at(t)]] = t;
  const auto& A = st.action;
  std::vector<int> rho(at(s.size()), 0);
  rt.map = json::object();
  for (int x = 1; x < s.size(); ++x) {
    const int e = e_index.at(s.product(s.inverse(x), x));
    auto it = t_index.find("(" + A.G.name(s.sigma[at(x)]) + "," + A.E.name(e) + ")");
    r.expect(it != t_index.end(), "rho(" + s.names[at(x)] + ") is not in S~");
    rho[at(x)] = it == t_index.end() ? -1 : it->second;
    rt.map[s.names[at(x)]] = it == t_index.end() ? "?" : T.names[at(it->second)];
  }
  std::vector<int> sorted = rho;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> all(at(T.size()));
  std::iota(all.begin(), all.end(), 0);
  r.expect(sorted == all, "rho is not a bijection");
  if (!r.ok()) return rt;
  for (int x = 1; x < s.size(); ++x) {
    r.expect(T.sigma[at(rho[at(x)])] == s.sigma[at(x)], "sigma~ rho != sigma at " + s.names[at(x)]);
    for (int y = 1; y < s.size(); ++y) {
      const int xy = s.product(x, y);
      r.expect(rho[at(xy)] == T.product(rho[at(x)], rho[at(y)]), "rho is not multiplicative at " + s.names[at(x)] + ", " + s.names[at(y)]);
      // sigma(t)^-1.(supp(s^-1 s) n sigma(t).supp(t^-1 t)) = supp((st)^-1 st)
      const int sx = e_index.at(s.product(s.inverse(x), x)), ty = e_index.at(s.product(s.inverse(y), y));
      const int gt = s.sigma[at(y)];
      const int X = A.E.meet(sx, *A.act(gt, ty));
      const int lhs = *A.act(A.G.inv(gt), X);
      const int rhs = e_index.at(s.product(s.inverse(xy), xy));
      r.expect(lhs == rhs, "support identity fails at " + s.names[at(x)] + ", " + s.names[at(y)]);
    }
  }
  rt.isomorphic = r.ok();
  return rt;
}

RoundTrip roundtrip_action(const PartialAction& a) {
  RoundTrip rt;
  auto& r = rt.report;
  auto base = a.verify();
  r.checks += base.checks;
  for (const auto& f : base.failures) r.expect(false, f);
  InverseSemigroup S = starstar(a);
  Starred st = star(S);
  const auto& B = st.action;
  std::map<int, int> e_index;
  for (std::size_t i = 0; i < st.basis.size(); ++i) e_index[st.basis[i]] = static_cast<int>(i);
  std::map<std::string, int> s_index;
  for (int t = 0; t < S.size(); ++t) s_index[S.names[at(t)]] = t;
  std::vector<int> phi(at(a.E.size()), 0);
  rt.map = json::object();
  for (int v = 1; v < a.E.size(); ++v) {
    auto it = s_index.find("(" + a.G.name(0) + "," + a.E.name(v) + ")");
    r.expect(it != s_index.end() && e_index.count(it->second), "(1," + a.E.name(v) + ") is not an idempotent of S~");
    if (it == s_index.end() || !e_index.count(it->second)) return rt;
    phi[at(v)] = e_index.at(it->second);
    rt.map[a.E.name(v)] = B.E.name(phi[at(v)]);
  }
  r.expect(B.E.size() == a.E.size(), "semilattice sizes differ");
  for (int v = 0; v < a.E.size(); ++v)
    for (int w = 0; w < a.E.size(); ++w)
      r.expect(phi[at(a.E.meet(v, w))] == B.E.meet(phi[at(v)], phi[at(w)]), "V -> (1,V) does not preserve meets");
  for (int g = 0; g < a.G.size(); ++g)
    for (int v = 1; v < a.E.size(); ++v) {
      auto x = a.act(g, v);
      auto y = B.act(g, phi[at(v)]);
      r.expect(x.has_value() == y.has_value() && (!x || phi[at(*x)] == *y),
               "actions differ at " + a.G.name(g) + "." + a.E.name(v));
    }
  rt.isomorphic = r.ok();
  return rt;
}

}  // namespace semik
