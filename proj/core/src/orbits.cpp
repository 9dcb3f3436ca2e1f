#include "semik/orbits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "semik/errors.hpp"

namespace semik {

using nlohmann::json;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

int find(std::vector<int>& parent, int x) {
  while (parent[at(x)] != x) {
    parent[at(x)] = parent[at(parent[at(x)])];
    x = parent[at(x)];
  }
  return x;
}

json names_of(const PartialAction& a, const std::vector<int>& v, bool group) {
  json j = json::array();
  for (int x : v) j.push_back(group ? a.G.name(x) : a.E.name(x));
  return j;
}

}  // namespace

OrbitPartition compute_orbits(const PartialAction& a) {
  const int n = a.E.size();
  std::vector<int> parent(at(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (int g = 0; g < a.G.size(); ++g)
    for (int e : a.domain(g)) {
      int x = find(parent, e), y = find(parent, *a.act(g, e));
      if (x != y) parent[at(std::max(x, y))] = std::min(x, y);
    }
  OrbitPartition p;
  p.windowed = a.windowed();
  p.class_of.assign(at(n), -1);
  std::map<int, int> cls;
  for (int e = 1; e < n; ++e) {
    int r = find(parent, e);
    auto [it, fresh] = cls.emplace(r, static_cast<int>(p.classes.size()));
    if (fresh) {
      p.classes.emplace_back();
      p.reps.push_back(r);
    }
    p.classes[at(it->second)].push_back(e);
    p.class_of[at(e)] = it->second;
  }
  return p;
}

json OrbitPartition::to_json(const PartialAction& a) const {
  json cs = json::array();
  for (std::size_t i = 0; i < classes.size(); ++i)
    cs.push_back({{"representative", a.E.name(reps[i])}, {"members", names_of(a, classes[i], false)}});
  json j{{"classes", cs}, {"count", classes.size()}};
  if (windowed) {
    j["provenance"] = "verified-to-bound";
    j["bound"] = {{"group_window", a.G.size()}};
    j["note"] = "classes may merge through group elements outside the window";
  } else {
    j["provenance"] = "verified-exact";
  }
  return j;
}

StabilizerData stabilizer(const PartialAction& a, int d) {
  if (d <= 0 || d >= a.E.size()) throw Error(ErrorKind::InvalidParams, "stabilizer needs a non-zero idempotent");
  StabilizerData st;
  st.d = d;
  st.windowed = a.windowed();
  for (int g = 0; g < a.G.size(); ++g) {
    auto x = a.act(g, d);
    if (!x) continue;
    st.G_of_d.push_back(g);
    if (*x == d) st.G_d.push_back(g);
  }
  std::set<int> sub(st.G_d.begin(), st.G_d.end());
  for (int x : st.G_d) {
    if (!sub.count(a.G.inv(x))) st.subgroup = false;
    for (int y : st.G_d) {
      auto xy = a.G.mul(x, y);
      if (xy && !sub.count(*xy)) st.subgroup = false;
    }
  }
  // Greedy generating set: smallest element outside the span found so far.
  std::set<int> span{0};
  for (int x : st.G_d) {
    if (span.count(x)) continue;
    st.generators.push_back(x);
    bool grown = true;
    span.insert(x);
    while (grown) {
      grown = false;
      for (int p : std::vector<int>(span.begin(), span.end()))
        for (int q : st.generators) {
          auto pq = a.G.mul(p, q);
          if (pq && sub.count(*pq) && span.insert(*pq).second) grown = true;
        }
    }
  }
  // Left cosets gamma G_d.
  st.coset_of.assign(at(a.G.size()), -1);
  for (int g = 0; g < a.G.size(); ++g) {
    if (st.coset_of[at(g)] >= 0) continue;
    const int c = st.cosets();
    st.section.push_back(g);
    for (int h : st.G_d)
      if (auto gh = a.G.mul(g, h)) st.coset_of[at(*gh)] = c;
    st.coset_of[at(g)] = c;
  }
  return st;
}

json StabilizerData::to_json(const PartialAction& a) const {
  json j{{"d", a.E.name(d)},
         {"G(d)", names_of(a, G_of_d, true)},
         {"G_d", names_of(a, G_d, true)},
         {"generators", names_of(a, generators, true)},
         {"cosets", section.size()},
         {"section", names_of(a, section, true)},
         {"subgroup", subgroup},
         {"order", G_d.size()}};
  if (!windowed) {
    bool cyclic = false;
    for (int x : G_d)
      if (a.G.order(x) == static_cast<int>(G_d.size())) cyclic = true;
    j["cyclic"] = cyclic;
  }
  if (windowed) {
    j["provenance"] = "verified-to-bound";
    j["bound"] = {{"group_window", a.G.size()}};
    j["note"] = "stabilizer is the part found inside the window";
  } else {
    j["provenance"] = "verified-exact";
  }
  return j;
}

// ---- Xi_d

void XiBijection::Verdict::expect(bool c, const std::string& what) {
  ++checks;
  if (!c) {
    ok = false;
    if (failures.size() < 10) failures.push_back(what);
  }
}

json XiBijection::Verdict::to_json(const std::string& name) const {
  json j{{"check", name}, {"verdict", ok ? "Holds" : "Fails"}, {"provenance", "verified-exact"}, {"checks", checks}};
  if (!failures.empty()) j["failures"] = failures;
  return j;
}

XiBijection::XiBijection(const PartialAction& a, StabilizerData st) : a_(a), st_(std::move(st)) {
  if (a_.windowed()) {
    json escaping = json::array();
    for (int g = 0; g < a_.G.size() && escaping.size() < 10; ++g)
      for (int h = 0; h < a_.G.size(); ++h)
        if (!a_.G.mul(g, h)) {
          escaping.push_back({a_.G.name(g), a_.G.name(h)});
          break;
        }
    throw Error(ErrorKind::WindowEscape, "Xi_d needs a finite group; products leave the window", {{"escaping", escaping}});
  }
  if (!st_.subgroup) throw Error(ErrorKind::DomainViolation, "G_d is not a subgroup");
  std::set<int> orbit;
  for (int g : st_.G_of_d) orbit.insert(*a_.act(g, st_.d));
  for (int e : orbit)
    for (int z = 0; z < a_.G.size(); ++z) points_.push_back({e, z});
  for (const auto& p : points_) images_.push_back(xi(p));
}

int XiBijection::mul(int x, int y) const { return *a_.G.mul(x, y); }

int XiBijection::gamma_for(int e) const {
  for (int g : st_.G_of_d)
    if (a_.act(g, st_.d) == e) return g;
  throw Error(ErrorKind::DomainViolation, a_.E.name(e) + " is not in G(d).d");
}

XiImage XiBijection::xi(const XiPoint& p) const {
  const int gamma = gamma_for(p.e);
  const int cg = st_.coset_of[at(gamma)];
  const int ct = st_.coset_of[at(mul(p.zeta, gamma))];
  const int mu = mul(mul(a_.G.inv(st_.section[at(ct)]), p.zeta), st_.section[at(cg)]);
  return {cg, ct, mu};
}

XiPoint XiBijection::xi_inv(const XiImage& q) const {
  const int rg = st_.section[at(q.gamma_coset)];
  auto e = a_.act(rg, st_.d);
  if (!e) throw Error(ErrorKind::DomainViolation, "section element outside G(d)");
  return {*e, mul(mul(st_.section[at(q.tau_coset)], q.mu), a_.G.inv(rg))};
}

XiImage XiBijection::w(int g, const XiImage& q) const {
  const int rt = st_.section[at(q.tau_coset)];
  const int back = st_.coset_of[at(mul(a_.G.inv(g), rt))];
  return {q.gamma_coset, q.tau_coset, mul(mul(mul(a_.G.inv(rt), g), st_.section[at(back)]), q.mu)};
}

XiImage XiBijection::l(int g, const XiImage& q) const {
  return {q.gamma_coset, st_.coset_of[at(mul(g, st_.section[at(q.tau_coset)]))], q.mu};
}

XiBijection::Verdict XiBijection::verify_bijection() const {
  Verdict v;
  std::set<XiImage> img;
  std::set<int> gd(st_.G_d.begin(), st_.G_d.end());
  for (const auto& p : points_) {
    auto q = xi(p);
    v.expect(gd.count(q.mu) > 0, "mu is not in G_d");
    auto back = xi_inv(q);
    v.expect(back.e == p.e && back.zeta == p.zeta, "Xi^-1 o Xi != id at (" + a_.E.name(p.e) + "," + a_.G.name(p.zeta) + ")");
    img.insert(q);
  }
  v.expect(img.size() == points_.size(), "Xi is not injective");
  // Every target triple with gamma-coset from G(d) is hit.
  std::set<int> gcos;
  for (int g : st_.G_of_d) gcos.insert(st_.coset_of[at(g)]);
  std::size_t targets = gcos.size() * static_cast<std::size_t>(st_.cosets()) * st_.G_d.size();
  v.expect(targets == points_.size(), "point count differs from |G(d)/G_d| |G/G_d| |G_d|");
  for (int cg : gcos)
    for (int ct = 0; ct < st_.cosets(); ++ct)
      for (int mu : st_.G_d) {
        XiImage q{cg, ct, mu};
        auto p = xi_inv(q);
        v.expect(xi(p) == q, "Xi o Xi^-1 != id");
      }
  return v;
}

XiBijection::Verdict XiBijection::verify_cocycle() const {
  Verdict v;
  for (int g = 0; g < a_.G.size(); ++g)
    for (int h = 0; h < a_.G.size(); ++h)
      for (const auto& q : images_) {
        auto lhs = w(mul(g, h), q);
        auto rhs = w(g, l(g, w(h, l(a_.G.inv(g), q))));
        v.expect(lhs == rhs, "w_gh != w_g l_g w_h l_g^-1 at g=" + a_.G.name(g) + ", h=" + a_.G.name(h));
      }
  return v;
}

XiBijection::Verdict XiBijection::verify_conjugation() const {
  Verdict v;
  for (int g = 0; g < a_.G.size(); ++g)
    for (const auto& q : images_) {
      auto p = xi_inv(q);
      auto lhs = xi({p.e, mul(g, p.zeta)});
      auto rhs = w(g, l(g, q));
      v.expect(lhs == rhs, "Xi lambda_g Xi^-1 != w_g l_g at g=" + a_.G.name(g));
    }
  return v;
}

json XiBijection::to_json() const {
  json table = json::array();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    const auto& q = images_[i];
    table.push_back({{"point", {a_.E.name(p.e), a_.G.name(p.zeta)}},
                     {"image", {a_.G.name(st_.section[at(q.gamma_coset)]), a_.G.name(st_.section[at(q.tau_coset)]),
                                a_.G.name(q.mu)}}});
  }
  return {{"d", a_.E.name(st_.d)}, {"points", points_.size()}, {"table", table}};
}

// ---- S_d

LocalGroup local_group(const InverseSemigroup& s, int d) {
  if (!s.idempotent(d) || d == 0) throw Error(ErrorKind::InvalidParams, s.names[at(d)] + " is not a non-zero idempotent");
  LocalGroup lg;
  lg.d = d;
  for (int x = 1; x < s.size(); ++x) {
    const int xi = s.inverse(x);
    if (s.product(xi, x) == d && s.product(x, xi) == d) lg.elements.push_back(x);
  }
  std::set<int> el(lg.elements.begin(), lg.elements.end());
  lg.is_group = el.count(d) > 0;
  for (int x : lg.elements) {
    lg.is_group = lg.is_group && s.product(d, x) == x && s.product(x, d) == x && el.count(s.inverse(x));
    for (int y : lg.elements) lg.is_group = lg.is_group && el.count(s.product(x, y));
  }
  return lg;
}

json LocalGroup::to_json(const InverseSemigroup& s) const {
  json el = json::array();
  for (int x : elements) el.push_back(s.names[at(x)]);
  return {{"d", s.names[at(d)]}, {"elements", el}, {"group", is_group}};
}

json orbit_report(const PartialAction& a, bool verify) {
  auto part = compute_orbits(a);
  json reps = json::array();
  bool ok = true;
  for (int d : part.reps) {
    auto st = stabilizer(a, d);
    json r{{"stabilizer", st.to_json(a)}};
    if (verify && !a.windowed()) {
      XiBijection xb(a, st);
      auto b = xb.verify_bijection(), c = xb.verify_cocycle(), k = xb.verify_conjugation();
      ok = ok && b.ok && c.ok && k.ok;
      r["xi"] = {{"points", xb.points().size()},
                 {"checks", {b.to_json("Xi_d bijection"), c.to_json("w cocycle"), k.to_json("Xi lambda Xi^-1 = w l")}}};
    }
    reps.push_back(r);
  }
  json j{{"action", a.label}, {"orbits", part.to_json(a)}, {"representatives", reps}};
  if (verify) {
    j["verdict"] = a.windowed() ? "Skipped" : (ok ? "Holds" : "Fails");
    if (!a.windowed()) j["provenance"] = "verified-exact";
  }
  if (a.windowed()) {
    j["bound"] = {{"group_window", a.G.size()}};
    if (verify) j["note"] = "Xi_d and cocycle checks need a finite group";
  }
  return j;
}

}  // namespace semik
