#include "semik/smashlab.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "semik/errors.hpp"

namespace semik {

using nlohmann::json;

namespace {

const std::vector<int> kEmpty;

}  // namespace

int bullet(const PartialAction& a, int e, int alpha, int f) {
  if (e == 0 || f == 0) return 0;
  auto ae = a.act(alpha, e);
  if (!ae)
    throw Error(ErrorKind::DomainViolation, a.E.name(e) + " is not in the domain of " + a.G.name(alpha));
  const int m = a.E.meet(*ae, f);
  return m == 0 ? 0 : *a.act(a.G.inv(alpha), m);
}

const char* to_string(Stage s) {
  switch (s) {
    case Stage::Raw: return "raw";
    case Stage::StageOne: return "stage-one";
    case Stage::StageTwo: return "stage-two";
  }
  return "?";
}

const char* to_string(AlgTag t) {
  switch (t) {
    case AlgTag::A: return "A_i";
    case AlgTag::CalA: return "calA_i";
    case AlgTag::KA: return "K(x)A_i";
    case AlgTag::KCalA: return "K(x)calA_i";
  }
  return "?";
}

const std::vector<int>& SubsemilatticeFamily::at(int zeta, int eta) const {
  auto it = table.find({zeta, eta});
  return it == table.end() ? kEmpty : it->second;
}

std::size_t SubsemilatticeFamily::total() const {
  std::size_t n = 0;
  for (const auto& [k, v] : table) n += v.size();
  return n;
}

json SubsemilatticeFamily::to_json(const PartialAction& a) const {
  json rows = json::array();
  for (const auto& [k, v] : table) {
    json names = json::array();
    for (int e : v) names.push_back(a.E.name(e));
    rows.push_back({{"zeta", a.G.name(k.first)}, {"eta", a.G.name(k.second)}, {"elements", names}});
  }
  return {{"stage", to_string(stage)}, {"total", total()}, {"table", rows}};
}

void MatrixUnitElement::add(const UnitLabel& u, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(u, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

MatrixUnitElement& MatrixUnitElement::operator+=(const MatrixUnitElement& o) {
  if (o.tag != tag && !o.is_zero() && !is_zero())
    throw Error(ErrorKind::TagMismatch, std::string("cannot add ") + to_string(o.tag) + " to " + to_string(tag));
  if (is_zero()) tag = o.tag;
  for (const auto& [u, c] : o.terms) add(u, c);
  return *this;
}

MatrixUnitElement& MatrixUnitElement::operator-=(const MatrixUnitElement& o) { return *this += o.scaled(-1); }

MatrixUnitElement MatrixUnitElement::scaled(const Scalar& c) const {
  MatrixUnitElement r{tag, {}};
  for (const auto& [u, v] : terms) r.add(u, v * c);
  return r;
}

void CheckOutcome::expect(bool cond, const std::string& what) {
  ++checks;
  if (!cond) {
    ok = false;
    if (failures.size() < 10) failures.push_back(what);
  }
}

json CheckOutcome::to_json() const {
  json j{{"check", name}, {"verdict", ok ? "Holds" : "Fails"}, {"provenance", "verified-exact"}, {"checks", checks}};
  if (!failures.empty()) j["failures"] = failures;
  if (!detail.is_null()) j["detail"] = detail;
  return j;
}

// ---- SmashLab

SmashLab::SmashLab(PartialAction action, std::vector<int> sigma, std::vector<int> F, SmashConfig cfg)
    : a_(std::move(action)), sigma_(std::move(sigma)), F_(std::move(F)), cfg_(cfg) {
  auto norm = [&](std::vector<int>& v, const char* what) {
    for (int g : v)
      if (g < 0 || g >= a_.G.size()) throw Error(ErrorKind::InvalidParams, std::string(what) + " contains an unknown group element");
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  norm(sigma_, "Sigma");
  norm(F_, "F");
  if (!std::binary_search(sigma_.begin(), sigma_.end(), 0)) throw Error(ErrorKind::InvalidParams, "Sigma must contain 1");
  if (!std::binary_search(F_.begin(), F_.end(), 0)) throw Error(ErrorKind::InvalidParams, "F must contain 1");
  for (int x : F_)
    for (int y : F_) {
      auto xy = g_mul(x, y);
      if (!xy || !std::binary_search(F_.begin(), F_.end(), *xy))
        throw Error(ErrorKind::InvalidParams, "F is not a subgroup");
    }
  for (int g : F_)
    for (int s : sigma_) {
      auto gs = g_mul(g, s);
      if (!gs || !std::binary_search(sigma_.begin(), sigma_.end(), *gs))
        throw Error(ErrorKind::InvalidParams, "Sigma is not F-invariant: " + a_.G.name(g) + a_.G.name(s) + " is missing");
    }
  for (int z : sigma_)
    for (int h : sigma_) g_rel(z, h);
}

std::optional<int> SmashLab::g_mul(int x, int y) const { return a_.G.mul(x, y); }

int SmashLab::g_mul_or_throw(int x, int y) const {
  auto r = g_mul(x, y);
  if (!r) throw Error(ErrorKind::WindowEscape, a_.G.name(x) + " * " + a_.G.name(y) + " leaves the group window");
  return *r;
}

bool SmashLab::in_range(int g, int e) const { return e == 0 || a_.act(a_.G.inv(g), e).has_value(); }

std::vector<int> SmashLab::meet_closure(std::vector<int> s) const {
  std::set<int> cur(s.begin(), s.end());
  cur.erase(0);
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<int> v(cur.begin(), cur.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        int m = a_.E.meet(v[i], v[j]);
        if (m != 0 && cur.insert(m).second) grown = true;
      }
    if (cur.size() > cfg_.cap) throw Error(ErrorKind::BudgetExceeded, "meet closure exceeds the cap");
  }
  return {cur.begin(), cur.end()};
}

SubsemilatticeFamily SmashLab::raw_from_seeds(const std::vector<int>& seeds) const {
  SubsemilatticeFamily raw;
  for (int z : sigma_)
    for (int h : sigma_) {
      auto& cell = raw.table[{z, h}];
      const int g = g_rel(z, h);
      for (int e : seeds)
        if (e > 0 && in_range(g, e)) cell.push_back(e);
      std::sort(cell.begin(), cell.end());
      cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    }
  return raw;
}

SubsemilatticeFamily SmashLab::close_stage_one(const SubsemilatticeFamily& raw) const {
  SubsemilatticeFamily out;
  out.stage = Stage::StageOne;
  std::set<std::pair<int, int>> done;
  for (int z : sigma_)
    for (int h : sigma_) {
      if (done.count({z, h})) continue;
      const int rel = g_rel(z, h);        // zeta^-1 eta
      const int back = a_.G.inv(rel);     // eta^-1 zeta
      // Pool the raw sets of the whole class into E_{zeta^-1 eta}.
      std::vector<int> pool;
      for (int gam : F_) {
        const int gz = g_mul_or_throw(gam, z), gh = g_mul_or_throw(gam, h);
        for (int e : raw.at(gz, gh)) pool.push_back(e);
        for (int e : raw.at(gh, gz)) {
          auto t = a_.act(rel, e);
          if (!t) throw Error(ErrorKind::ActionUndefined, a_.E.name(e) + " cannot be transported by " + a_.G.name(rel));
          pool.push_back(*t);
        }
      }
      std::vector<int> fwd, bwd;
      if (a_.G.order(back).has_value()) {
        std::set<int> cur(pool.begin(), pool.end());
        cur.erase(0);
        bool grown = true;
        while (grown) {
          grown = false;
          for (int e : std::vector<int>(cur.begin(), cur.end())) {
            auto t = a_.act(back, e);
            if (!t || !in_range(rel, *t))
              throw Error(ErrorKind::ActionUndefined,
                          a_.G.name(back) + "." + a_.E.name(e) + " leaves E_" + a_.G.name(rel));
            if (*t != 0 && cur.insert(*t).second) grown = true;
          }
          auto closed = meet_closure({cur.begin(), cur.end()});
          if (closed.size() != cur.size()) {
            cur = {closed.begin(), closed.end()};
            grown = true;
          }
        }
        fwd = bwd = {cur.begin(), cur.end()};
      } else {
        fwd = meet_closure(pool);
        for (int e : fwd) bwd.push_back(*a_.act(back, e));
        std::sort(bwd.begin(), bwd.end());
      }
      for (int gam : F_) {
        const int gz = g_mul_or_throw(gam, z), gh = g_mul_or_throw(gam, h);
        out.table[{gz, gh}] = fwd;
        out.table[{gh, gz}] = bwd;
        done.insert({gz, gh});
        done.insert({gh, gz});
      }
    }
  return out;
}

SubsemilatticeFamily SmashLab::close_stage_two(const SubsemilatticeFamily& one) const {
  SubsemilatticeFamily out;
  out.stage = Stage::StageTwo;
  for (int z : sigma_) {
    std::set<std::pair<int, int>> seen;  // (eta, x)
    std::vector<std::pair<int, int>> queue;
    for (int h : sigma_)
      for (int e : one.at(z, h))
        if (seen.insert({h, e}).second) queue.push_back({h, e});
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [h, x] = queue[qi];
      const int alpha = g_rel(h, z);  // eta^-1 zeta
      for (int h2 : sigma_)
        for (int e : one.at(h, h2)) {
          const int y = bullet(a_, x, alpha, e);
          if (y != 0 && seen.insert({h2, y}).second) queue.push_back({h2, y});
        }
      if (queue.size() > cfg_.cap)
        throw Error(ErrorKind::BudgetExceeded, "stage-two closure exceeds the cap of " + std::to_string(cfg_.cap));
    }
    for (int t : sigma_) {
      std::vector<int> pi;
      for (const auto& [h, x] : seen)
        if (h == t) pi.push_back(x);
      out.table[{z, t}] = meet_closure(pi);
    }
  }
  return out;
}

const SubsemilatticeFamily& SmashLab::build(const std::vector<int>& seeds) {
  set_family(close_stage_two(close_stage_one(raw_from_seeds(seeds))));
  return fam_;
}

void SmashLab::set_family(SubsemilatticeFamily fam) {
  fam_ = std::move(fam);
  index_units();
}

void SmashLab::index_units() {
  units_.clear();
  for (const auto& [k, v] : fam_.table)
    for (int d : v) units_.push_back({{}, d, k.first, k.second});
  std::sort(units_.begin(), units_.end());
}

int SmashLab::partner(const UnitLabel& u) const {
  auto t = a_.act(g_rel(u.eta, u.zeta), u.d);
  if (!t) throw Error(ErrorKind::DomainViolation, a_.E.name(u.d) + " is not in E_{zeta^-1 eta}");
  return *t;
}

CheckOutcome SmashLab::check_properties(const SubsemilatticeFamily& fam, bool want_c) const {
  CheckOutcome r;
  r.name = want_c ? "properties (a) (b) (c)" : "properties (a) (b)";
  for (int z : sigma_)
    for (int h : sigma_) {
      const auto& s = fam.at(z, h);
      const int rel = g_rel(z, h), back = a_.G.inv(rel);
      const std::string pair = "(" + a_.G.name(z) + "," + a_.G.name(h) + ")";
      for (int d : s) r.expect(in_range(rel, d), a_.E.name(d) + " is not in E_{zeta^-1 eta} at " + pair);
      for (int d : s)
        for (int e : s) {
          int m = a_.E.meet(d, e);
          r.expect(m == 0 || std::binary_search(s.begin(), s.end(), m), "not meet-closed at " + pair);
        }
      for (int gam : F_) {
        const int gz = g_mul_or_throw(gam, z), gh = g_mul_or_throw(gam, h);
        r.expect(fam.at(gz, gh) == s, "(a) fails for gamma=" + a_.G.name(gam) + " at " + pair);
      }
      std::vector<int> moved;
      for (int d : s) {
        auto t = a_.act(back, d);
        r.expect(t.has_value(), "(b) transport undefined at " + pair);
        if (t) moved.push_back(*t);
      }
      std::sort(moved.begin(), moved.end());
      r.expect(moved == fam.at(h, z), "(b) fails at " + pair);
      if (!want_c) continue;
      for (int t : sigma_) {
        const auto& target = fam.at(z, t);
        for (int d : s)
          for (int e : fam.at(h, t)) {
            int y = bullet(a_, d, back, e);
            r.expect(y == 0 || std::binary_search(target.begin(), target.end(), y),
                     "(c) fails: " + a_.E.name(d) + " . (" + a_.G.name(rel) + " " + a_.E.name(e) + ") not in E_(" +
                         a_.G.name(z) + "," + a_.G.name(t) + ")");
          }
      }
    }
  r.detail = {{"family_elements", fam.total()}};
  return r;
}

CheckOutcome SmashLab::check_redundant_factor(const SubsemilatticeFamily& one) const {
  CheckOutcome r;
  r.name = "redundant factor";
  struct Factor {
    int eta, e;
  };
  std::size_t visited = 0;
  for (int z : sigma_) {
    // product e_0 . (z^-1 eta_1 e_1) . ... ; factors[k] = (eta_k, e_k), factors[0].eta = z
    auto product = [&](const std::vector<Factor>& f, std::size_t skip) -> std::optional<int> {
      int x = f[0].e;
      for (std::size_t k = 1; k < f.size(); ++k) {
        if (k == skip) continue;
        try {
          x = bullet(a_, x, g_rel(f[k].eta, z), f[k].e);
        } catch (const Error&) {
          return std::nullopt;
        }
        if (x == 0) return 0;
      }
      return x;
    };
    std::vector<Factor> seq;
    std::function<void(int)> dfs = [&](int last_eta) {
      if (visited >= cfg_.sample) return;
      ++visited;
      const std::size_t n = seq.size();
      for (std::size_t kb = 2; kb < n; ++kb)
        for (std::size_t k = 1; k < kb; ++k)
          if (seq[k].eta == seq[kb].eta && seq[k].e == seq[kb].e) {
            auto full = product(seq, n), cut = product(seq, kb);
            r.expect(full.has_value() && full == cut, "omitting a repeated factor changes the product");
          }
      if (static_cast<int>(n) > cfg_.redundant_len) return;
      for (int h : sigma_)
        for (int e : one.at(last_eta, h)) {
          seq.push_back({last_eta, e});
          dfs(h);
          seq.pop_back();
        }
    };
    for (int h : sigma_)
      for (int e0 : one.at(z, h)) {
        seq = {{z, e0}};
        dfs(h);
      }
  }
  r.detail = {{"sequences", visited}, {"max_factors", cfg_.redundant_len + 1}, {"truncated", visited >= cfg_.sample}};
  return r;
}

CheckOutcome SmashLab::check_eff_prime() const {
  CheckOutcome r;
  r.name = "eff' transport identity";
  std::size_t printed_undefined = 0, n = 0;
  for (int z : sigma_)
    for (int t : sigma_)
      for (int mu : sigma_) {
        const int zt = g_rel(z, t), tm = g_rel(t, mu);
        for (int ec = 1; ec < a_.E.size() && n < cfg_.sample; ++ec) {
          if (!in_range(zt, ec)) continue;
          for (int f = 1; f < a_.E.size(); ++f) {
            if (!in_range(tm, f)) continue;
            for (int f2 = 1; f2 < a_.E.size(); ++f2, ++n) {
              const int lhs = bullet(a_, ec, g_rel(t, z), bullet(a_, f, g_rel(mu, t), f2));
              const int rhs = bullet(a_, bullet(a_, ec, g_rel(t, z), f), g_rel(mu, z), f2);
              r.expect(lhs == rhs, "eff' fails at " + a_.E.name(ec) + ", " + a_.E.name(f) + ", " + a_.E.name(f2));
            }
          }
        }
        // Hypotheses as printed: e in E_{theta^-1 zeta}, f in E_{mu^-1 theta}.
        for (int ec = 1; ec < a_.E.size(); ++ec)
          for (int f = 1; f < a_.E.size(); ++f)
            if (in_range(g_rel(t, z), ec) && in_range(g_rel(mu, t), f) && (!in_range(zt, ec) || !in_range(tm, f)))
              ++printed_undefined;
      }
  r.detail = {{"triples", n}, {"typing", "e in E_{zeta^-1 theta}, f in E_{theta^-1 mu}"},
              {"printed_typing_undefined_pairs", printed_undefined}};
  return r;
}

// ---- algebra

MatrixUnitElement SmashLab::unit(AlgTag tag, const UnitLabel& u) const {
  MatrixUnitElement x{tag, {}};
  x.add(u, 1);
  return x;
}

std::optional<UnitLabel> SmashLab::inner_mul(AlgTag tag, const UnitLabel& x, const UnitLabel& y) const {
  UnitLabel r;
  if (x.k.size() != y.k.size()) throw Error(ErrorKind::TagMismatch, "tensor depths differ");
  for (std::size_t i = 0; i < x.k.size(); ++i) {
    if (x.k[i].second != y.k[i].first) return std::nullopt;
    r.k.push_back({x.k[i].first, y.k[i].second});
  }
  if (tag == AlgTag::A || tag == AlgTag::KA) {
    if (x.eta != y.zeta) return std::nullopt;
    const int d = bullet(a_, x.d, g_rel(x.eta, x.zeta), y.d);
    if (d == 0) return std::nullopt;
    r.d = d;
  } else {
    if (partner(x) != y.d || x.eta != y.zeta) return std::nullopt;
    r.d = x.d;
  }
  r.zeta = x.zeta;
  r.eta = y.eta;
  return r;
}

MatrixUnitElement SmashLab::mul(const MatrixUnitElement& x, const MatrixUnitElement& y) const {
  if (x.tag != y.tag)
    throw Error(ErrorKind::TagMismatch, std::string(to_string(x.tag)) + " times " + to_string(y.tag));
  MatrixUnitElement r{x.tag, {}};
  for (const auto& [u, c] : x.terms)
    for (const auto& [v, e] : y.terms)
      if (auto w = inner_mul(x.tag, u, v)) r.add(*w, c * e);
  return r;
}

MatrixUnitElement SmashLab::star(const MatrixUnitElement& x) const {
  MatrixUnitElement r{x.tag, {}};
  for (const auto& [u, c] : x.terms) {
    UnitLabel s{{}, partner(u), u.eta, u.zeta};
    for (auto [p, q] : u.k) s.k.push_back({q, p});
    r.add(s, c.conj());
  }
  return r;
}

MatrixUnitElement SmashLab::act(int gamma, const MatrixUnitElement& x) const {
  MatrixUnitElement r{x.tag, {}};
  for (const auto& [u, c] : x.terms) {
    UnitLabel v = u;
    v.zeta = g_mul_or_throw(gamma, u.zeta);
    v.eta = g_mul_or_throw(gamma, u.eta);
    r.add(v, c);
  }
  return r;
}

namespace {

void require(const MatrixUnitElement& x, AlgTag t, const char* op) {
  if (x.tag != t && !x.is_zero())
    throw Error(ErrorKind::TagMismatch, std::string(op) + " expects " + to_string(t) + ", got " + to_string(x.tag));
}

}  // namespace

MatrixUnitElement SmashLab::phi(const MatrixUnitElement& x) const {
  require(x, AlgTag::CalA, "phi");
  MatrixUnitElement r{AlgTag::KA, {}};
  for (const auto& [u, c] : x.terms) {
    UnitLabel v = u;
    v.k = {{u.d, partner(u)}};
    r.add(v, c);
  }
  return r;
}

int SmashLab::mobius(int x, int d, const std::vector<int>& poset) const {
  std::map<int, int> memo;
  std::function<int(int)> mu = [&](int y) -> int {
    if (y == d) return 1;
    auto it = memo.find(y);
    if (it != memo.end()) return it->second;
    int s = 0;
    for (int z : poset)
      if (z != y && a_.E.leq(y, z) && a_.E.leq(z, d)) s -= mu(z);
    memo[y] = s;
    return s;
  };
  return mu(x);
}

MatrixUnitElement SmashLab::psi(const MatrixUnitElement& x) const {
  require(x, AlgTag::CalA, "psi");
  MatrixUnitElement r{AlgTag::A, {}};
  for (const auto& [u, c] : x.terms) {
    const auto& s = fam_.at(u.zeta, u.eta);
    for (int y : s)
      if (a_.E.leq(y, u.d)) r.add({u.k, y, u.zeta, u.eta}, c * Scalar(mobius(y, u.d, s)));
  }
  return r;
}

MatrixUnitElement SmashLab::psi_inv(const MatrixUnitElement& x) const {
  require(x, AlgTag::A, "psi_inv");
  MatrixUnitElement r{AlgTag::CalA, {}};
  for (const auto& [u, c] : x.terms)
    for (int e : fam_.at(u.zeta, u.eta))
      if (a_.E.leq(e, u.d)) r.add({u.k, e, u.zeta, u.eta}, c);
  return r;
}

MatrixUnitElement SmashLab::id_psi_inv(const MatrixUnitElement& x) const {
  require(x, AlgTag::KA, "id (x) psi_inv");
  MatrixUnitElement r{AlgTag::KCalA, {}};
  for (const auto& [u, c] : x.terms)
    for (int e : fam_.at(u.zeta, u.eta))
      if (a_.E.leq(e, u.d)) r.add({u.k, e, u.zeta, u.eta}, c);
  return r;
}

MatrixUnitElement SmashLab::I(const MatrixUnitElement& x) const {
  require(x, AlgTag::CalA, "I");
  MatrixUnitElement r{AlgTag::KCalA, {}};
  for (const auto& [u, c] : x.terms) {
    UnitLabel v = u;
    v.k = {{u.d, partner(u)}};
    r.add(v, c);
  }
  return r;
}

MatrixUnitElement SmashLab::rho(const MatrixUnitElement& x) const {
  if (x.tag != AlgTag::CalA && x.tag != AlgTag::KCalA && !x.is_zero())
    throw Error(ErrorKind::TagMismatch, std::string("rho expects the discrete algebra, got ") + to_string(x.tag));
  MatrixUnitElement r{AlgTag::KCalA, {}};
  for (const auto& [u, c] : x.terms) {
    auto k = u.k;
    k.push_back({u.d, partner(u)});
    for (int e : fam_.at(u.zeta, u.eta))
      if (e != u.d && a_.E.leq(e, u.d)) r.add({k, e, u.zeta, u.eta}, c);
  }
  return r;
}

MatrixUnitElement SmashLab::rho_flat(const MatrixUnitElement& x) const {
  require(x, AlgTag::CalA, "rho_flat");
  MatrixUnitElement r{AlgTag::CalA, {}};
  for (const auto& [u, c] : x.terms)
    for (int e : fam_.at(u.zeta, u.eta))
      if (e != u.d && a_.E.leq(e, u.d)) r.add({u.k, e, u.zeta, u.eta}, c);
  return r;
}

int SmashLab::longest_chain(const std::vector<int>& s) const {
  std::map<int, int> memo;
  std::function<int(int)> len = [&](int x) -> int {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    int best = 1;
    for (int y : s)
      if (y != x && a_.E.leq(y, x)) best = std::max(best, 1 + len(y));
    memo[x] = best;
    return best;
  };
  int best = 0;
  for (int x : s) best = std::max(best, len(x));
  return best;
}

int SmashLab::chain_length() const {
  std::set<int> all;
  for (const auto& [k, v] : fam_.table) all.insert(v.begin(), v.end());
  return longest_chain({all.begin(), all.end()});
}

CheckOutcome SmashLab::verify_algebra() const {
  CheckOutcome r;
  r.name = "finite-dimensional algebra";
  std::set<UnitLabel> uset(units_.begin(), units_.end());
  const std::size_t n = units_.size();
  const bool exhaustive = n * n * n <= cfg_.sample * 50;
  for (AlgTag tag : {AlgTag::A, AlgTag::CalA}) {
    for (const auto& x : units_) {
      auto xs = star(unit(tag, x));
      r.expect(xs.terms.size() == 1 && uset.count(xs.terms.begin()->first), "star leaves the unit set");
      r.expect(star(xs) == unit(tag, x), "star is not an involution");
      for (int g : F_) {
        auto gx = act(g, unit(tag, x));
        r.expect(uset.count(gx.terms.begin()->first) > 0, "unit set is not F-invariant");
      }
      for (const auto& y : units_) {
        auto w = inner_mul(tag, x, y);
        r.expect(!w || uset.count(*w), std::string("product leaves the unit set in ") + to_string(tag));
        auto xy = mul(unit(tag, x), unit(tag, y));
        r.expect(star(xy) == mul(star(unit(tag, y)), xs), "(xy)* != y* x*");
      }
    }
    std::size_t step = exhaustive ? 1 : std::max<std::size_t>(1, n / 20);
    for (std::size_t i = 0; i < n; i += step)
      for (const auto& y : units_)
        for (const auto& z : units_) {
          auto x1 = unit(tag, units_[i]), y1 = unit(tag, y), z1 = unit(tag, z);
          r.expect(mul(mul(x1, y1), z1) == mul(x1, mul(y1, z1)), std::string("associativity fails in ") + to_string(tag));
        }
  }
  r.detail = {{"units", n}, {"associativity", exhaustive ? "exhaustive" : "sampled"}};
  return r;
}

CheckOutcome SmashLab::verify_phi() const {
  CheckOutcome r;
  r.name = "phi is an F-equivariant *-homomorphism";
  for (const auto& x : units_) {
    auto ux = unit(AlgTag::CalA, x);
    r.expect(phi(star(ux)) == star(phi(ux)), "phi(x*) != phi(x)*");
    for (int g : F_) r.expect(phi(act(g, ux)) == act(g, phi(ux)), "phi is not F-equivariant");
    for (const auto& y : units_) {
      auto uy = unit(AlgTag::CalA, y);
      r.expect(phi(mul(ux, uy)) == mul(phi(ux), phi(uy)), "phi is not multiplicative");
    }
  }
  return r;
}

CheckOutcome SmashLab::verify_psi() const {
  CheckOutcome r;
  r.name = "psi is an F-equivariant *-isomorphism";
  for (const auto& x : units_) {
    auto ux = unit(AlgTag::CalA, x), ax = unit(AlgTag::A, x);
    r.expect(psi_inv(psi(ux)) == ux, "psi_inv o psi != id");
    r.expect(psi(psi_inv(ax)) == ax, "psi o psi_inv != id");
    r.expect(psi(star(ux)) == star(psi(ux)), "psi(x*) != psi(x)*");
    for (int g : F_) r.expect(psi(act(g, ux)) == act(g, psi(ux)), "psi is not F-equivariant");
    for (const auto& y : units_) {
      auto uy = unit(AlgTag::CalA, y);
      r.expect(psi(mul(ux, uy)) == mul(psi(ux), psi(uy)), "psi is not multiplicative");
    }
  }
  r.detail = {{"dim", units_.size()}};
  return r;
}

CheckOutcome SmashLab::verify_irho() const {
  CheckOutcome r;
  r.name = "(id (x) psi) o phi = I + rho, I orthogonal to rho";
  std::size_t rho_terms = 0;
  for (const auto& x : units_) {
    auto ux = unit(AlgTag::CalA, x);
    auto lhs = id_psi_inv(phi(ux));
    auto rhs = I(ux);
    auto rx = rho(ux);
    rho_terms += rx.terms.size();
    rhs += rx;
    r.expect(lhs == rhs, "composite differs from I + rho");
    for (int g : F_) {
      r.expect(I(act(g, ux)) == act(g, I(ux)), "I is not F-equivariant");
      r.expect(rho(act(g, ux)) == act(g, rx), "rho is not F-equivariant");
    }
    for (const auto& y : units_) {
      auto uy = unit(AlgTag::CalA, y);
      r.expect(mul(I(ux), rho(uy)).is_zero() && mul(rho(uy), I(ux)).is_zero(), "I and rho are not orthogonal");
      r.expect(I(mul(ux, uy)) == mul(I(ux), I(uy)), "I is not multiplicative");
      r.expect(rho(mul(ux, uy)) == mul(rx, rho(uy)), "rho is not multiplicative");
    }
  }
  r.detail = {{"rho_terms", rho_terms}, {"rho_zero", rho_terms == 0}};
  return r;
}

CheckOutcome SmashLab::verify_nilpotent() const {
  CheckOutcome r;
  r.name = "rho nilpotent";
  const int L = chain_length();
  int min_power = 1;
  for (const auto& x : units_) {
    auto y = rho(unit(AlgTag::CalA, x));
    int p = 1;
    while (!y.is_zero() && p <= L + 1) {
      y = rho(y);
      ++p;
    }
    r.expect(y.is_zero(), "rho^" + std::to_string(L + 1) + " does not vanish");
    min_power = std::max(min_power, p);
  }
  r.expect(min_power <= L, "minimal vanishing power exceeds L");
  int local = 0;
  for (const auto& [k, v] : fam_.table) local = std::max(local, longest_chain(v));
  r.detail = {{"min_power", min_power}, {"L", L}, {"longest_chain_in_one_cell", local}};
  return r;
}

CheckOutcome SmashLab::verify_conjugation(std::optional<int> f) const {
  CheckOutcome r;
  r.name = "U I U = e_ff (x) id";
  int ff = 1;
  if (f) {
    ff = *f;
  } else if (!fam_.at(0, 0).empty()) {
    ff = fam_.at(0, 0).front();
  }
  if (ff <= 0 || ff >= a_.E.size()) throw Error(ErrorKind::InvalidParams, "f must be a non-zero idempotent");
  MatrixUnitElement W{AlgTag::KCalA, {}};
  for (int z : sigma_)
    for (int d : fam_.at(z, z)) {
      if (d == ff) {
        W.add({{{ff, ff}}, d, z, z}, 1);
      } else {
        W.add({{{ff, d}}, d, z, z}, 1);
        W.add({{{d, ff}}, d, z, z}, 1);
      }
    }
  r.expect(star(W) == W, "W is not self-adjoint");
  r.expect(mul(W, mul(W, W)) == W, "W is not a partial isometry");
  for (const auto& x : units_) {
    auto ux = unit(AlgTag::CalA, x);
    auto y = I(ux);
    auto Uy = mul(W, y);
    Uy += y;
    Uy -= mul(W, mul(W, y));
    auto UyU = mul(Uy, W);
    UyU += Uy;
    UyU -= mul(mul(Uy, W), W);
    MatrixUnitElement expect{AlgTag::KCalA, {}};
    UnitLabel e = x;
    e.k = {{ff, ff}};
    expect.add(e, 1);
    r.expect(UyU == expect, "U I(x) U != e_ff (x) x");
  }
  r.detail = {{"f", a_.E.name(ff)}, {"W_terms", W.terms.size()}};
  return r;
}

CheckOutcome SmashLab::verify_neumann() const {
  CheckOutcome r;
  r.name = "Neumann inverse of id + rho";
  const int L = chain_length();
  for (const auto& x : units_) {
    auto ux = unit(AlgTag::CalA, x);
    auto neumann = [&](const MatrixUnitElement& v) {
      MatrixUnitElement sum = v, term = v;
      for (int l = 1; l < L; ++l) {
        term = rho_flat(term).scaled(-1);
        sum += term;
      }
      return sum;
    };
    auto plus = [&](const MatrixUnitElement& v) {
      auto s = v;
      s += rho_flat(v);
      return s;
    };
    r.expect(neumann(plus(ux)) == ux, "N o (id + rho) != id");
    r.expect(plus(neumann(ux)) == ux, "(id + rho) o N != id");
  }
  r.detail = {{"terms", L}};
  return r;
}

json SmashLab::to_json(const MatrixUnitElement& x) const {
  json terms = json::array();
  for (const auto& [u, c] : x.terms) {
    json k = json::array();
    for (auto [p, q] : u.k) k.push_back({a_.E.name(p), a_.E.name(q)});
    terms.push_back({{"coeff", c.str()}, {"k", k}, {"d", a_.E.name(u.d)}, {"zeta", a_.G.name(u.zeta)}, {"eta", a_.G.name(u.eta)}});
  }
  return {{"algebra", to_string(x.tag)}, {"terms", terms}};
}

json SmashLab::report(const std::vector<std::string>& which) const {
  auto want = [&](const std::string& n) {
    return std::find(which.begin(), which.end(), n) != which.end() ||
           std::find(which.begin(), which.end(), "all") != which.end();
  };
  json checks = json::array();
  bool ok = true;
  auto push = [&](const CheckOutcome& c) {
    ok = ok && c.ok;
    checks.push_back(c.to_json());
  };
  push(check_properties(fam_, true));
  push(verify_algebra());
  if (want("phi")) push(verify_phi());
  if (want("psi")) push(verify_psi());
  if (want("irho")) push(verify_irho());
  int min_power = 0;
  if (want("nilpotent")) {
    auto c = verify_nilpotent();
    min_power = c.detail["min_power"].get<int>();
    push(c);
  }
  if (want("conjugation")) push(verify_conjugation());
  if (want("neumann")) push(verify_neumann());
  json sig = json::array(), sub = json::array();
  for (int g : sigma_) sig.push_back(a_.G.name(g));
  for (int g : F_) sub.push_back(a_.G.name(g));
  json j{{"action", a_.label},
         {"sigma", sig},
         {"subgroup", sub},
         {"family", fam_.to_json(a_)},
         {"dimensions", {{"A_i", units_.size()}, {"calA_i", units_.size()}}},
         {"L", chain_length()},
         {"checks", checks},
         {"verdict", ok ? "Holds" : "Fails"},
         {"provenance", "verified-exact"}};
  if (min_power) j["min_nilpotency_power"] = min_power;
  if (a_.windowed()) j["bound"] = {{"group_window", a_.G.size()}};
  return j;
}

SmashLab smashlab_example(const std::string& name, int size) {
  PartialAction a = example_action(name, size);
  std::vector<int> sigma{0}, F{0}, seeds;
  for (int e = 1; e < a.E.size(); ++e) seeds.push_back(e);
  if (name == "z2_swap" || name == "s3_atoms") {
    sigma.clear();
    for (int g = 0; g < a.G.size(); ++g) sigma.push_back(g);
    F = sigma;
  } else if (name == "z4_swap") {
    for (int g = 1; g < a.G.size(); ++g) sigma.push_back(g);
    F.push_back(a.G.index("2"));
  } else if (name == "n_window") {
    sigma.push_back(a.G.index("1"));
    seeds = {a.E.index("2+N")};
  }
  SmashLab lab(std::move(a), sigma, F);
  lab.build(seeds);
  return lab;
}

}  // namespace semik
