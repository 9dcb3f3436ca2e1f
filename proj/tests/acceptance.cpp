// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "report_walker.hpp"
#include "semik/errors.hpp"
#include "semik/hull.hpp"
#include "semik/ktheory.hpp"
#include "semik/orbits.hpp"
#include "semik/paction.hpp"
#include "semik/presentation.hpp"
#include "semik/report.hpp"
#include "semik/smashlab.hpp"
#include "semik/tiling.hpp"

using namespace semik;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool c, const std::string& what) {
    if (!c) failures.push_back(what);
  }
};

int failed = 0;

void run(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = since(t0);
  std::ostringstream line;
  line.precision(3);
  line << (c.failures.empty() ? "PASS" : "FAIL") << " " << id << " " << title << " (" << secs << " s";
  for (const auto& n : c.notes) line << "; " << n;
  line << ")";
  std::cout << line.str() << "\n";
  for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::cout << "     " << c.failures[i] << "\n";
  if (!c.failures.empty()) ++failed;
}

struct HullCase {
  std::string label, family;
  json params;
};

const std::vector<HullCase>& hull_cases() {
  static const std::vector<HullCase> cases{{"N", "free", {{"n", 1}}},
                                           {"N^2", "abelian", {{"n", 2}}},
                                           {"{a,b}*", "free", {{"n", 2}}},
                                           {"BS(2,3)^+", "bs", {{"k", 2}, {"l", 3}}}};
  return cases;
}

// s as a partial map on the ball, by tracing
std::vector<std::optional<Elem>> trace(const Hull& h, const HullElement& s) {
  std::vector<std::optional<Elem>> out;
  for (const auto& [x, w] : h.ball()) out.push_back(s.zero ? std::nullopt : h.apply(s, x));
  return out;
}

void criterion1(Criterion& c) {
  for (const auto& hc : hull_cases()) {
    for (int depth = 1; depth <= 3; ++depth) {
      auto t0 = Clock::now();
      auto P = make_preset(hc.family, hc.params);
      Hull h(P.model, {depth, 6});
      h.generate();
      std::size_t bad = 0;
      for (const auto& s : h.generated()) {
        const auto si = h.inverse(s);
        const auto sss = h.compose(h.compose(s, si), s);
        const auto iii = h.compose(h.compose(si, s), si);
        if (!h.same(s, sss) || !h.same(si, iii)) ++bad;
        if (trace(h, s) != trace(h, sss) || trace(h, si) != trace(h, iii)) ++bad;
      }
      const double secs = since(t0);
      c.expect(bad == 0, hc.label + " depth " + std::to_string(depth) + ": " + std::to_string(bad) + " law failures");
      c.expect(secs < 10.0, hc.label + " depth " + std::to_string(depth) + " took " + std::to_string(secs) + " s");
      if (depth == 3)
        c.notes.push_back(hc.label + " " + std::to_string(h.generated().size()) + " zigzags " +
                          std::to_string(static_cast<int>(secs * 1000)) + " ms");
    }
  }
}

void criterion2(Criterion& c) {
  std::size_t pairs = 0;
  for (const auto& hc : hull_cases()) {
    auto P = make_preset(hc.family, hc.params);
    Hull h(P.model, {3, 6});
    h.generate();
    // bucket by (sigma, s^-1 s on the ball); every bucket must be one map
    std::map<std::pair<std::string, std::vector<bool>>, std::vector<std::optional<Elem>>> seen;
    std::size_t bad = 0;
    for (const auto& s : h.generated()) {
      if (s.zero) continue;
      const auto d = h.compose(h.inverse(s), s);
      auto key = std::make_pair(h.model().str(s.sigma), d.on_ball);
      auto tr = trace(h, s);
      auto [it, fresh] = seen.emplace(key, tr);
      if (!fresh) {
        ++pairs;
        if (it->second != tr) ++bad;
      }
    }
    c.expect(bad == 0, hc.label + ": " + std::to_string(bad) + " counterexamples");
    c.expect(check_idempotent_pure(h).failures == 0, hc.label + ": library check disagrees");
  }
  c.notes.push_back(std::to_string(pairs) + " coinciding pairs compared");
}

void criterion3(Criterion& c) {
  for (const char* n : {"trivial", "z2_swap", "n_window"}) {
    auto a = example_action(n);
    auto S = starstar(a);
    std::size_t want = 1;
    for (int g = 0; g < a.G.size(); ++g) want += a.domain(g).size();
    c.expect(static_cast<std::size_t>(S.size()) == want, std::string(n) + ": |S~| is not 1 + sum |E_g|");
    c.expect(S.verify().ok(), std::string(n) + ": ** is not an inverse semigroup");
    c.expect(roundtrip_action(a).isomorphic, std::string(n) + ": star(starstar(a)) is not a");
    c.expect(roundtrip_check(S).isomorphic, std::string(n) + ": starstar(star(S)) is not S");
  }
}

void criterion4(Criterion& c) {
  for (const auto& n : example_names()) {
    auto lab = smashlab_example(n);
    const auto& fam = lab.family();
    c.expect(fam.stage == Stage::StageTwo, n + ": family is not stage two");
    c.expect(fam.total() <= SmashConfig{}.cap, n + ": family exceeds the cap");
    auto props = lab.check_properties(fam, true);
    c.expect(props.ok, n + ": properties (a)-(c) fail");
    auto again = lab.close_stage_two(lab.close_stage_one(fam));
    c.expect(again.table == fam.table, n + ": closure is not a fixpoint");
    auto red = lab.check_redundant_factor(lab.close_stage_one(fam));
    c.expect(red.ok && red.checks > 0, n + ": RedundantFactor");
    c.expect(lab.check_eff_prime().ok, n + ": eff'");
  }
}

void criterion5(Criterion& c) {
  for (const auto& n : example_names()) {
    auto t0 = Clock::now();
    auto lab = smashlab_example(n);
    for (const auto& r : {lab.verify_algebra(), lab.verify_phi(), lab.verify_psi(), lab.verify_irho(),
                          lab.verify_nilpotent(), lab.verify_conjugation(), lab.verify_neumann()}) {
      c.expect(r.ok && r.checks > 0, n + ": " + r.name);
      if (r.name == "nilpotent" && n.rfind("chain", 0) == 0) {
        const int len = std::stoi(n.substr(5));
        c.expect(r.detail.value("min_power", -1) == len, n + ": minimal nilpotent power is not the chain length");
        c.expect(lab.chain_length() == len, n + ": chain length");
      }
    }
    const double secs = since(t0);
    if (lab.units().size() <= 200) c.expect(secs < 30.0, n + " took " + std::to_string(secs) + " s");
    c.notes.push_back(n + " " + std::to_string(lab.units().size()) + "u");
  }
}

PartialAction cyclic8() {
  json j{{"group", {{"kind", "cyclic"}, {"n", 8}}}, {"label", "c8"}};
  for (int i = 0; i < 4; ++i) j["semilattice"]["p" + std::to_string(i)] = {i};
  for (int g = 1; g < 8; ++g)
    for (int i = 0; i < 4; ++i) j["action"][std::to_string(g)]["p" + std::to_string(i)] = "p" + std::to_string((i + g) % 4);
  return action_from_json(j);
}

void criterion6(Criterion& c) {
  std::vector<PartialAction> actions{cyclic8()};
  for (const auto& n : example_names()) {
    auto a = example_action(n);
    if (!a.windowed() && a.G.size() <= 8) actions.push_back(a);
  }
  std::size_t checks = 0;
  for (const auto& a : actions) {
    for (int d = 1; d < a.E.size(); ++d) {
      const std::string tag = a.label + " d=" + a.E.name(d);
      XiBijection xi(a, stabilizer(a, d));
      std::set<XiImage> images;
      for (const auto& p : xi.points()) {
        auto q = xi.xi(p);
        images.insert(q);
        auto back = xi.xi_inv(q);
        c.expect(back.e == p.e && back.zeta == p.zeta, tag + ": xi_inv o xi is not the identity");
      }
      c.expect(images.size() == xi.points().size(), tag + ": xi is not injective");
      for (const auto& v : {xi.verify_bijection(), xi.verify_cocycle(), xi.verify_conjugation()}) {
        checks += v.checks;
        c.expect(v.ok, tag + ": " + (v.failures.empty() ? std::string("check") : v.failures.front()));
      }
    }
  }
  c.notes.push_back(std::to_string(actions.size()) + " actions, " + std::to_string(checks) + " pointwise checks");
}

std::string k0(const KTheoryExpression& x) { return x.resolved ? x.resolved->K0.str() : "?"; }
std::string k1(const KTheoryExpression& x) { return x.resolved ? x.resolved->K1.str() : "?"; }

bool assumes_bc(const KTheoryExpression& x) {
  for (const auto& a : x.assumptions)
    if (a.provenance == "assumed" && a.statement.find("Baum-Connes") != std::string::npos) return true;
  return false;
}

// translation classes of non-empty subsets, by brute force
std::size_t subset_classes(const std::vector<long long>& D) {
  std::set<std::vector<long long>> classes;
  for (unsigned mask = 1; mask < (1u << D.size()); ++mask) {
    std::vector<long long> s;
    for (std::size_t i = 0; i < D.size(); ++i)
      if (mask & (1u << i)) s.push_back(D[i]);
    const long long m = s.front();
    for (auto& x : s) x -= m;
    classes.insert(s);
  }
  return classes.size();
}

void criterion7(Criterion& c) {
  {
    auto x = preset_report("artin", {{"n", 3}, {"m", 3}});
    c.expect(k0(x) == "Z" && k1(x) == "0", "artin: K = (" + k0(x) + ", " + k1(x) + ")");
    c.expect(x.resolved && x.resolved->unit_class == "Z[1]_0", "artin: unit class");
    c.expect(assumes_bc(x), "artin: Baum-Connes is not in the ledger");
  }
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 3}, {-2, 3}, {2, -3}, {-2, -3}}) {
    const std::string tag = "bs(" + std::to_string(k) + "," + std::to_string(l) + ")";
    auto x = preset_report("bs", {{"k", k}, {"l", l}});
    c.expect(k0(x) == "Z" && k1(x) == "0", tag + ": K = (" + k0(x) + ", " + k1(x) + ")");
    c.expect(x.classification.contains("KK") &&
                 x.classification["KK"].get<std::string>().find("KK-equivalence") != std::string::npos,
             tag + ": no KK note");
    c.expect(assumes_bc(x), tag + ": Baum-Connes is not in the ledger");
  }
  {
    auto B = make_preset("bs", {{"k", -2}, {"l", 3}});
    auto r = toeplitz_check(*B.model, parse_group_word("a b a^-1", B.presentation.alphabet), 3, 6);
    c.expect(r.verdict == "FailsToDepth", "bs(-2,3) toeplitz: " + r.verdict);
    c.expect(!r.bound.is_null(), "bs(-2,3) toeplitz: no bound");
    const auto& ev = r.evidence;
    const auto cand = ev.value("candidates", 0);
    c.expect(cand > 0 && ev.contains("refutations") && ev["refutations"].size() == static_cast<std::size_t>(cand),
             "bs(-2,3) toeplitz: candidates not all refuted");
    bool has_bab = false;
    for (const auto& ref : ev["refutations"]) {
      const std::string s = ref["candidate"];
      if (s.find('a') != std::string::npos && s.front() == 'b') has_bab = true;
    }
    c.expect(has_bab, "bs(-2,3) toeplitz: no b^i a b^j candidates");
  }
  const std::vector<std::tuple<std::string, std::string, std::string, std::string>> rel{
      {"3", "0", "O_2", "E^{-1}_2"}, {"5", "Z/3", "O_4", "E^{-1}_4"}, {"inf", "Z", "O_inf", "O_inf"}};
  for (const auto& [gens, want, bq, full] : rel) {
    json params{{"u", "ab"}, {"v", "ba"}, {"generators", gens}};
    auto x = preset_report("one_relator", params);
    const auto& b = x.classification["boundary_quotient"];
    const std::string got = b["K0"]["group"];
    c.expect(got == want, "one_relator |S|=" + gens + ": boundary K0 = " + got);
    c.expect(b["unit_class"] == "1", "one_relator |S|=" + gens + ": unit class");
    c.expect(x.classification["if_nuclear"]["boundary_quotient"] == bq, "one_relator |S|=" + gens + ": classification");
    c.expect(x.classification["if_nuclear"]["C*_lambda(P)"] == full, "one_relator |S|=" + gens + ": classification");
  }
  {
    auto D = PointSet::parse("0,1,2");
    auto x = gamma_ktheory(D);
    const std::size_t classes = subset_classes({0, 1, 2});
    c.expect(classes == 4, "tiling oracle");
    c.expect(x.resolved && x.resolved->K0 == FgAbelianGroup::Z(static_cast<int>(classes)) && x.resolved->K1.is_zero(),
             "tiling {0,1,2}: K = (" + k0(x) + ", " + k1(x) + ")");
  }
}

void criterion8(Criterion& c) {
  const std::vector<std::string> configs{
      "subcommand = hull\npreset = free\nn = 1\ndepth = 3\ncheck = laws,independence,rlcm\n",
      "subcommand = hull\npreset = abelian\nn = 2\ndepth = 3\ncheck = laws,independence,rlcm\n",
      "subcommand = hull\npreset = free\nn = 2\ndepth = 3\ncheck = laws,independence,rlcm\n",
      "subcommand = hull\npreset = bs\nk = 2\nl = 3\ndepth = 3\ncheck = laws,independence,rlcm\n",
      "subcommand = hull\npreset = numerical\ngens = 2,3\ndepth = 3\ncheck = laws,independence,rlcm\n",
      "subcommand = hull\npreset = bs\nk = -2\nl = 3\ndepth = 3\ncheck = toeplitz\nelement = a b a^-1\n",
      "subcommand = hull\npreset = free\nn = 1\ncheck = toeplitz\nelement = a^-3\n",
      "subcommand = paction\nexample = z2_swap\nroundtrip = true\n",
      "subcommand = paction\nexample = n_window\n",
      "subcommand = paction\npreset = bs\nk = 2\nl = 3\ndepth = 2\n",
      "subcommand = orbits\nexample = s3_atoms\n",
      "subcommand = orbits\nexample = n_window\n",
      "subcommand = orbits\npreset = numerical\ngens = 2,3\ndepth = 2\n",
      "subcommand = smashlab\nverify = all\n",
      "subcommand = smashlab\naction = diamond\nverify = all\n",
      "subcommand = ktheory\npreset = artin\nn = 3\nm = 3\n",
      "subcommand = ktheory\npreset = bs\nk = -2\nl = 3\n",
      "subcommand = ktheory\npreset = bs\nk = 2\nl = -3\n",
      "subcommand = ktheory\npreset = one_relator\nu = ab\nv = ba\ngenerators = 5\n",
      "subcommand = ktheory\npreset = numerical\ngens = 2,3\n",
      "subcommand = ktheory\npreset = free\nn = 2\n",
      "subcommand = ktheory\npreset = abelian\nn = 2\n",
      "subcommand = tiling\npoints = 0,1,2\n",
      "subcommand = tiling\npoints = (0,0),(1,0),(0,1)\n",
  };
  std::size_t bounded = 0;
  std::function<void(const json&)> count = [&](const json& j) {
    if (j.is_object()) {
      if (j.value("provenance", "") == "verified-to-bound") ++bounded;
      for (const auto& v : j) count(v);
    } else if (j.is_array()) {
      for (const auto& v : j) count(v);
    }
  };
  for (const auto& text : configs) {
    auto r = semik::run(RunConfig::parse(text));
    for (const auto& v : semik::testing::report_violations(r)) c.failures.push_back(r["subcommand"].get<std::string>() + v);
    count(r);
  }
  // checks that are bounded by construction must say so
  auto r = semik::run(RunConfig::parse("subcommand = hull\npreset = free\nn = 2\ndepth = 2\ncheck = rlcm,independence\n"));
  for (const auto& chk : r["result"]["checks"]) {
    const std::string v = chk.value("verdict", "");
    if (v == "RightLCM" || v == "Holds") c.expect(chk.value("provenance", "") == "verified-to-bound", v + " claimed exact");
  }
  c.expect(bounded > 0, "no bounded verdicts seen");
  c.notes.push_back(std::to_string(configs.size()) + " reports, " + std::to_string(bounded) + " bounded nodes");
}

// constructible ideals of <2,3> by closing {S} under p+X and (X-p) n S
using Bits = std::vector<bool>;

std::set<Bits> constructible_23(int depth, int L) {
  auto member = [](long long x) { return x >= 0 && x != 1; };
  Bits S(static_cast<std::size_t>(L));
  for (int x = 0; x < L; ++x) S[static_cast<std::size_t>(x)] = member(x);
  std::set<Bits> all{S}, frontier{S};
  for (int d = 0; d < depth; ++d) {
    std::set<Bits> next;
    for (const auto& X : frontier)
      for (int p : {2, 3}) {
        Bits up(static_cast<std::size_t>(L), false), down(static_cast<std::size_t>(L), false);
        for (int x = 0; x < L; ++x) {
          if (x - p >= 0 && X[static_cast<std::size_t>(x - p)]) up[static_cast<std::size_t>(x)] = true;
          const bool img = x + p >= L || X[static_cast<std::size_t>(x + p)];  // ideals are cofinite
          if (member(x) && img) down[static_cast<std::size_t>(x)] = true;
        }
        for (auto& Y : {up, down})
          if (all.insert(Y).second) next.insert(Y);
      }
    frontier = std::move(next);
  }
  return all;
}

Bits parse_numerical(const std::string& s, int L) {
  Bits in(static_cast<std::size_t>(L), false);
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.size() > 2 && item.substr(item.size() - 2) == "..")
      for (int x = std::stoi(item); x < L; ++x) in[static_cast<std::size_t>(x)] = true;
    else
      in[static_cast<std::size_t>(std::stoi(item))] = true;
  }
  return in;
}

bool subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

void criterion9(Criterion& c) {
  const int L = 80;
  auto P = make_preset("numerical", {{"gens", {2, 3}}});
  Hull h(P.model, {4, 6});
  h.generate();
  auto r = independence_check(h);
  c.expect(r.verdict == "Fails", "independence verdict is " + r.verdict);
  if (r.verdict != "Fails") return;
  const auto family = constructible_23(4, L);
  const Bits X = parse_numerical(r.witness["ideal"], L);
  c.expect(family.count(X), "witness ideal is not constructible to depth 4");
  Bits uni(static_cast<std::size_t>(L), false);
  for (const auto& part : r.witness["union_of"]) {
    const Bits Y = parse_numerical(part["ideal"], L);
    c.expect(family.count(Y), "union part " + part["ideal"].get<std::string>() + " is not constructible");
    c.expect(Y != X && subset(Y, X), "union part " + part["ideal"].get<std::string>() + " is not strictly smaller");
    for (std::size_t i = 0; i < Y.size(); ++i) uni[i] = uni[i] || Y[i];
  }
  c.expect(r.witness["union_of"].size() >= 2 && uni == X, "the parts do not cover the witness");
  // the oracle finds a failure on its own
  bool oracle_fails = false;
  for (const auto& A : family) {
    Bits u(static_cast<std::size_t>(L), false);
    bool any = false;
    for (const auto& B : family)
      if (B != A && subset(B, A) && std::find(B.begin(), B.end(), true) != B.end()) {
        any = true;
        for (std::size_t i = 0; i < B.size(); ++i) u[i] = u[i] || B[i];
      }
    if (any && u == A) oracle_fails = true;
  }
  c.expect(oracle_fails, "brute force finds no union");
  c.notes.push_back(std::to_string(family.size()) + " oracle ideals, witness " + r.witness["ideal"].get<std::string>());

  auto act = action_from_hull(h);
  try {
    formula(act, {Route::Semigroup, BcVariant::Coefficients, &r});
    c.failures.push_back("semigroup route accepted without independence");
  } catch (const Error& e) {
    c.expect(e.kind() == ErrorKind::IndependenceUnknown, std::string("wrong error kind ") + to_string(e.kind()));
    c.expect(e.payload().value("offered_route", "") == "left-inverse-hull", "no left-inverse-hull offer");
  }
  auto x = semigroup_ktheory(h, "<2,3>");
  c.expect(x.route == Route::LeftInverseHull, "emitted route is not the left inverse hull");
  c.expect(x.refused.value("offered_route", "") == "left-inverse-hull", "refusal not recorded");
}

}  // namespace

int main() {
  std::cout.precision(3);
  run(1, "inverse-semigroup laws on N, N^2, {a,b}*, BS(2,3)^+ hulls, depth <= 3", criterion1);
  run(2, "idempotent-pure uniqueness", criterion2);
  run(3, "star/starstar round trips", criterion3);
  run(4, "stage-two closure properties and RedundantFactor", criterion4);
  run(5, "smash-product identities in exact arithmetic", criterion5);
  run(6, "Xi_d bijection and cocycle, |G| <= 8", criterion6);
  run(7, "preset K-theory values and ledgers", criterion7);
  run(8, "bounded verdicts carry their bounds", criterion8);
  run(9, "negative control: <2,3> independence and route refusal", criterion9);
  return failed == 0 ? 0 : 1;
}
