#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "semik/errors.hpp"
#include "semik/ktheory.hpp"
#include "semik/paction.hpp"

using namespace semik;

namespace {

// K-theory of group C*-algebras from the textbook formulas.
std::pair<int, int> known_ranks(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupDescriptor::Kind::Trivial: return {1, 0};
    case GroupDescriptor::Kind::FiniteCyclic: return {g.n, 0};
    case GroupDescriptor::Kind::FreeAbelian: return {1 << (g.n - 1), 1 << (g.n - 1)};
    case GroupDescriptor::Kind::Free: return {1, g.n};
    default: return {-1, -1};
  }
}

}  // namespace

TEST_SUITE("ktheory") {

TEST_CASE("Smith diagonal of 2x2 matrices agrees with gcd of minors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::vector<long long>> m{{d(rng), d(rng)}, {d(rng), d(rng)}};
    long long g = 0;
    for (const auto& r : m)
      for (long long x : r) g = std::gcd(g, x);
    const long long det = std::llabs(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    std::vector<long long> want;
    if (g != 0) want.push_back(g);
    if (det != 0) want.push_back(det / g);
    std::vector<long long> got = smith_diagonal(m);
    for (auto& x : got) x = std::llabs(x);
    CHECK(got == want);
  }
}

TEST_CASE("cokernels and canonical form") {
  CHECK(FgAbelianGroup::cokernel({{2, 0}, {0, 3}}, 2) == FgAbelianGroup::cyclic(6));
  CHECK(FgAbelianGroup::cokernel({{-3}}, 1) == FgAbelianGroup::cyclic(3));
  CHECK(FgAbelianGroup::cokernel({{-1}}, 1).is_zero());
  CHECK(FgAbelianGroup::cokernel({{0}}, 1) == FgAbelianGroup::Z());
  CHECK(FgAbelianGroup::cokernel({{2, 4}}, 1) == FgAbelianGroup::cyclic(2));
  CHECK(FgAbelianGroup(2, {4, 2}).str() == "Z^2 + Z/2 + Z/4");
  CHECK(FgAbelianGroup(0, {2, 3}) == FgAbelianGroup::cyclic(6));
  CHECK(FgAbelianGroup(1, {0, 1, -1}) == FgAbelianGroup::Z(2));
  CHECK(FgAbelianGroup().str() == "0");
  CHECK((FgAbelianGroup::Z(1) + FgAbelianGroup::cyclic(2)).str() == "Z + Z/2");
  CHECK(FgAbelianGroup::from_json(FgAbelianGroup(3, {5}).to_json()) == FgAbelianGroup(3, {5}));
}

TEST_CASE("rank expressions") {
  CHECK(eval_rank_expression("2^(n-1)", 4) == 8);
  CHECK(eval_rank_expression("n*(n+1) - 3", 3) == 9);
  CHECK(eval_rank_expression("7", 100) == 7);
  CHECK_THROWS_AS(eval_rank_expression("2^(n-1", 4), Error);
  CHECK_THROWS_AS(eval_rank_expression("m", 4), Error);
}

TEST_CASE("resolution is additive over summands") {
  const KTable table = KTable::builtin();
  std::vector<GroupDescriptor> gs{GroupDescriptor::trivial(), GroupDescriptor::finite_cyclic(2),
                                  GroupDescriptor::finite_cyclic(5), GroupDescriptor::free_abelian(2),
                                  GroupDescriptor::free_abelian(3), GroupDescriptor::free(2)};
  KTheoryExpression x;
  int r0 = 0, r1 = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    x.summands.push_back({"d" + std::to_string(i), gs[i]});
    auto [a, b] = known_ranks(gs[i]);
    r0 += a;
    r1 += b;
    auto one = table.lookup(gs[i]);
    REQUIRE(one);
    CHECK(one->K0 == FgAbelianGroup::Z(a));
    CHECK(one->K1 == FgAbelianGroup::Z(b));
  }
  auto y = resolve(x, table);
  REQUIRE(y.resolved);
  CHECK(y.resolved->K0 == FgAbelianGroup::Z(r0));
  CHECK(y.resolved->K1 == FgAbelianGroup::Z(r1));
  CHECK(y.unresolved.empty());
  CHECK(GroupDescriptor::finite_cyclic(1) == GroupDescriptor::trivial());
}

TEST_CASE("an opaque summand keeps the expression symbolic") {
  KTheoryExpression x;
  x.summands.push_back({"d", GroupDescriptor::trivial()});
  x.summands.push_back({"e", GroupDescriptor::opaque("H", {"s", "t"})});
  auto y = resolve(x, KTable::builtin());
  CHECK_FALSE(y.resolved);
  REQUIRE(y.unresolved.size() == 1);
  CHECK(y.unresolved[0]["representative"] == "e");
  CHECK(y.to_json()["resolved"].is_null());
}

TEST_CASE("table overrides merge by kind") {
  auto t = KTable::builtin();
  auto extra = KTable::from_json(nlohmann::json::parse(R"({"version": 1, "entries": [
    {"kind": "free", "K0": {"rank": 1, "torsion": []}, "K1": {"rank": "n+1", "torsion": []}, "unit": "1", "citation": "test"}]})"));
  t.merge(extra);
  std::string cite;
  auto k = t.lookup(GroupDescriptor::free(2), &cite);
  REQUIRE(k);
  CHECK(k->K1 == FgAbelianGroup::Z(3));
  CHECK(cite == "test");
  CHECK_FALSE(t.lookup(GroupDescriptor::opaque("H", {})));
}

TEST_CASE("the semigroup route needs an independence verdict") {
  auto a = example_action("chain2");
  FormulaOptions opt;
  opt.route = Route::Semigroup;
  try {
    formula(a, opt);
    FAIL("no refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndependenceUnknown);
    CHECK(e.payload()["offered_route"] == "left-inverse-hull");
  }
  CheckResult fails{"Fails", "verified-exact", nullptr, nullptr, nullptr};
  opt.independence = &fails;
  CHECK_THROWS_AS(formula(a, opt), Error);
  CheckResult holds{"Holds", "verified-exact", nullptr, nullptr, nullptr};
  opt.independence = &holds;
  auto x = resolve(formula(a, opt), KTable::builtin());
  REQUIRE(x.resolved);
  CHECK(x.resolved->K0 == FgAbelianGroup::Z(2));
}

TEST_CASE("orbit count of a finite action gives the K0 rank") {
  for (const char* name : {"trivial", "chain1", "chain2", "chain3", "diamond", "z2_swap"}) {
    auto a = example_action(name);
    // oracle: orbits of the union of all graphs g.e = f, by repeated relaxation
    std::vector<int> cls(static_cast<std::size_t>(a.E.size()));
    std::iota(cls.begin(), cls.end(), 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (int g = 0; g < a.G.size(); ++g)
        for (int e : a.domain(g)) {
          int f = *a.act(g, e);
          int m = std::min(cls[static_cast<std::size_t>(e)], cls[static_cast<std::size_t>(f)]);
          for (int x : {e, f})
            if (cls[static_cast<std::size_t>(x)] != m) {
              cls[static_cast<std::size_t>(x)] = m;
              changed = true;
            }
        }
    }
    std::set<int> orbits;
    for (int e = 1; e < a.E.size(); ++e) orbits.insert(cls[static_cast<std::size_t>(e)]);
    auto x = resolve(formula(a, FormulaOptions{}), KTable::builtin());
    REQUIRE(x.resolved);
    // every stabilizer in these examples is trivial
    CHECK(x.resolved->K0 == FgAbelianGroup::Z(static_cast<int>(orbits.size())));
    CHECK(x.resolved->K1.is_zero());
  }
}

TEST_CASE("presets carry a non-empty assumption ledger") {
  for (const auto& [family, params] : std::vector<std::pair<std::string, nlohmann::json>>{
           {"artin", {{"n", 2}, {"m", 3}}},
           {"bs", {{"k", 2}, {"l", 3}}},
           {"one_relator", {{"u", "ab"}, {"v", "ba"}, {"generators", 3}}},
           {"free", {{"n", 2}}}}) {
    auto x = preset_report(family, params);
    auto j = x.to_json();
    CAPTURE(family);
    CHECK_FALSE(j["assumptions"].empty());
    CHECK(j["provenance"] == "assumed");
    CHECK_FALSE(j["verified_inputs"].empty());
  }
  CHECK_THROWS_AS(preset_report("congruence", {}), Error);
}

}  // TEST_SUITE
