#include <doctest.h>

#include "semik/errors.hpp"
#include "semik/hull.hpp"
#include "semik/paction.hpp"
#include "semik/presentation.hpp"

using namespace semik;

TEST_SUITE("paction") {

TEST_CASE("bundled actions verify") {
  for (const auto& n : example_names()) {
    CAPTURE(n);
    auto a = example_action(n);
    auto v = a.verify();
    CHECK(v.ok());
    CHECK(v.checks > 0);
  }
}

TEST_CASE("the ** semigroup has one element per pair (g, e in E_g)") {
  for (const char* n : {"trivial", "z2_swap", "z4_swap", "chain2", "diamond"}) {
    auto a = example_action(n);
    std::size_t want = 1;  // zero
    for (int g = 0; g < a.G.size(); ++g) want += a.domain(g).size();
    auto S = starstar(a);
    CAPTURE(n);
    CHECK(static_cast<std::size_t>(S.size()) == want);
    CHECK(S.verify().ok());
    CHECK_FALSE(S.idempotent_pure_witness());
  }
}

TEST_CASE("round trips") {
  for (const char* n : {"trivial", "z2_swap", "n_window"}) {
    CAPTURE(n);
    CHECK(roundtrip_action(example_action(n)).isomorphic);
    CHECK(roundtrip_check(starstar(example_action(n))).isomorphic);
  }
}

TEST_CASE("semilattice meets") {
  auto c = Semilattice::chain(3);
  CHECK(c.verify().empty());
  CHECK(c.meet(1, 3) == 3);
  auto d = Semilattice::diamond();
  CHECK(d.meet(d.index("e1"), d.index("e2")) == d.index("e1e2"));
}

TEST_CASE("specs from JSON") {
  auto j = nlohmann::json::parse(R"({"group": {"kind": "cyclic", "n": 2},
    "semilattice": {"top": [0, 1, 2], "d": [1], "d'": [2]}, "action": {"1": {"d": "d'"}}})");
  auto a = action_from_json(j);
  CHECK(a.verify().ok());
  CHECK(*a.act(1, a.E.index("d'")) == a.E.index("d"));
  j["action"]["7"] = nlohmann::json::object();
  CHECK_THROWS_AS(action_from_json(j), Error);
  j["action"].erase("7");
  j["group"]["kind"] = "lie";
  CHECK_THROWS_AS(action_from_json(j), Error);
}

TEST_CASE("a broken action fails verification") {
  auto j = nlohmann::json::parse(R"({"group": {"kind": "cyclic", "n": 2},
    "semilattice": {"top": [0, 1, 2], "d": [1], "d'": [2]}, "action": {"1": {"top": "d"}}})");
  auto a = action_from_json(j);  // domain {top} is not downward closed
  CHECK_FALSE(a.verify().ok());
}

TEST_CASE("hull actions are verified to their window") {
  auto P = make_preset("bs", {{"k", 2}, {"l", 3}});
  Hull h(P.model, {2, 6});
  h.generate();
  auto a = action_from_hull(h);
  CHECK(a.windowed());
  auto v = a.verify();
  CHECK(v.ok());
  CHECK(v.undecided > 0);
}

}  // TEST_SUITE
