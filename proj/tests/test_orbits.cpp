#include <doctest.h>

#include <set>

#include "semik/orbits.hpp"
#include "semik/paction.hpp"

using namespace semik;

namespace {

// Z/8 rotating four atoms through Z/8 -> Z/4; every stabilizer is {0, 4}.
PartialAction cyclic8() {
  nlohmann::json j{{"group", {{"kind", "cyclic"}, {"n", 8}}}, {"label", "c8"}};
  for (int i = 0; i < 4; ++i) j["semilattice"]["p" + std::to_string(i)] = {i};
  for (int g = 1; g < 8; ++g)
    for (int i = 0; i < 4; ++i)
      j["action"][std::to_string(g)]["p" + std::to_string(i)] = "p" + std::to_string((i + g) % 4);
  return action_from_json(j);
}

// naive orbit closure
std::set<std::set<int>> orbit_oracle(const PartialAction& a) {
  std::set<std::set<int>> out;
  for (int e = 1; e < a.E.size(); ++e) {
    std::set<int> orb{e};
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x : std::set<int>(orb))
        for (int g = 0; g < a.G.size(); ++g)
          if (auto y = a.act(g, x); y && *y > 0 && orb.insert(*y).second) grew = true;
    }
    out.insert(orb);
  }
  return out;
}

void check_xi(const PartialAction& a) {
  for (int d = 1; d < a.E.size(); ++d) {
    CAPTURE(d);
    auto st = stabilizer(a, d);
    REQUIRE(st.subgroup);
    XiBijection xi(a, st);
    std::set<XiImage> seen;
    for (const auto& p : xi.points()) {
      auto q = xi.xi(p);
      CHECK(seen.insert(q).second);
      auto back = xi.xi_inv(q);
      CHECK(back.e == p.e);
      CHECK(back.zeta == p.zeta);
    }
    const std::size_t orbit = static_cast<std::size_t>(st.G_of_d.size()) / st.G_d.size();
    CHECK(xi.points().size() == orbit * static_cast<std::size_t>(a.G.size()));
    CHECK(xi.verify_bijection().ok);
    CHECK(xi.verify_cocycle().ok);
    CHECK(xi.verify_conjugation().ok);
  }
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("orbit classes match a naive closure") {
  for (const auto& n : example_names()) {
    auto a = example_action(n);
    if (a.windowed()) continue;
    CAPTURE(n);
    auto part = compute_orbits(a);
    std::set<std::set<int>> got;
    for (const auto& c : part.classes) got.insert(std::set<int>(c.begin(), c.end()));
    CHECK(got == orbit_oracle(a));
  }
  auto c8 = cyclic8();
  CHECK(compute_orbits(c8).classes.size() == 1);
}

TEST_CASE("stabilizers") {
  auto a = cyclic8();
  auto st = stabilizer(a, a.E.index("p1"));
  CHECK(st.G_d.size() == 2);
  CHECK(st.cosets() == 4);
  auto s3 = example_action("s3_atoms");
  CHECK(stabilizer(s3, 1).G_d.size() == 2);
}

TEST_CASE("Xi is a bijection intertwining the actions") {
  check_xi(cyclic8());
  for (const char* n : {"trivial", "z2_swap", "z4_swap", "s3_atoms"}) {
    CAPTURE(n);
    check_xi(example_action(n));
  }
}

TEST_CASE("local groups of **") {
  auto a = example_action("s3_atoms");
  auto S = starstar(a);
  for (int e : S.idempotents()) {
    if (e == 0) continue;
    auto lg = local_group(S, e);
    CHECK(lg.is_group);
    CHECK(lg.elements.size() == 2);
  }
}

}  // TEST_SUITE
