#include <doctest.h>

#include <set>
#include <sstream>

#include "semik/errors.hpp"
#include "semik/hull.hpp"
#include "semik/presentation.hpp"

using namespace semik;

namespace {

Hull built(const std::string& family, const nlohmann::json& params, int depth) {
  auto P = make_preset(family, params);
  Hull h(P.model, {depth, 6});
  h.generate();
  return h;
}

// "{2,4..}" -> membership of x in [0, limit)
std::vector<bool> parse_numerical(const std::string& s, int limit) {
  std::vector<bool> in(static_cast<std::size_t>(limit), false);
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() > 2 && item.substr(item.size() - 2) == "..") {
      for (int x = std::stoi(item); x < limit; ++x) in[static_cast<std::size_t>(x)] = true;
    } else {
      in[static_cast<std::size_t>(std::stoi(item))] = true;
    }
  }
  return in;
}

}  // namespace

TEST_SUITE("hull") {

TEST_CASE("inverse laws hold pointwise on the ball") {
  for (const auto& [family, params] : std::vector<std::pair<std::string, nlohmann::json>>{
           {"free", {{"n", 1}}}, {"abelian", {{"n", 2}}}, {"free", {{"n", 2}}}, {"bs", {{"k", 2}, {"l", 3}}}}) {
    CAPTURE(family);
    Hull h = built(family, params, 2);
    for (const auto& s : h.elements()) {
      if (s.zero) continue;
      HullElement t = h.compose(h.compose(s, h.inverse(s)), s);
      for (const auto& [x, w] : h.ball()) CHECK(h.apply(s, x) == h.apply(t, x));
    }
    CHECK(check_inverse_laws(h).failures == 0);
  }
}

TEST_CASE("sigma-trivial elements are partial identities") {
  Hull h = built("bs", {{"k", 2}, {"l", 3}}, 3);
  std::size_t seen = 0;
  for (const auto& s : h.elements()) {
    if (!h.is_idempotent(s)) continue;
    ++seen;
    for (const auto& [x, w] : h.ball()) {
      auto y = h.apply(s, x);
      if (y) CHECK(*y == x);
    }
  }
  CHECK(seen > 1);
  CHECK(check_idempotent_pure(h).failures == 0);
}

TEST_CASE("free monoid lcm is the longer word when one is a prefix") {
  auto P = make_preset("free", {{"n", 2}});
  const auto& m = *P.model;
  auto words = m.ball_words(4);
  for (const auto& p : words)
    for (const auto& q : words) {
      const bool p_pre = q.size() >= p.size() && std::equal(p.begin(), p.end(), q.begin());
      const bool q_pre = p.size() >= q.size() && std::equal(q.begin(), q.end(), p.begin());
      auto l = m.lcm(m.eval(p), m.eval(q));
      if (p_pre) {
        REQUIRE(l);
        CHECK(*l == m.eval(q));
      } else if (q_pre) {
        REQUIRE(l);
        CHECK(*l == m.eval(p));
      } else {
        CHECK_FALSE(l);
      }
    }
}

TEST_CASE("right LCM verdicts carry their bound") {
  Hull h = built("abelian", {{"n", 2}}, 2);
  auto r = right_lcm_check(&h, h.model(), 2, 5);
  CHECK(r.verdict == "RightLCM");
  CHECK(r.provenance == "verified-to-bound");
  CHECK_FALSE(r.bound.is_null());
}

TEST_CASE("Toeplitz checks") {
  auto N = make_preset("free", {{"n", 1}});
  auto c = toeplitz_check(*N.model, parse_group_word("a^-3", N.presentation.alphabet), 3, 6);
  CHECK(c.verdict == "Constructible");
  auto B = make_preset("bs", {{"k", -2}, {"l", 3}});
  auto f = toeplitz_check(*B.model, parse_group_word("a b a^-1", B.presentation.alphabet), 3, 6);
  CHECK(f.verdict == "FailsToDepth");
  CHECK(f.provenance == "verified-to-bound");
}

TEST_CASE("ideal equality is three-valued") {
  Hull h = built("free", {{"n", 1}}, 2);
  const auto& e = h.elements();
  for (const auto& s : e) {
    if (s.zero) continue;
    auto r = ideal_equal(h, s, s);
    CHECK(r.verdict != EqVerdict::Distinct);
  }
}

TEST_CASE("<2,3> is not independent: the witness is a union") {
  Hull h = built("numerical", {{"gens", {2, 3}}}, 3);
  auto r = independence_check(h);
  REQUIRE(r.verdict == "Fails");
  const int limit = 60;
  auto X = parse_numerical(r.witness["ideal"].get<std::string>(), limit);
  std::vector<bool> uni(static_cast<std::size_t>(limit), false);
  REQUIRE(r.witness["union_of"].size() >= 2);
  for (const auto& part : r.witness["union_of"]) {
    auto Y = parse_numerical(part["ideal"].get<std::string>(), limit);
    CHECK(Y != X);
    for (int x = 0; x < limit; ++x) {
      CHECK((!Y[static_cast<std::size_t>(x)] || X[static_cast<std::size_t>(x)]));
      uni[static_cast<std::size_t>(x)] = uni[static_cast<std::size_t>(x)] || Y[static_cast<std::size_t>(x)];
    }
  }
  CHECK(uni == X);
  // every listed number is in <2,3> = N \ {1}
  for (int x = 0; x < limit; ++x)
    if (X[static_cast<std::size_t>(x)]) CHECK(x != 1);
}

TEST_CASE("budget") {
  auto P = make_preset("free", {{"n", 2}});
  Hull h(P.model, {6, 4, 100});
  CHECK_THROWS_AS(h.generate(), Error);
}

}  // TEST_SUITE
