#include <doctest.h>

#include <set>

#include "semik/errors.hpp"
#include "semik/group.hpp"
#include "semik/presentation.hpp"

using namespace semik;

namespace {

std::vector<Word> all_words(int letters, int max_len) {
  std::vector<Word> out{{}};
  std::vector<Word> level{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (int x = 0; x < letters; ++x) {
        Word v = w;
        v.push_back(x);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

const std::vector<std::pair<std::string, nlohmann::json>> kPresets{
    {"free", {{"n", 2}}},
    {"abelian", {{"n", 2}}},
    {"bs", {{"k", 2}, {"l", 3}}},
    {"bs", {{"k", -2}, {"l", -3}}},
    {"artin", {{"n", 2}, {"m", 3}}},
    {"one_relator", {{"u", "aa"}, {"v", "bc"}, {"generators", 3}}},
};

}  // namespace

TEST_SUITE("presentation") {

TEST_CASE("normal forms are idempotent and respect the relations") {
  for (const auto& [family, params] : kPresets) {
    CAPTURE(family);
    CAPTURE(params.dump());
    auto P = make_preset(family, params);
    const int n = P.presentation.alphabet.size();
    for (const auto& w : all_words(n, n == 2 ? 8 : 6)) {
      Word nf = P.normal_form(w);
      CHECK(P.normal_form(nf) == nf);
    }
    if (P.monoid_rs && P.monoid_rs->status() == RsStatus::Confluent)
      for (const auto& [u, v] : P.presentation.relations) CHECK(P.normal_form(u) == P.normal_form(v));
  }
}

TEST_CASE("no generator rewrites to the empty word") {
  for (const auto& [family, params] : kPresets) {
    auto P = make_preset(family, params);
    for (int x = 0; x < P.presentation.alphabet.size(); ++x) CHECK_FALSE(P.normal_form({x}).empty());
  }
}

TEST_CASE("membership in BS(2,3)^+ against enumeration of positive words") {
  auto P = make_preset("bs", {{"k", 2}, {"l", 3}});
  const auto& A = P.presentation.alphabet;
  BSGroup G(2, 3);
  std::set<Elem> positive;
  for (const auto& w : all_words(2, 10)) positive.insert(G.eval(w));
  for (const char* g : {"a b a^-1", "a b^2 a^-1", "b^-1 a", "a b^-1", "b^3 a b^-2", "a^-1 b^3 a"}) {
    CAPTURE(g);
    auto r = P.group_membership(parse_group_word(g, A), 6);
    const bool found = positive.count(G.eval(parse_group_word(g, A))) > 0;
    if (found) {
      CHECK(r.verdict == Membership::InP);
      CHECK(G.eval(r.word) == G.eval(parse_group_word(g, A)));
    } else {
      CHECK(r.verdict != Membership::InP);
    }
  }
}

TEST_CASE("exponent sums rule out a b^-1 in Z^2") {
  auto P = make_preset("abelian", {{"n", 2}});
  CHECK(P.group_membership(parse_group_word("a b^-1", P.presentation.alphabet), 6).verdict == Membership::NotInP);
}

TEST_CASE("presentation files") {
  auto P = parse_presentation("# comment\nalphabet a b\nrelation a b = b a\norder shortlex b a\n");
  CHECK(P.presentation.relations.size() == 1);
  CHECK(P.model);
  CHECK(P.params["order"] == "shortlex(b<a)");
  CHECK_THROWS_AS(parse_presentation("relation a = b\n"), Error);
  CHECK_THROWS_AS(parse_presentation("alphabet a b\nfrobnicate\n"), Error);
  CHECK_THROWS_AS(parse_presentation("alphabet a b\norder shortlex a\n"), Error);
  auto N = parse_presentation("numerical 3 5\n");
  CHECK(N.family == "numerical");
}

TEST_CASE("invalid presets") {
  CHECK_THROWS_AS(make_preset("one_relator", {{"u", "ab"}, {"v", "ac"}}), Error);
  CHECK_THROWS_AS(make_preset("artin", {{"m", 1}}), Error);
  CHECK_THROWS_AS(make_preset("nonsense", {}), Error);
  try {
    make_preset("congruence", {});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParams);
  }
}

}  // TEST_SUITE
