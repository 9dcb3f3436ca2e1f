#include <doctest.h>

#include <set>

#include "semik/errors.hpp"
#include "semik/tiling.hpp"

using namespace semik;

namespace {

// Non-empty subsets of D up to translation, by brute force over bitmasks.
std::size_t brute_classes(const std::vector<Point>& D) {
  std::set<std::vector<Point>> seen;
  const std::size_t n = D.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Point> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(D[i]);
    std::sort(s.begin(), s.end());
    const Point base = s.front();
    for (auto& p : s)
      for (std::size_t k = 0; k < p.size(); ++k) p[k] -= base[k];
    seen.insert(s);
  }
  return seen.size();
}

}  // namespace

TEST_SUITE("tiling") {

TEST_CASE("parsing point sets") {
  CHECK(PointSet::parse("0,1,2").size() == 3);
  CHECK(PointSet::parse("2, 0,1").points.front() == Point{0});
  auto v = PointSet::parse("(0,0),(1,0),(0,1)");
  CHECK(v.n == 2);
  CHECK(v.size() == 3);
  CHECK(PointSet::parse("0,0;1,0").contains({1, 0}));
  CHECK_THROWS_AS(PointSet::parse("(0,0),(1)"), Error);
  CHECK_THROWS_AS(PointSet::parse(""), Error);
}

TEST_CASE("patch classes agree with brute-force enumeration") {
  for (const char* text : {"0", "0,1", "0,1,2", "0,2,5", "0,1,2,3,4,5", "0,1,3,7,8", "(0,0),(1,0),(0,1),(1,1)",
                           "(0,0),(2,1),(1,3)"}) {
    auto D = PointSet::parse(text);
    CAPTURE(text);
    CHECK(patch_classes(D).size() == brute_classes(D.points));
  }
}

TEST_CASE("multiplication of patch triples") {
  auto D = PointSet::parse("0,1,2");
  auto s = PatchTriple::make({0}, {{0}, {1}}, {1});
  auto t = PatchTriple::make({1}, {{1}, {2}}, {2});
  auto st = triple_mul(s, t, D);
  CHECK(st.str() == "[0,{0,1,2},2]");
  auto u = PatchTriple::make({0}, {{0}, {2}}, {2});
  CHECK(triple_mul(u, u, D).zero);
  // inverse semigroup law on a sample
  for (const auto& x : {s, t, u, st}) {
    CHECK(triple_mul(triple_mul(x, x.inverse(), D), x, D) == x);
    CHECK(triple_mul(x.inverse(), x, D).idempotent());
  }
}

TEST_CASE("K0 of the patch algebra counts translation classes") {
  for (const char* text : {"0,1,2", "0,1,3", "(0,0),(1,0)"}) {
    auto D = PointSet::parse(text);
    auto x = gamma_ktheory(D);
    REQUIRE(x.resolved);
    CHECK(x.resolved->K0 == FgAbelianGroup::Z(static_cast<int>(brute_classes(D.points))));
    CHECK(x.resolved->K1.is_zero());
  }
}

TEST_CASE("adjacency restricts to connected patches") {
  auto D = PointSet::parse("0,1,2");
  TilingConfig cfg;
  cfg.adjacency = Adjacency::parse("1");
  // {0}, {0,1}, {0,1,2}; {0,2} is not connected
  CHECK(patch_classes(D, cfg).size() == 3);
}

TEST_CASE("size limits") {
  TilingConfig cfg;
  cfg.max_points = 4;
  CHECK_THROWS_AS(patch_classes(PointSet::parse("0,1,2,3,4"), cfg), Error);
  CHECK_THROWS_AS(gamma_semigroup(PointSet::parse("0,1,2,3,4,5,6")), Error);
  auto r = tiling_report(PointSet::parse("0,1,2,3,4,5,6,7"));
  CHECK(r["checks"]["inverse_semigroup_laws"]["verdict"] == "Skipped");
}

TEST_CASE("small reports run every check") {
  auto r = tiling_report(PointSet::parse("0,1,2"));
  CHECK(r["classes"] == 4);
  for (const auto& [k, v] : r["checks"].items()) {
    if (!v.is_object()) continue;
    CAPTURE(k);
    CHECK(v["verdict"] == "Holds");
  }
}

}  // TEST_SUITE
