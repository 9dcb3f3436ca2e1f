#include <doctest.h>

#include <functional>

#include "semik/errors.hpp"
#include "semik/smashlab.hpp"

using namespace semik;

namespace {

// sum over strict chains x = c0 < ... < ck = d of (-1)^k
int hall_chains(const Semilattice& E, const std::vector<int>& P, int x, int d) {
  int total = 0;
  std::function<void(int, int)> walk = [&](int y, int len) {
    if (y == d) {
      total += (len % 2 == 0) ? 1 : -1;
      return;
    }
    for (int z : P)
      if (z != y && E.leq(y, z) && E.leq(z, d)) walk(z, len + 1);
  };
  walk(x, 0);
  return total;
}

}  // namespace

TEST_SUITE("smashlab") {

TEST_CASE("nilpotency index grows with the chain") {
  for (int n = 1; n <= 3; ++n) {
    auto lab = smashlab_example("chain" + std::to_string(n));
    auto r = lab.verify_nilpotent();
    CAPTURE(n);
    CHECK(r.ok);
    CHECK(r.detail["min_power"].get<int>() == n);
  }
}

TEST_CASE("Moebius values agree with the chain sum") {
  for (const char* n : {"chain3", "diamond"}) {
    auto lab = smashlab_example(n);
    const auto& E = lab.action().E;
    std::vector<int> P;
    for (int e = 1; e < E.size(); ++e) P.push_back(e);
    for (int x : P)
      for (int d : P)
        if (E.leq(x, d)) {
          CHECK(lab.mobius(x, d, P) == hall_chains(E, P, x, d));
        }
  }
  auto chain = smashlab_example("chain3");
  const auto& E = chain.action().E;
  std::vector<int> P{1, 2, 3};
  // on a chain, mu is 1 on the diagonal, -1 on covers, 0 otherwise
  for (int x : P)
    for (int d : P)
      if (E.leq(x, d)) {
        int gap = 0;
        for (int z : P)
          if (z != x && E.leq(x, z) && E.leq(z, d)) ++gap;
        CHECK(chain.mobius(x, d, P) == (gap == 0 ? 1 : gap == 1 ? -1 : 0));
      }
}

TEST_CASE("z2 swap: stage two and all identities") {
  auto lab = smashlab_example("z2_swap");
  CHECK(lab.family().stage == Stage::StageTwo);
  CHECK(lab.check_properties(lab.family(), true).ok);
  CHECK(lab.check_eff_prime().ok);
  CHECK(lab.units().size() == 10);
  for (const auto& c : {lab.verify_algebra(), lab.verify_phi(), lab.verify_psi(), lab.verify_irho(),
                        lab.verify_nilpotent(), lab.verify_conjugation(), lab.verify_neumann()}) {
    CAPTURE(c.name);
    CHECK(c.ok);
    CHECK(c.checks > 0);
  }
}

TEST_CASE("psi is inverted by psi_inv on units") {
  auto lab = smashlab_example("z4_swap");
  for (const auto& u : lab.units()) {
    auto x = lab.unit(AlgTag::CalA, u);
    CHECK(lab.psi_inv(lab.psi(x)) == x);
  }
}

TEST_CASE("stage closure is idempotent") {
  auto lab = smashlab_example("s3_atoms");
  auto again = lab.close_stage_two(lab.close_stage_one(lab.family()));
  CHECK(again.table == lab.family().table);
  CHECK(lab.check_redundant_factor(lab.close_stage_one(lab.family())).ok);
}

TEST_CASE("sigma must contain the identity") {
  CHECK_THROWS_AS(SmashLab(example_action("z2_swap"), {1}, {0}), Error);
}

}  // TEST_SUITE
