#include <doctest.h>

#include "report_walker.hpp"
#include "semik/errors.hpp"
#include "semik/report.hpp"

using namespace semik;

namespace {

nlohmann::json run_text(const std::string& text) { return run(RunConfig::parse(text)); }

}  // namespace

TEST_SUITE("report") {

TEST_CASE("config grammar") {
  auto c = RunConfig::parse(
      "# comment\n"
      "subcommand = ktheory\n"
      "preset = bs   # trailing\n"
      "k = \"-2\"\n"
      "l=3\n"
      "threads = 2\n");
  CHECK(c.subcommand == "ktheory");
  CHECK(c.get_or("preset", "") == "bs");
  CHECK(c.get_int("k", 0) == -2);
  CHECK(c.get_int("l", 0) == 3);
  CHECK(c.threads == 2);
  CHECK_NOTHROW(c.validate());

  auto q = RunConfig::parse("subcommand = hull\nelement = \"a # b\"\n");
  CHECK(q.get_or("element", "") == "a # b");

  for (const char* bad : {"x = 1\nx = 2\n", "Bad = 1\n", "k = \"-2\n", "novalue\n", "threads = 0\n"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(RunConfig::parse(bad), Error);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(RunConfig::parse("subcommand = tiling\ndepth = 2\n").validate(), Error);
  CHECK_THROWS_AS(RunConfig::parse("subcommand = hull\ndepth = 0\n").validate(), Error);
  CHECK_THROWS_AS(RunConfig::parse("subcommand = hull\nradius = -1\n").validate(), Error);
  CHECK_THROWS_AS(RunConfig::parse("preset = free\n").validate(), Error);
  CHECK_THROWS_AS(RunConfig::parse("subcommand = nope\n").validate(), Error);
  CHECK_THROWS_AS(RunConfig::parse("subcommand = hull\nseed_order = a,a\n").validate(), Error);
  try {
    RunConfig::parse("subcommand = hull\ndepth = x\n").validate();
    FAIL("accepted a non-integer depth");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
  }
}

TEST_CASE("envelope") {
  auto r = run_text("subcommand = tiling\npoints = 0,1\n");
  CHECK(r["schema_version"] == kSchemaVersion);
  CHECK(r["tool"] == "semik");
  CHECK(r["version"] == version());
  CHECK(r["subcommand"] == "tiling");
  CHECK(r["config"]["values"]["points"] == "0,1");
  CHECK(r.contains("result"));
  auto e = make_error_report(RunConfig::parse("subcommand = ktheory\n"), "InvalidParams", "nope", nullptr);
  CHECK(e["error"]["kind"] == "InvalidParams");
  CHECK_FALSE(e.contains("result"));
}

TEST_CASE("runs are deterministic and carry provenance") {
  const std::vector<std::string> configs{
      "subcommand = hull\npreset = free\nn = 2\ndepth = 2\ncheck = laws,independence,rlcm\n",
      "subcommand = hull\npreset = numerical\ngens = 2,3\ndepth = 2\ncheck = independence\n",
      "subcommand = hull\npreset = bs\nk = -2\nl = 3\ndepth = 2\ncheck = toeplitz\nelement = a b a^-1\n",
      "subcommand = paction\nexample = n_window\n",
      "subcommand = orbits\nexample = s3_atoms\n",
      "subcommand = smashlab\naction = chain2\nverify = all\n",
      "subcommand = ktheory\npreset = artin\nn = 3\nm = inf\n",
      "subcommand = ktheory\npreset = numerical\ngens = 2,3\n",
      "subcommand = tiling\npoints = 0,1,3\n",
  };
  for (const auto& text : configs) {
    CAPTURE(text);
    auto a = run_text(text);
    CHECK(a.dump() == run_text(text).dump());
    CHECK(semik::testing::report_violations(a).empty());
  }
}

TEST_CASE("errors keep their kind") {
  try {
    run_text("subcommand = ktheory\npreset = congruence\n");
    FAIL("congruence preset produced a report");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParams);
  }
  CHECK_THROWS_AS(run_text("subcommand = hull\ncheck = toeplitz\npreset = free\nn = 1\n"), Error);
}

TEST_CASE("the walker flags missing bounds") {
  nlohmann::json j{{"checks", {{{"verdict", "RightLCM"}, {"provenance", "verified-to-bound"}}}}};
  CHECK(semik::testing::report_violations(j).size() == 2);
  j["checks"][0]["bound"] = {{"depth", 2}};
  CHECK(semik::testing::report_violations(j).empty());
}

}  // TEST_SUITE
