#include <doctest.h>

#include "suite.hpp"
#include "trivext/report.hpp"
#include "trivext/scenarios.hpp"

using namespace suite;

namespace {

Config cfg;

bool all_pass(const ScenarioReport& r) { return r.all_pass(); }

ordered_json normalized(const ScenarioReport& r) {
  ordered_json j = scenario_payload(r);
  j.erase("timing_ms");
  return j;
}

}  // namespace

TEST_CASE("lemma12 on the three suite instances") {
  for (const auto& [rname, igens] :
       std::vector<std::pair<std::string, std::string>>{
           {"Z/4", "(2)"},
           {"GF(2)[x]/(x^2)", "(x)"},
           {"GF(2)[x]/(x^4)", "(x)"}}) {
    RingPtr A = ring(rname);
    ScenarioReport rep = lemma12_scenario(A, parse_ideal_gens(A, igens), 6, cfg);
    INFO(rname);
    CHECK(rep.checks.size() == 5);
    CHECK(all_pass(rep));
  }
}

TEST_CASE("lemma12 degenerate case I = (0)") {
  RingPtr A = ring("GF(2)");
  ScenarioReport rep = lemma12_scenario(A, parse_ideal_gens(A, "(0)"), 6, cfg);
  CHECK(all_pass(rep));
}

TEST_CASE("lemma12 over a non-local base goes through the decomposition") {
  RingPtr A = ring("Z/6");
  ScenarioReport rep = lemma12_scenario(A, parse_ideal_gens(A, "(2)"), 6, cfg);
  CHECK_FALSE(rep.has_failure());
}

TEST_CASE("lemma12 rejects improper ideals") {
  RingPtr A = ring("Z/4");
  CHECK_THROWS_AS(lemma12_scenario(A, parse_ideal_gens(A, "(1)"), 6, cfg), Error);
}

TEST_CASE("thm11-structure instances") {
  SUBCASE("Z/4 with H0 = R/((2,0)R)") {
    RingPtr A = ring("Z/4");
    RingPtr R = residue_idealization(A, cfg);
    ScenarioReport rep =
        thm11_structure_scenario(A, parse_module(R, "pres([[(2,0)]])"), 6, cfg);
    CHECK(all_pass(rep));
  }
  SUBCASE("GF(2)[x]/(x^2) with H0 = R/m") {
    RingPtr A = ring("GF(2)[x]/(x^2)");
    RingPtr R = residue_idealization(A, cfg);
    ScenarioReport rep =
        thm11_structure_scenario(A, parse_module(R, "pres([[(x,0),(0,1)]])"), 6, cfg);
    CHECK(all_pass(rep));
  }
  SUBCASE("free module: the chain terminates at once") {
    RingPtr A = ring("Z/4");
    RingPtr R = residue_idealization(A, cfg);
    ScenarioReport rep =
        thm11_structure_scenario(A, ModuleSpec::free_module(R, 1), 6, cfg);
    CHECK(all_pass(rep));
    bool noted = false;
    for (const auto& c : rep.checks)
      if (c.witness.find("terminates") != std::string::npos) noted = true;
    CHECK(noted);
  }
}

TEST_CASE("thm11-part2 bounded windows") {
  CHECK(all_pass(thm11_part2_bounded(2, 8, 6, cfg)));
  CHECK(all_pass(thm11_part2_bounded(3, 5, 3, cfg)));
  CHECK_THROWS_AS(thm11_part2_bounded(2, 8, 7, cfg), Error);
  try {
    thm11_part2_bounded(2, 4, 3, cfg);
    FAIL("expected PrecisionTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionTooSmall);
  }
}

TEST_CASE("thm13 product proxy is deterministic under a fixed seed") {
  RingPtr A = ring("Z/4");
  RingPtr B = ring("GF(2)");
  ScenarioReport r1 = thm13_product_scenario(A, B, 20, 0, 6, cfg);
  ScenarioReport r2 = thm13_product_scenario(A, B, 20, 0, 6, cfg);
  CHECK(all_pass(r1));
  CHECK(normalized(r1) == normalized(r2));
  ScenarioReport r3 = thm13_product_scenario(A, B, 20, 1, 6, cfg);
  CHECK(all_pass(r3));
}

TEST_CASE("thm13 over a semisimple product is uniformly Finite(0)") {
  RingPtr A = ring("GF(2)");
  ScenarioReport rep = thm13_product_scenario(A, A, 10, 0, 6, cfg);
  CHECK(all_pass(rep));
  for (const auto& c : rep.checks)
    CHECK(c.witness.find("CertifiedInfinite") == std::string::npos);
}

TEST_CASE("ex22 census counts and statuses") {
  SUBCASE("(2,4): frozen census, discrepancies recorded but nothing fails") {
    ScenarioReport rep = ex22_scenario(2, 4, 6, cfg);
    CHECK_FALSE(rep.has_failure());
    CHECK(rep.has_discrepancy());
    bool found = false;
    for (const auto& [k, v] : rep.instance)
      if (k == "ideal_count") {
        CHECK(v == "12");
        found = true;
      }
    CHECK(found);
  }
  SUBCASE("(2,2)") {
    ScenarioReport rep = ex22_scenario(2, 2, 6, cfg);
    CHECK_FALSE(rep.has_failure());
    for (const auto& [k, v] : rep.instance)
      if (k == "ideal_count") CHECK(v == "6");
  }
  SUBCASE("(3,2)") {
    ScenarioReport rep = ex22_scenario(3, 2, 6, cfg);
    CHECK_FALSE(rep.has_failure());
    for (const auto& [k, v] : rep.instance)
      if (k == "ideal_count") CHECK(v == "7");
  }
}

TEST_CASE("ex23 for rank 1 and 2") {
  CHECK(all_pass(ex23_scenario(2, 1, 6, cfg)));
  CHECK(all_pass(ex23_scenario(2, 2, 6, cfg)));
}

TEST_CASE("scenario reports are deterministic") {
  RingPtr A = ring("Z/4");
  auto gens = parse_ideal_gens(A, "(2)");
  CHECK(normalized(lemma12_scenario(A, gens, 6, cfg)) ==
        normalized(lemma12_scenario(A, gens, 6, cfg)));
  CHECK(normalized(ex22_scenario(2, 2, 6, cfg)) == normalized(ex22_scenario(2, 2, 6, cfg)));
}
