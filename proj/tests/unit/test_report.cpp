#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "suite.hpp"
#include "trivext/report.hpp"
#include "trivext/scenarios.hpp"

using namespace suite;

namespace {

ordered_json load_schema() {
  std::ifstream in("schema/report.schema.json");
  REQUIRE(in.good());
  return ordered_json::parse(in);
}

ReportDocument sample_document() {
  Config cfg;
  ReportDocument doc;
  doc.invocation["subcommand"] = "verify";
  ordered_json args = ordered_json::object();
  args["scenario"] = "lemma12";
  args["depth"] = 6;
  doc.invocation["args"] = std::move(args);
  RingPtr A = ring("Z/4");
  doc.payloads.push_back(
      scenario_payload(lemma12_scenario(A, parse_ideal_gens(A, "(2)"), 6, cfg)));
  return doc;
}

}  // namespace

TEST_CASE("documents validate against the shipped schema") {
  ordered_json schema = load_schema();
  std::string err;
  Config cfg;

  SUBCASE("scenario document") {
    CHECK(validate_against_schema(schema, sample_document().to_json(), &err));
    INFO(err);
  }
  SUBCASE("resolution, pd, gldim, census and ast payloads") {
    ReportDocument doc;
    doc.invocation["subcommand"] = "mixed";
    doc.invocation["args"] = ordered_json::object();
    RingPtr z4 = ring("Z/4");
    ModuleSpec k = parse_module(z4, "quot((2))");
    doc.payloads.push_back(resolution_payload(minimal_resolution(k, 4, cfg), true));
    doc.payloads.push_back(pd_payload(z4->desc(), "quot((2))", pd_verdict(k, 6, cfg)));
    RingPtr P = ring("prod(GF(2),GF(4))");
    doc.payloads.push_back(gldim_payload(P, global_dim_probe(P, 6, cfg)));
    RingPtr R = ring("triv(Z/4,quot((2)))");
    doc.payloads.push_back(ideals_payload(R, enumerate_ideals(R, cfg), true));
    doc.payloads.push_back(
        parse_payload("series(2,8)", parse_ring_descriptor("series(2,8)")));
    bool ok = validate_against_schema(schema, doc.to_json(), &err);
    INFO(err);
    CHECK(ok);
  }
  SUBCASE("the validator rejects malformed documents") {
    ordered_json bad = sample_document().to_json();
    bad["overall_status"] = "maybe";
    CHECK_FALSE(validate_against_schema(schema, bad, &err));
    ordered_json bad2 = sample_document().to_json();
    bad2.erase("invocation");
    CHECK_FALSE(validate_against_schema(schema, bad2, &err));
    ordered_json bad3 = sample_document().to_json();
    bad3["payloads"][0]["checks"][0]["status"] = "unknown";
    CHECK_FALSE(validate_against_schema(schema, bad3, &err));
  }
}

TEST_CASE("exit codes are a pure function of document content") {
  ReportDocument doc;
  doc.invocation["subcommand"] = "x";
  doc.invocation["args"] = ordered_json::object();
  ordered_json pass = ordered_json::object();
  pass["kind"] = "pd";
  pass["status"] = "pass";
  ordered_json disc = pass;
  disc["status"] = "discrepancy";
  ordered_json bad = pass;
  bad["status"] = "fail";

  doc.payloads = {pass};
  CHECK(doc.exit_code() == 0);
  doc.payloads = {pass, disc};
  CHECK(doc.exit_code() == 3);
  doc.payloads = {pass, disc, bad};
  CHECK(doc.exit_code() == 1);
  doc.payloads.clear();
  CHECK(doc.exit_code() == 0);
}

TEST_CASE("JSON round-trips and markdown renders") {
  ReportDocument doc = sample_document();
  ordered_json j = doc.to_json();
  ordered_json j2 = ordered_json::parse(j.dump());
  CHECK(j == j2);
  std::string md = doc.to_markdown();
  CHECK(md.find("lemma12") != std::string::npos);
  CHECK(md.find("overall_status") != std::string::npos);
}

TEST_CASE("reports are byte-stable up to timing") {
  Config cfg;
  RingPtr A = ring("Z/4");
  auto strip = [](ordered_json j) {
    j.erase("timing_ms");
    return j.dump();
  };
  std::string a = strip(
      scenario_payload(lemma12_scenario(A, parse_ideal_gens(A, "(2)"), 6, cfg)));
  std::string b = strip(
      scenario_payload(lemma12_scenario(A, parse_ideal_gens(A, "(2)"), 6, cfg)));
  CHECK(a == b);
}

TEST_CASE("config files load and reject unknown keys") {
  const char* path = "/tmp/trivext_test.cfg";
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "depth = 4\n"
        << "budget = 500\n"
        << "seed = 9\n";
  }
  Config cfg = Config::load_file(path);
  CHECK(cfg.depth == 4);
  CHECK(cfg.budget == 500);
  CHECK(cfg.seed == 9);
  {
    std::ofstream out(path);
    out << "nonsense = 1\n";
  }
  CHECK_THROWS_AS(Config::load_file(path), Error);
  {
    std::ofstream out(path);
    out << "depth 4\n";
  }
  CHECK_THROWS_AS(Config::load_file(path), Error);
  std::remove(path);
  CHECK_THROWS_AS(Config::load_file("/nonexistent/trivext.cfg"), Error);
}

TEST_CASE("the sample config in the repository matches the defaults") {
  Config from_file = Config::load_file("trivext.cfg");
  Config defaults;
  CHECK(from_file.depth == defaults.depth);
  CHECK(from_file.budget == defaults.budget);
  CHECK(from_file.axiom_check_cutoff == defaults.axiom_check_cutoff);
  CHECK(from_file.lcg_multiplier == defaults.lcg_multiplier);
  CHECK(from_file.lcg_increment == defaults.lcg_increment);
}
