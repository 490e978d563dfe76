#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trivext/parser.hpp"
#include "trivext/report.hpp"

using namespace trivext;

namespace {

struct Options {
  int depth = 6;
  uint64_t seed = 0;
  uint64_t budget = 1000000;
  bool verbose = false;
  std::string format = "json";
  std::string config_file;

  std::string ring_text;
  std::string module_text;
  std::string ideal_text;
  std::string expr_text;
  std::string scenario;
  std::string ring_a = "Z/4";
  std::string ring_b = "GF(2)";
  int64_t p = 2;
  int64_t N = 0;
  int64_t Dg = 6;
  int64_t dimE = 2;
  int trials = 20;

  bool depth_set = false, seed_set = false, budget_set = false;

  Config to_config() const {
    Config cfg;
    if (!config_file.empty()) cfg.apply_file(config_file);
    if (depth_set) cfg.depth = depth;
    if (seed_set) cfg.seed = seed;
    if (budget_set) cfg.budget = budget;
    return cfg;
  }
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--depth", o.depth, "resolution depth bound")
      ->each([&](const std::string&) { o.depth_set = true; });
  cmd->add_option("--seed", o.seed, "PRNG seed")
      ->each([&](const std::string&) { o.seed_set = true; });
  cmd->add_option("--budget", o.budget, "candidate cap for exhaustive searches")
      ->each([&](const std::string&) { o.budget_set = true; });
  cmd->add_flag("--verbose", o.verbose, "include matrices and element lists");
  cmd->add_option("--format", o.format, "output format: json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}));
  cmd->add_option("--config", o.config_file, "key=value config file");
}

ordered_json invocation_json(const std::string& sub, const Options& o) {
  ordered_json inv = ordered_json::object();
  inv["subcommand"] = sub;
  ordered_json args = ordered_json::object();
  if (!o.expr_text.empty()) args["expr"] = o.expr_text;
  if (!o.ring_text.empty()) args["ring"] = o.ring_text;
  if (!o.module_text.empty()) args["module"] = o.module_text;
  if (!o.ideal_text.empty()) args["ideal"] = o.ideal_text;
  if (!o.scenario.empty()) args["scenario"] = o.scenario;
  args["depth"] = o.depth;
  args["seed"] = o.seed;
  inv["args"] = std::move(args);
  return inv;
}

void run_scenario_into(ReportDocument& doc, const std::string& id, const Options& o,
                       const Config& cfg) {
  int depth = cfg.depth;
  if (id == "lemma12") {
    RingPtr A = parse_ring(o.ring_text.empty() ? "Z/4" : o.ring_text, cfg);
    auto gens = parse_ideal_gens(A, o.ideal_text.empty() ? "(2)" : o.ideal_text);
    doc.payloads.push_back(scenario_payload(lemma12_scenario(A, gens, depth, cfg)));
  } else if (id == "thm11-structure") {
    RingPtr A = parse_ring(o.ring_text.empty() ? "Z/4" : o.ring_text, cfg);
    RingPtr R = residue_idealization(A, cfg);
    ModuleSpec H0 = o.module_text.empty()
                        ? distinguished_module(R, DistKind::Full, cfg)
                        : parse_module(R, o.module_text);
    if (o.module_text.empty()) {
      // default H0 = R/m_R as a presented module
      std::vector<RingElement> rels;
      for (const Enc& g : R->locality().max_ideal_gens) rels.emplace_back(R, g);
      H0 = ModuleSpec::presented(PresentationMatrix::make(
          R, 1, static_cast<int64_t>(rels.size()), rels));
    }
    doc.payloads.push_back(scenario_payload(thm11_structure_scenario(A, H0, depth, cfg)));
  } else if (id == "thm11-part2") {
    int64_t N = o.N == 0 ? 8 : o.N;
    doc.payloads.push_back(
        scenario_payload(thm11_part2_bounded(o.p, N, o.Dg, cfg)));
  } else if (id == "thm13") {
    RingPtr A = parse_ring(o.ring_a, cfg);
    RingPtr B = parse_ring(o.ring_b, cfg);
    doc.payloads.push_back(scenario_payload(
        thm13_product_scenario(A, B, o.trials, cfg.seed, depth, cfg)));
  } else if (id == "ex22") {
    int64_t N = o.N == 0 ? 4 : o.N;
    doc.payloads.push_back(scenario_payload(ex22_scenario(o.p, N, depth, cfg)));
  } else if (id == "ex23") {
    doc.payloads.push_back(scenario_payload(ex23_scenario(o.p, o.dimE, depth, cfg)));
  } else {
    fail(ErrorKind::Usage, "unknown scenario id " + id);
  }
}

void run_verify_all(ReportDocument& doc, const Options& o, const Config& cfg) {
  (void)o;
  int depth = cfg.depth;
  for (const char* inst : {"Z/4", "GF(2)[x]/(x^2)", "GF(2)[x]/(x^4)"}) {
    RingPtr A = parse_ring(inst, cfg);
    std::string gen = std::string(inst) == "Z/4" ? "(2)" : "(x)";
    doc.payloads.push_back(
        scenario_payload(lemma12_scenario(A, parse_ideal_gens(A, gen), depth, cfg)));
  }
  {
    RingPtr A = parse_ring("Z/4", cfg);
    RingPtr R = residue_idealization(A, cfg);
    doc.payloads.push_back(scenario_payload(
        thm11_structure_scenario(A, parse_module(R, "pres([[(2,0)]])"), depth, cfg)));
  }
  {
    RingPtr A = parse_ring("GF(2)[x]/(x^2)", cfg);
    RingPtr R = residue_idealization(A, cfg);
    doc.payloads.push_back(scenario_payload(thm11_structure_scenario(
        A, parse_module(R, "pres([[(x,0),(0,1)]])"), depth, cfg)));
  }
  doc.payloads.push_back(scenario_payload(thm11_part2_bounded(2, 8, 6, cfg)));
  doc.payloads.push_back(scenario_payload(thm11_part2_bounded(3, 5, 3, cfg)));
  doc.payloads.push_back(scenario_payload(thm13_product_scenario(
      parse_ring("Z/4", cfg), parse_ring("GF(2)", cfg), 20, cfg.seed, depth, cfg)));
  doc.payloads.push_back(scenario_payload(ex22_scenario(2, 4, depth, cfg)));
  doc.payloads.push_back(scenario_payload(ex23_scenario(2, 1, depth, cfg)));
  doc.payloads.push_back(scenario_payload(ex23_scenario(2, 2, depth, cfg)));
}

int emit(const ReportDocument& doc, const Options& o) {
  if (o.format == "markdown")
    std::cout << doc.to_markdown();
  else
    std::cout << doc.to_json().dump(2) << "\n";
  return doc.exit_code();
}

bool usage_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax:
    case ErrorKind::Usage:
    case ErrorKind::InvalidDescriptor:
    case ErrorKind::PrecisionTooSmall:
    case ErrorKind::NotLocal:
    case ErrorKind::NotFinite:
    case ErrorKind::UnsupportedModule:
    case ErrorKind::WrongShape:
    case ErrorKind::ImproperIdeal:
    case ErrorKind::RingMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification harness for idealizations of finite local rings"};
  app.require_subcommand(1);
  Options o;

  CLI::App* c_parse = app.add_subcommand("parse", "parse a ring expression and echo its AST");
  c_parse->add_option("--expr", o.expr_text, "ring expression")->required();
  add_common(c_parse, o);

  CLI::App* c_resolve =
      app.add_subcommand("resolve", "minimal free resolution of a module");
  c_resolve->add_option("--ring", o.ring_text, "ring expression")->required();
  c_resolve->add_option("--module", o.module_text, "module expression")->required();
  add_common(c_resolve, o);

  CLI::App* c_pd = app.add_subcommand("pd", "projective dimension verdict");
  c_pd->add_option("--ring", o.ring_text, "ring expression")->required();
  c_pd->add_option("--module", o.module_text, "module expression")->required();
  add_common(c_pd, o);

  CLI::App* c_gldim = app.add_subcommand("gldim", "global dimension probe");
  c_gldim->add_option("--ring", o.ring_text, "ring expression")->required();
  add_common(c_gldim, o);

  CLI::App* c_ideals =
      app.add_subcommand("ideals", "ideal census with pair-form probes");
  c_ideals->add_option("--ring", o.ring_text, "ring expression")->required();
  add_common(c_ideals, o);

  CLI::App* c_verify = app.add_subcommand("verify", "run a verification scenario");
  c_verify
      ->add_option("scenario", o.scenario, "scenario id")
      ->required()
      ->check(CLI::IsMember({"lemma12", "thm11-structure", "thm11-part2", "thm13", "ex22",
                             "ex23", "all"}));
  c_verify->add_option("--ring", o.ring_text, "base ring A");
  c_verify->add_option("--module", o.module_text, "module for thm11-structure");
  c_verify->add_option("--ideal", o.ideal_text, "ideal generators for lemma12");
  c_verify->add_option("--p", o.p, "prime for thm11-part2 / ex22 / ex23");
  c_verify->add_option("--N", o.N, "precision / truncation");
  c_verify->add_option("--Dg", o.Dg, "degree window for thm11-part2");
  c_verify->add_option("--dimE", o.dimE, "vector-space rank for ex23");
  c_verify->add_option("--trials", o.trials, "random module count for thm13");
  c_verify->add_option("--A", o.ring_a, "first factor for thm13");
  c_verify->add_option("--B", o.ring_b, "second factor for thm13");
  add_common(c_verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    Config cfg = o.to_config();
    o.depth = cfg.depth;
    o.seed = cfg.seed;

    ReportDocument doc;

    if (c_parse->parsed()) {
      doc.invocation = invocation_json("parse", o);
      RingDescriptor d = parse_ring_descriptor(o.expr_text);
      construct_ring(d, cfg);  // semantic validation
      doc.payloads.push_back(parse_payload(o.expr_text, d));
    } else if (c_resolve->parsed()) {
      doc.invocation = invocation_json("resolve", o);
      RingPtr R = parse_ring(o.ring_text, cfg);
      ModuleSpec M = parse_module(R, o.module_text);
      doc.payloads.push_back(resolution_payload(minimal_resolution(M, cfg.depth, cfg),
                                                o.verbose));
    } else if (c_pd->parsed()) {
      doc.invocation = invocation_json("pd", o);
      RingPtr R = parse_ring(o.ring_text, cfg);
      ModuleSpec M = parse_module(R, o.module_text);
      PdVerdict v = R->locality().is_local ? pd_verdict(M, cfg.depth, cfg)
                                           : pd_over_product(M, cfg.depth, cfg);
      doc.payloads.push_back(pd_payload(R->desc(), o.module_text, v));
    } else if (c_gldim->parsed()) {
      doc.invocation = invocation_json("gldim", o);
      RingPtr R = parse_ring(o.ring_text, cfg);
      doc.payloads.push_back(gldim_payload(R, global_dim_probe(R, cfg.depth, cfg)));
    } else if (c_ideals->parsed()) {
      doc.invocation = invocation_json("ideals", o);
      RingPtr R = parse_ring(o.ring_text, cfg);
      doc.payloads.push_back(ideals_payload(R, enumerate_ideals(R, cfg), o.verbose));
    } else if (c_verify->parsed()) {
      doc.invocation = invocation_json("verify", o);
      if (o.scenario == "all")
        run_verify_all(doc, o, cfg);
      else
        run_scenario_into(doc, o.scenario, o, cfg);
    }

    return emit(doc, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
