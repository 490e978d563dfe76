// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Returns nonzero if any fails.
//
// usage: acceptance_tests <path-to-cli> <path-to-report-schema>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "trivext/parser.hpp"
#include "trivext/report.hpp"
#include "trivext/resolution.hpp"
#include "trivext/scenarios.hpp"

using namespace trivext;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string g_cli;
ordered_json g_schema;
int g_failures = 0;

CliResult run_cli(const std::string& args) {
  CliResult r;
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void report(int id, bool pass, const std::string& label, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << label;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string>& local_suite_16() {
  static const std::vector<std::string> rings = {
      "Z/2",
      "Z/3",
      "Z/4",
      "Z/8",
      "Z/9",
      "Z/16",
      "GF(4)",
      "GF(2)[x]/(x^2)",
      "GF(2)[x]/(x^3)",
      "GF(2)[x]/(x^4)",
      "GF(3)[x]/(x^2)",
      "triv(Z/4,quot((2)))",
      "triv(GF(2),free(1))",
      "triv(GF(2),free(2))",
      "triv(GF(2)[x]/(x^2),quot((x)))",
  };
  return rings;
}

const std::vector<std::string>& finite_suite() {
  static std::vector<std::string> rings = [] {
    std::vector<std::string> r = local_suite_16();
    r.push_back("Z/6");
    r.push_back("prod(Z/4,GF(2))");
    r.push_back("prod(GF(2),GF(4))");
    r.push_back("triv(GF(2)[x]/(x^4),quot((x)))");
    return r;
  }();
  return rings;
}

// ---------------------------------------------------------------------------

void criterion1(const Config& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& [rname, igens] :
       std::vector<std::pair<std::string, std::string>>{
           {"Z/4", "(2)"},
           {"GF(2)[x]/(x^2)", "(x)"},
           {"GF(2)[x]/(x^4)", "(x)"}}) {
    RingPtr A = parse_ring(rname, cfg);
    ScenarioReport rep = lemma12_scenario(A, parse_ideal_gens(A, igens), 6, cfg);
    if (rep.checks.size() != 5 || !rep.all_pass()) {
      ok = false;
      detail = rname + ": scenario checks failed";
      break;
    }
    RingPtr R = parse_ring("triv(" + rname + ",quot(" + igens + "))", cfg);
    for (DistKind kind : {DistKind::IExt, DistKind::ZeroExt}) {
      ModuleSpec M = distinguished_module(R, kind, cfg);
      PdVerdict v = pd_verdict(M, 6, cfg);
      Resolution res = minimal_resolution(M, 6, cfg);
      if (v.kind != PdVerdict::Kind::CertifiedInfinite || res.terminated) {
        ok = false;
        detail = rname + ": verdict " + v.str();
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 60.0) {
    ok = false;
    detail += " overtime";
  }
  std::ostringstream d;
  d.precision(2);
  d << std::fixed << secs << "s";
  report(1, ok, "lemma12 suite: five checks and certified-infinite verdicts on three instances",
         detail.empty() ? d.str() : detail);
}

void criterion2(const Config& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  uint64_t matrices = 0, mismatches = 0;
  std::string detail;

  auto generated_sets_equal = [&](const RingPtr& R, const PadicRing& P, int64_t rows,
                                  const std::vector<IVec>& cols) {
    const RingTable& t = R->table();
    int64_t m = static_cast<int64_t>(cols.size());
    std::vector<IVec> kernel = syzygy_kernel_index(R, rows, cols, cfg.budget);
    std::vector<IVec> sgens = syzygy_gens_structured(R, rows, cols, cfg);
    if (sgens.empty()) return kernel.size() == 1;  // just the zero vector
    // every structured generator is an actual syzygy
    for (const IVec& g : sgens) {
      for (int64_t i = 0; i < rows; ++i) {
        uint16_t acc = static_cast<uint16_t>(t.zero);
        for (int64_t j = 0; j < m; ++j)
          acc = t.add(acc, t.mul(g[static_cast<size_t>(j)],
                                 cols[static_cast<size_t>(j)][static_cast<size_t>(i)]));
        if (acc != t.zero) return false;
      }
    }
    // ...and the whole kernel lies in their span (additive membership)
    size_t slots = P.moduli.size();
    PadicSpan span(P.ctx, static_cast<int>(m * static_cast<int64_t>(slots)));
    for (size_t s = 0; s < slots; ++s) {
      std::vector<int64_t> c(slots, 0);
      c[s] = 1;
      uint16_t b = static_cast<uint16_t>(t.index(R->from_coords(c)));
      for (const IVec& g : sgens) span.insert(P.scaled(iv_scalar(t, b, g)));
    }
    for (const IVec& v : kernel)
      if (!span.contains(P.scaled(v))) return false;
    return true;
  };

  const uint64_t exhaustive_cap = 300000;
  for (const auto& name : local_suite_16()) {
    RingPtr R = parse_ring(name, cfg);
    const RingTable& t = R->table();
    PadicRing P = PadicRing::build(R);
    uint64_t q = R->size();
    Lcg rng(42, cfg);
    std::vector<uint16_t> mideal;  // index list of the maximal ideal
    for (uint32_t i = 0; i < t.q; ++i)
      if (!t.unit(i)) mideal.push_back(static_cast<uint16_t>(i));

    for (int64_t rows = 1; rows <= 3; ++rows) {
      for (int64_t ncols = 1; ncols <= 3; ++ncols) {
        uint64_t cells = static_cast<uint64_t>(rows * ncols);
        uint64_t total = 1;
        bool overflow = false;
        for (uint64_t i = 0; i < cells; ++i) {
          total *= q;
          if (total > exhaustive_cap) {
            overflow = true;
            break;
          }
        }
        std::vector<IVec> cols(static_cast<size_t>(ncols),
                               IVec(static_cast<size_t>(rows), 0));
        auto check = [&]() {
          ++matrices;
          if (!generated_sets_equal(R, P, rows, cols)) {
            ++mismatches;
            if (detail.empty())
              detail = name + " " + std::to_string(rows) + "x" + std::to_string(ncols);
          }
        };
        if (!overflow) {
          for (uint64_t idx = 0; idx < total; ++idx) {
            uint64_t x = idx;
            for (int64_t j = 0; j < ncols; ++j)
              for (int64_t i = 0; i < rows; ++i) {
                cols[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                    static_cast<uint16_t>(x % q);
                x /= q;
              }
            check();
          }
        } else {
          // seeded random sample plus structured corner cases
          for (int s = 0; s < 400; ++s) {
            for (auto& c : cols)
              for (auto& e : c) e = static_cast<uint16_t>(rng.below(q));
            check();
          }
          for (int s = 0; s < 200; ++s) {  // entries from the maximal ideal only
            for (auto& c : cols)
              for (auto& e : c) e = mideal[rng.below(mideal.size())];
            check();
          }
          for (auto& c : cols)
            for (auto& e : c) e = static_cast<uint16_t>(t.zero);
          check();
          if (rows == ncols) {
            for (int64_t j = 0; j < ncols; ++j)
              for (int64_t i = 0; i < rows; ++i)
                cols[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                    static_cast<uint16_t>(i == j ? t.one : t.zero);
            check();
          }
        }
      }
    }
  }
  double secs = seconds_since(t0);
  bool ok = mismatches == 0 && secs < 300.0;
  std::ostringstream d;
  d.precision(2);
  d << matrices << " matrices, " << mismatches << " mismatches, " << std::fixed << secs
    << "s";
  report(2, ok, "oracle equivalence of structured and exhaustive syzygies",
         detail.empty() ? d.str() : detail + "; " + d.str());
}

void criterion3(const Config& cfg) {
  bool ok = true;
  std::string detail;
  int instances = 0;
  for (const auto& [rname, h0] : std::vector<std::pair<std::string, std::string>>{
           {"Z/4", "pres([[(2,0)]])"},
           {"GF(2)[x]/(x^2)", "pres([[(x,0),(0,1)]])"}}) {
    RingPtr A = parse_ring(rname, cfg);
    RingPtr R = residue_idealization(A, cfg);
    ScenarioReport rep = thm11_structure_scenario(A, parse_module(R, h0), 6, cfg);
    bool h2 = false, h3 = false;
    for (const auto& c : rep.checks) {
      if (c.name == "second-kernel-identity" && c.status == CheckResult::Status::Pass)
        h2 = true;
      if (c.name == "third-kernel-isomorphism" && c.status == CheckResult::Status::Pass)
        h3 = true;
    }
    if (!h2 || !h3 || rep.has_failure()) {
      ok = false;
      detail = rname;
    }
    ++instances;
  }
  report(3, ok, "thm11-structure suite: H2 set-equality and H3 isomorphism on 2 instances",
         detail);
}

void criterion4(const Config& cfg) {
  bool ok = true;
  std::string detail;
  for (auto [p, N, Dg] : std::vector<std::tuple<int64_t, int64_t, int64_t>>{
           {2, 8, 6}, {3, 5, 3}}) {
    ScenarioReport rep = thm11_part2_bounded(p, N, Dg, cfg);
    if (!rep.all_pass()) {
      ok = false;
      detail = "window (" + std::to_string(p) + "," + std::to_string(N) + "," +
               std::to_string(Dg) + ") failed";
    }
  }
  bool guarded = false;
  try {
    thm11_part2_bounded(2, 8, 7, cfg);
  } catch (const Error& e) {
    guarded = e.kind() == ErrorKind::PrecisionTooSmall;
  }
  if (!guarded) {
    ok = false;
    detail += " guard missing";
  }
  report(4, ok, "thm11-part2 bounded windows and the PrecisionTooSmall guard", detail);
}

void criterion5(const Config& cfg) {
  RingPtr A = parse_ring("Z/4", cfg);
  RingPtr B = parse_ring("GF(2)", cfg);
  ScenarioReport r1 = thm13_product_scenario(A, B, 20, 0, 6, cfg);
  ScenarioReport r2 = thm13_product_scenario(A, B, 20, 0, 6, cfg);
  ordered_json j1 = scenario_payload(r1);
  ordered_json j2 = scenario_payload(r2);
  j1.erase("timing_ms");
  j2.erase("timing_ms");
  bool ok = r1.all_pass() && j1 == j2;
  report(5, ok, "thm13 proxy: 20 seeded modules over Z/4 x GF(2), deterministic",
         ok ? "" : "disagreement or nondeterminism");
}

void criterion6(const Config& cfg) {
  bool ok = true;
  std::string detail;
  try {
    ScenarioReport rep = ex22_scenario(2, 4, 6, cfg);
    if (rep.has_failure()) {
      ok = false;
      detail = "scenario failure";
    }
    std::string count;
    for (const auto& [k, v] : rep.instance)
      if (k == "ideal_count") count = v;
    if (count != "12") {
      ok = false;
      detail = "census " + count + " != 12";
    }
    bool normal_form_ok = false, gldim_ok = false;
    for (const auto& c : rep.checks) {
      if (c.name == "two-generator-normal-form" &&
          (c.status == CheckResult::Status::Pass ||
           c.status == CheckResult::Status::RecordedDiscrepancy))
        normal_form_ok = true;
      if (c.name == "global-dimension-infinite" && c.status == CheckResult::Status::Pass)
        gldim_ok = true;
    }
    GlobalDimReport gd =
        global_dim_probe(parse_ring("triv(GF(2)[x]/(x^4),quot((x)))", cfg), 6, cfg);
    if (!normal_form_ok || !gldim_ok ||
        gd.verdict.kind != PdVerdict::Kind::CertifiedInfinite) {
      ok = false;
      detail += " checks missing";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("crash: ") + e.what();
  }
  report(6, ok, "ex22 analogue: census = 12, infinite gldim, normal-form probe", detail);
}

void criterion7(const Config& cfg) {
  bool ok = true;
  std::string detail;
  for (int64_t dimE : {1, 2}) {
    ScenarioReport rep = ex23_scenario(2, dimE, 6, cfg);
    if (!rep.all_pass()) {
      ok = false;
      detail = "dimE=" + std::to_string(dimE);
    }
  }
  report(7, ok, "ex23 suite: radical annihilation, kernel form, no free submodules",
         detail);
}

void criterion8(const Config& cfg) {
  RingPtr R = parse_ring("Z/4", cfg);
  ModuleSpec k = parse_module(R, "quot((2))");
  Resolution res = minimal_resolution(k, 6, cfg);
  PdVerdict v = pd_verdict(k, 6, cfg);
  bool ok = res.betti == std::vector<int64_t>{1, 1, 1, 1, 1, 1, 1} &&
            v.kind == PdVerdict::Kind::CertifiedInfinite && v.periodic.has_value() &&
            v.periodic->offset == 1 && v.periodic->period == 1;
  report(8, ok, "classical cross-check: GF(2) over Z/4 has betti [1,1,1,1,1,1,1] and period 1",
         ok ? "" : v.str());
}

void criterion9(const Config& cfg) {
  bool ok = true;
  std::string detail;
  // regular => unit, exhaustively over every finite suite ring
  for (const auto& name : finite_suite()) {
    RingPtr R = parse_ring(name, cfg);
    for (uint64_t i = 0; i < R->size(); ++i) {
      Enc x = R->element_at(i);
      if (R->is_regular(x) && !R->is_unit(x)) {
        ok = false;
        detail = name + ": regular non-unit " + R->render(x);
      }
    }
  }
  // every emitted resolution satisfies d_i ∘ d_{i+1} = 0 (recomputed here)
  std::vector<Resolution> resolutions;
  resolutions.push_back(
      minimal_resolution(parse_module(parse_ring("Z/4", cfg), "quot((2))"), 6, cfg));
  for (const char* name : {"triv(Z/4,quot((2)))", "triv(GF(2)[x]/(x^2),quot((x)))",
                           "triv(GF(2)[x]/(x^4),quot((x)))"}) {
    RingPtr R = parse_ring(name, cfg);
    resolutions.push_back(minimal_resolution(distinguished_module(R, DistKind::ZeroExt, cfg), 5, cfg));
    resolutions.push_back(minimal_resolution(distinguished_module(R, DistKind::IExt, cfg), 5, cfg));
  }
  for (const auto& res : resolutions) {
    for (size_t i = 0; i + 1 < res.steps.size(); ++i) {
      const auto& a = res.steps[i];
      const auto& b = res.steps[i + 1];
      for (int64_t r = 0; r < a.rows; ++r)
        for (int64_t c = 0; c < b.cols; ++c) {
          RingElement acc(a.ring, a.ring->zero());
          for (int64_t kk = 0; kk < a.cols; ++kk)
            acc = acc + a.at(r, kk) * b.at(kk, c);
          if (!acc.is_zero()) {
            ok = false;
            detail = "nonzero composite in a resolution";
          }
        }
    }
  }
  report(9, ok, "structural sanity: regular => unit and d∘d = 0 on all emitted resolutions",
         detail);
}

void criterion10() {
  bool ok = true;
  std::string detail;
  auto expect = [&](const std::string& args, int want, bool check_schema) {
    CliResult r = run_cli(args);
    if (r.exit_code != want) {
      ok = false;
      if (detail.empty())
        detail = "`" + args + "` -> " + std::to_string(r.exit_code) + " (want " +
                 std::to_string(want) + ")";
    }
    if (check_schema) {
      std::string err;
      ordered_json doc;
      try {
        doc = ordered_json::parse(r.out);
      } catch (...) {
        ok = false;
        if (detail.empty()) detail = "`" + args + "`: unparsable JSON";
        return r;
      }
      if (!validate_against_schema(g_schema, doc, &err)) {
        ok = false;
        if (detail.empty()) detail = "`" + args + "`: schema violation " + err;
      }
    }
    return r;
  };

  expect("verify lemma12 --ring 'Z/4' --ideal '(2)' --depth 6", 0, true);
  expect("parse --expr 'series(2,8)'", 0, true);
  expect("resolve --ring 'Z/4' --module 'quot((2))' --depth 6", 0, true);
  expect("gldim --ring 'prod(GF(2),GF(4))'", 0, true);
  CliResult pd = expect("pd --ring 'triv(Z/4, quot((2)))' --module 'pres([[(0,1)]])'", 0, true);
  if (pd.out.find("CertifiedInfinite") == std::string::npos) {
    ok = false;
    detail = "pd output lacks CertifiedInfinite";
  }
  expect("verify thm11-structure --ring 'GF(2)[x]/(x^2)'", 0, true);
  expect("verify thm13 --trials 20 --seed 0", 0, true);
  expect("verify ex23 --p 2 --dimE 2", 0, true);

  expect("parse --expr 'triv(Z/4'", 2, false);
  expect("verify thm11-part2 --p 2 --N 8 --Dg 7", 2, false);
  expect("pd --ring 'Z/1' --module 'free(1)'", 2, false);
  expect("bogus-subcommand", 2, false);
  expect("resolve --ring 'prod(Z/4,GF(2))' --module 'free(1)'", 2, false);

  expect("verify ex22 --p 2 --N 4", 3, true);
  expect("ideals --ring 'triv(Z/4,quot((2)))'", 3, true);

  expect("verify lemma12 --ring 'Z/4' --ideal '(2)' --budget 2", 1, false);

  report(10, ok, "CLI contract: exit codes 0/1/2/3 and schema-valid JSON", detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance_tests <cli-binary> <schema.json>\n";
    return 2;
  }
  g_cli = argv[1];
  {
    std::ifstream in(argv[2]);
    if (!in) {
      std::cerr << "cannot open schema " << argv[2] << "\n";
      return 2;
    }
    g_schema = ordered_json::parse(in);
  }

  Config cfg;
  try {
    criterion1(cfg);
    criterion2(cfg);
    criterion3(cfg);
    criterion4(cfg);
    criterion5(cfg);
    criterion6(cfg);
    criterion7(cfg);
    criterion8(cfg);
    criterion9(cfg);
    criterion10();
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 1;
  }

  if (g_failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " criteria failed" << std::endl;
  return 1;
}
