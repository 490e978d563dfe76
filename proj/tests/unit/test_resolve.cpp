#include <doctest.h>

#include "suite.hpp"
#include "trivext/resolution.hpp"

using namespace suite;

TEST_CASE("the residue field of Z/4 has the classical periodic resolution") {
  RingPtr R = ring("Z/4");
  ModuleSpec k = parse_module(R, "quot((2))");
  Resolution res = minimal_resolution(k, 6);
  CHECK(res.betti == std::vector<int64_t>{1, 1, 1, 1, 1, 1, 1});
  CHECK_FALSE(res.terminated);
  for (const auto& d : res.steps) {
    CHECK(d.rows == 1);
    CHECK(d.cols == 1);
    CHECK(d.at(0, 0).str() == "2");
  }
  PdVerdict v = pd_verdict(k, 6);
  REQUIRE(v.kind == PdVerdict::Kind::CertifiedInfinite);
  REQUIRE(v.periodic.has_value());
  CHECK(v.periodic->offset == 1);
  CHECK(v.periodic->period == 1);
}

TEST_CASE("free modules terminate immediately") {
  RingPtr R = ring("triv(Z/4,quot((2)))");
  Resolution res = minimal_resolution(ModuleSpec::free_module(R, 2), 6);
  CHECK(res.betti == std::vector<int64_t>{2});
  CHECK(res.terminated);
  CHECK(res.steps.empty());
  CHECK(pd_verdict(ModuleSpec::free_module(R, 3), 6) == PdVerdict::finite(0));
}

TEST_CASE("the zero extension over Z/4 x Z/2 doubles its betti numbers") {
  RingPtr R = ring("triv(Z/4,quot((2)))");
  ModuleSpec zext = distinguished_module(R, DistKind::ZeroExt);
  Resolution res = minimal_resolution(zext, 4);
  CHECK(res.betti == std::vector<int64_t>{1, 2, 4, 8, 16});
  CHECK_FALSE(res.terminated);
  CHECK(pd_verdict(zext, 6).kind == PdVerdict::Kind::CertifiedInfinite);
  CHECK(pd_verdict(distinguished_module(R, DistKind::IExt), 6).kind ==
        PdVerdict::Kind::CertifiedInfinite);
}

TEST_CASE("resolution invariants: composites vanish, differentials sit in m") {
  RingPtr R = ring("triv(GF(2)[x]/(x^2),quot((x)))");
  ModuleSpec zext = distinguished_module(R, DistKind::ZeroExt);
  Resolution res = minimal_resolution(zext, 4);
  CHECK(res.minimal);
  const RingTable& t = R->table();
  for (const auto& d : res.steps)
    for (const auto& e : d.entries) CHECK_FALSE(t.unit(t.index(e.enc())));
  for (size_t i = 0; i + 1 < res.steps.size(); ++i) {
    const auto& a = res.steps[i];
    const auto& b = res.steps[i + 1];
    REQUIRE(a.cols == b.rows);
    for (int64_t r = 0; r < a.rows; ++r)
      for (int64_t c = 0; c < b.cols; ++c) {
        RingElement acc(R, R->zero());
        for (int64_t k = 0; k < a.cols; ++k) acc = acc + a.at(r, k) * b.at(k, c);
        CHECK(acc.is_zero());
      }
  }
}

TEST_CASE("pd_verdict requires a local ring") {
  RingPtr P = ring("prod(Z/4,GF(2))");
  CHECK_THROWS_AS(pd_verdict(ModuleSpec::free_module(P, 1), 6), Error);
}

TEST_CASE("pd over products decomposes through the factor idempotents") {
  RingPtr P = ring("prod(Z/4,GF(2))");
  SUBCASE("GF(2) on the Z/4 side forces infinity") {
    ModuleSpec M = parse_module(P, "pres([[(2,0)]])");
    CHECK(pd_over_product(M, 6).kind == PdVerdict::Kind::CertifiedInfinite);
  }
  SUBCASE("free modules have verdict Finite(0)") {
    CHECK(pd_over_product(ModuleSpec::free_module(P, 2), 6) == PdVerdict::finite(0));
  }
  SUBCASE("0 x k over a product of fields is free on each factor") {
    RingPtr F = ring("prod(GF(2),GF(2))");
    ModuleSpec M = parse_module(F, "pres([[(1,0)]])");
    CHECK(pd_over_product(M, 6) == PdVerdict::finite(0));
  }
}

TEST_CASE("global dimension probe") {
  SUBCASE("products of fields are globally trivial") {
    auto rep = global_dim_probe(ring("prod(GF(2),GF(4))"), 6);
    CHECK(rep.verdict == PdVerdict::finite(0));
    for (const auto& f : rep.factors) CHECK(f.is_field);
  }
  SUBCASE("the ex22 ring has infinite global dimension") {
    auto rep = global_dim_probe(ring("triv(GF(2)[x]/(x^4),quot((x)))"), 6);
    CHECK(rep.verdict.kind == PdVerdict::Kind::CertifiedInfinite);
  }
  SUBCASE("Z/4 via the periodic resolution of its residue field") {
    auto rep = global_dim_probe(ring("Z/4"), 6);
    REQUIRE(rep.verdict.kind == PdVerdict::Kind::CertifiedInfinite);
    REQUIRE(rep.verdict.periodic.has_value());
    CHECK(rep.verdict.periodic->offset == 1);
    CHECK(rep.verdict.periodic->period == 1);
  }
}

TEST_CASE("isomorphic modules receive identical verdicts") {
  RingPtr R = ring("triv(Z/4,quot((2)))");
  ModuleSpec a = parse_module(R, "pres([[(2,0),(0,1)]])");
  ModuleSpec b = parse_module(R, "pres([[(0,1),(2,0)]])");
  REQUIRE(modules_isomorphic(a, b).has_value());
  CHECK(pd_verdict(a, 6) == pd_verdict(b, 6));
}

TEST_CASE("pd of a direct sum is the max of the parts when both are finite") {
  Config cfg;
  Lcg rng(17, cfg);
  RingPtr R = ring("Z/4");
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto random_module = [&]() {
      int64_t g = 1 + static_cast<int64_t>(rng.below(2));
      int64_t r = rng.below(3);
      std::vector<RingElement> es;
      for (int64_t i = 0; i < g * r; ++i) es.push_back(element_at(R, rng.below(4)));
      return ModuleSpec::presented(PresentationMatrix::make(R, g, r, es));
    };
    ModuleSpec M = random_module(), N = random_module();
    PdVerdict vm = pd_verdict(M, 6), vn = pd_verdict(N, 6);
    PdVerdict vs = pd_verdict(direct_sum(M, N), 6);
    if (vm.kind == PdVerdict::Kind::Finite && vn.kind == PdVerdict::Kind::Finite) {
      CHECK(vs == PdVerdict::finite(std::max(vm.k, vn.k)));
    } else {
      CHECK(vs.kind == PdVerdict::Kind::CertifiedInfinite);
    }
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("equation-style consistency: both distinguished modules are infinite") {
  for (const char* name : {"triv(Z/4,quot((2)))", "triv(GF(2)[x]/(x^2),quot((x)))",
                           "triv(GF(2)[x]/(x^4),quot((x)))"}) {
    RingPtr R = ring(name);
    ModuleSpec iext = distinguished_module(R, DistKind::IExt);
    ModuleSpec quotient = to_presented(iext);
    // R/(I x A/I): quotient of R by the same generators
    std::vector<RingElement> rels;
    for (const auto& g : iext.sub_gens) rels.push_back(g[0]);
    ModuleSpec rmod = ModuleSpec::presented(
        PresentationMatrix::make(R, 1, static_cast<int64_t>(rels.size()), rels));
    CHECK(pd_verdict(iext, 6).kind == PdVerdict::Kind::CertifiedInfinite);
    CHECK(pd_verdict(rmod, 6).kind == PdVerdict::Kind::CertifiedInfinite);
  }
}

TEST_CASE("canonical matrix form sorts columns then rows") {
  RingPtr R = ring("Z/4");
  ModuleSpec a = parse_module(R, "pres([[2,0],[0,2]])");
  ModuleSpec b = parse_module(R, "pres([[0,2],[2,0]])");
  CHECK(canonical_matrix_form(a.pres) == canonical_matrix_form(b.pres));
  ModuleSpec c = parse_module(R, "pres([[2,2],[0,2]])");
  CHECK(canonical_matrix_form(a.pres) != canonical_matrix_form(c.pres));
}
