#include <doctest.h>

#include "suite.hpp"
#include "trivext/config.hpp"

using namespace suite;

TEST_CASE("grammar examples") {
  RingDescriptor d = parse_ring_descriptor("triv(Z/4, quot((2)))");
  CHECK(d.kind == RingDescriptor::Kind::TrivialExt);
  CHECK(d.children[0] == RingDescriptor::zmod(4));
  REQUIRE(d.mod.rels.size() == 1);
  CHECK(d.mod.rels[0] == Enc{2});

  CHECK(parse_ring_descriptor("prod(Z/4, GF(2))").kind == RingDescriptor::Kind::Product);
  CHECK(parse_ring_descriptor("series(2,8)") == RingDescriptor::series(2, 8));
}

TEST_CASE("syntax errors carry position and expectation") {
  try {
    parse_ring_descriptor("triv(Z/4");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() >= 9);
    CHECK(e.expected().find(")") != std::string::npos);
    CHECK(e.expected().find(",") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_ring_descriptor("series(2"), SyntaxError);
  CHECK_THROWS_AS(parse_ring_descriptor("foo(3)"), SyntaxError);
  CHECK_THROWS_AS(parse_ring_descriptor("Z/4 trailing"), SyntaxError);
  CHECK_THROWS_AS(parse_ring_descriptor("prod(Z/4)"), SyntaxError);
}

TEST_CASE("prime powers in GF() elaborate to polynomial quotients") {
  CHECK(parse_ring_descriptor("GF(4)").to_string() == "GF(2)[x]/(1+x+x^2)");
  CHECK(parse_ring_descriptor("GF(9)").kind == RingDescriptor::Kind::PolyQuotient);
  CHECK(parse_ring_descriptor("GF(5)") == RingDescriptor::gfp(5));
}

TEST_CASE("parse after print is the identity on canonical forms") {
  for (const char* text : {
           "Z/4",
           "GF(2)",
           "GF(2)[x]/(1+x+x^2)",
           "GF(2)[x]/(x^4)",
           "series(2,8)",
           "prod(Z/4,GF(2))",
           "prod(GF(2),GF(2),Z/4)",
           "triv(Z/4,quot((2)))",
           "triv(GF(2),free(2))",
           "triv(GF(2)[x]/(x^2),quot((x)))",
           "triv(series(2,8),quot((x)))",
           "triv(triv(GF(2),free(2)),quot(((0,[1,0]),(0,[0,1]))))",
       }) {
    RingDescriptor d = parse_ring_descriptor(text);
    CHECK(parse_ring_descriptor(d.to_string()) == d);
    CHECK(parse_ring_descriptor(d.to_string()).to_string() == d.to_string());
  }
}

TEST_CASE("random descriptor round-trips") {
  Config cfg;
  Lcg rng(7, cfg);
  auto random_base = [&]() {
    switch (rng.below(4)) {
      case 0: return RingDescriptor::zmod(2 + static_cast<int64_t>(rng.below(7)));
      case 1: return RingDescriptor::gfp(rng.below(2) ? 2 : 3);
      case 2: {
        Enc f(1 + rng.below(3) + 1, 0);
        f.back() = 1;
        int64_t p = rng.below(2) ? 2 : 3;
        for (size_t i = 0; i + 1 < f.size(); ++i)
          f[i] = static_cast<int64_t>(rng.below(static_cast<uint64_t>(p)));
        if (f.size() < 2) f = Enc{0, 1};
        return RingDescriptor::poly_quotient(p, f);
      }
      default: return RingDescriptor::series(2, 2 + static_cast<int64_t>(rng.below(4)));
    }
  };
  for (int trial = 0; trial < 40; ++trial) {
    RingDescriptor d = random_base();
    if (rng.below(2)) {
      std::vector<RingDescriptor> fs{d, random_base()};
      d = RingDescriptor::product(fs);
    }
    CHECK(parse_ring_descriptor(d.to_string()) == d);
  }
}

TEST_CASE("element rendering round-trips through the parser") {
  for (const auto& name : finite_rings()) {
    RingPtr R = ring(name);
    if (R->size() > 64) continue;
    for (uint64_t i = 0; i < R->size(); ++i) {
      RingElement e = element_at(R, i);
      CHECK(parse_element(R, e.str()) == e);
    }
  }
}

TEST_CASE("module expressions") {
  RingPtr R = ring("triv(Z/4,quot((2)))");
  ModuleSpec m1 = parse_module(R, "pres([[(0,1)]])");
  CHECK(m1.kind == ModuleSpec::Kind::Presented);
  CHECK(m1.pres.rows == 1);
  CHECK(m1.pres.cols == 1);
  CHECK(m1.pres.at(0, 0).str() == "(0,1)");

  ModuleSpec m2 = parse_module(R, "free(2)");
  CHECK(m2.kind == ModuleSpec::Kind::Free);
  CHECK(m2.free_rank == 2);

  RingPtr A = ring("Z/4");
  ModuleSpec m3 = parse_module(A, "quot((2))");
  CHECK(m3.pres.rows == 1);
  CHECK(m3.pres.at(0, 0).str() == "2");

  CHECK_THROWS_AS(parse_module(A, "pres([[1],[1,2]])"), SyntaxError);
}

TEST_CASE("ideal generator lists") {
  RingPtr A = ring("GF(2)[x]/(x^4)");
  auto gens = parse_ideal_gens(A, "(x, x^2)");
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].str() == "x");
  CHECK(gens[1].str() == "x^2");
}

TEST_CASE("polynomial coefficients reduce into the base field") {
  RingPtr A = ring("GF(3)[x]/(x^2)");
  CHECK(el(A, "4+5*x").str() == "1+2*x");
  CHECK(el(A, "3").str() == "0");
}
