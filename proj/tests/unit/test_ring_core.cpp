#include <doctest.h>

#include <algorithm>
#include <set>

#include "suite.hpp"
#include "trivext/trivial_ext.hpp"

using namespace suite;

TEST_CASE("Z/4 construction: cardinality, locality, residue field") {
  RingPtr R = ring("Z/4");
  CHECK(R->size() == 4);
  CHECK(R->locality().is_local);
  REQUIRE(R->locality().max_ideal_gens.size() == 1);
  CHECK(R->render(R->locality().max_ideal_gens[0]) == "2");
  CHECK(R->locality().residue_field->to_string() == "GF(2)");
}

TEST_CASE("GF(2)[x]/(x^4): 16 elements, local with maximal ideal (x)") {
  RingPtr R = ring("GF(2)[x]/(x^4)");
  CHECK(R->size() == 16);
  CHECK(R->locality().is_local);
  REQUIRE(R->locality().max_ideal_gens.size() == 1);
  CHECK(R->render(R->locality().max_ideal_gens[0]) == "x");
  CHECK(R->locality().residue_field->to_string() == "GF(2)");
}

TEST_CASE("products of nonzero rings are never local") {
  RingPtr R = ring("prod(Z/4,GF(2))");
  CHECK(R->size() == 8);
  CHECK_FALSE(R->locality().is_local);
}

TEST_CASE("invalid descriptors are rejected") {
  CHECK_THROWS_AS(ring("Z/1"), Error);
  CHECK_THROWS_AS(ring("GF(6)"), Error);          // not a prime power
  CHECK_THROWS_AS(ring("GF(2)[x]/(1)"), Error);   // constant modulus
  CHECK_THROWS_AS(construct_ring(RingDescriptor::product({})), Error);
  CHECK_THROWS_AS(construct_ring(RingDescriptor::series(4, 3)), Error);
}

TEST_CASE("trivial extension multiplication follows the idealization law") {
  RingPtr R = ring("triv(Z/4,quot((2)))");
  CHECK((el(R, "(3,1)") * el(R, "(2,1)")).str() == "(2,1)");
  CHECK((el(R, "(2,0)") * el(R, "(0,1)")).str() == "(0,0)");
}

TEST_CASE("telescoping product in a truncated polynomial ring") {
  RingPtr R = ring("GF(2)[x]/(x^4)");
  CHECK((el(R, "1+x") * el(R, "1+x+x^2+x^3")).str() == "1");
}

TEST_CASE("arith rejects mixed rings") {
  RingPtr a = ring("Z/4");
  RingPtr b = ring("GF(2)");
  CHECK_THROWS_AS(el(a, "1") + el(b, "1"), Error);
}

TEST_CASE("units and inverses") {
  RingPtr z4 = ring("Z/4");
  CHECK(is_unit(el(z4, "3")));
  CHECK(inverse(el(z4, "3")).str() == "3");

  RingPtr pq = ring("GF(2)[x]/(x^4)");
  CHECK_FALSE(is_unit(el(pq, "x")));
  CHECK_THROWS_AS(inverse(el(pq, "x")), Error);

  RingPtr s = ring("series(2,4)");
  CHECK(inverse(el(s, "1+x")).str() == "1+x+x^2+x^3");
}

TEST_CASE("is_unit agrees with the existence of a multiplicative inverse") {
  for (const auto& name : finite_rings()) {
    RingPtr R = ring(name);
    uint64_t q = R->size();
    for (uint64_t i = 0; i < q; ++i) {
      Enc x = R->element_at(i);
      bool has_inverse = false;
      for (uint64_t j = 0; j < q && !has_inverse; ++j)
        if (R->mul(x, R->element_at(j)) == R->one()) has_inverse = true;
      CHECK(R->is_unit(x) == has_inverse);
    }
  }
}

TEST_CASE("regularity: zero divisors and the series domain judgment") {
  RingPtr z4 = ring("Z/4");
  CHECK_FALSE(is_regular(el(z4, "2")));
  RingPtr s = ring("series(2,8)");
  CHECK(is_regular(el(s, "x")));
  CHECK_FALSE(is_regular(el(s, "0")));
}

TEST_CASE("on finite rings every regular element is a unit") {
  for (const auto& name : finite_rings()) {
    RingPtr R = ring(name);
    uint64_t q = R->size();
    for (uint64_t i = 0; i < q; ++i) {
      Enc x = R->element_at(i);
      if (R->is_regular(x)) CHECK(R->is_unit(x));
    }
  }
}

TEST_CASE("idempotents by enumeration") {
  auto names = [](const RingPtr& R) {
    std::set<std::string> out;
    for (const auto& e : idempotents(R)) out.insert(e.str());
    return out;
  };
  CHECK(names(ring("Z/4")) == std::set<std::string>{"0", "1"});
  CHECK(names(ring("prod(Z/4,GF(2))")) ==
        std::set<std::string>{"(0,0)", "(1,1)", "(1,0)", "(0,1)"});
  CHECK(names(ring("triv(Z/4,quot((2)))")) == std::set<std::string>{"(0,0)", "(1,0)"});
}

TEST_CASE("element enumeration is deterministic, complete and duplicate-free") {
  RingPtr gf2 = ring("GF(2)");
  CHECK(element_at(gf2, 0).str() == "0");
  CHECK(element_at(gf2, 1).str() == "1");

  RingPtr R = ring("triv(Z/4,quot((2)))");
  auto all = all_elements(R);
  CHECK(all.size() == 8);
  std::set<Enc> seen;
  for (const auto& e : all) seen.insert(e.enc());
  CHECK(seen.size() == 8);

  // product elements in lexicographic component order
  RingPtr P = ring("prod(Z/4,GF(2))");
  auto pe = all_elements(P);
  CHECK(pe.size() == 8);
  CHECK(pe[0].str() == "(0,0)");
  CHECK(pe[1].str() == "(0,1)");
  CHECK(pe[2].str() == "(1,0)");
  CHECK(pe.back().str() == "(3,1)");
}

TEST_CASE("enumeration of an infinite ring is refused") {
  RingPtr s = ring("series(2,4)");
  CHECK_THROWS_AS(ring_size(s), Error);
  CHECK_THROWS_AS(idempotents(s), Error);
}

TEST_CASE("local factor decomposition") {
  SUBCASE("product of two local rings") {
    auto fs = decompose_into_local_factors(ring("prod(Z/4,GF(2))"));
    REQUIRE(fs.size() == 2);
    std::multiset<uint64_t> cards;
    std::set<std::string> idems;
    for (const auto& f : fs) {
      cards.insert(f.factor->size());
      idems.insert(f.idempotent.str());
      CHECK(f.factor->locality().is_local);
    }
    CHECK(cards == std::multiset<uint64_t>{2, 4});
    CHECK(idems == std::set<std::string>{"(1,0)", "(0,1)"});
  }
  SUBCASE("a local ring decomposes trivially") {
    auto fs = decompose_into_local_factors(ring("Z/4"));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].factor->size() == 4);
    CHECK(fs[0].idempotent.str() == "1");
  }
  SUBCASE("three factors") {
    auto fs = decompose_into_local_factors(ring("prod(GF(2),GF(2),Z/4)"));
    CHECK(fs.size() == 3);
    uint64_t prod = 1;
    for (const auto& f : fs) prod *= f.factor->size();
    CHECK(prod == 16);
  }
  SUBCASE("CRT factors of Z/6 via corner rings") {
    auto fs = decompose_into_local_factors(ring("Z/6"));
    REQUIRE(fs.size() == 2);
    std::multiset<uint64_t> cards;
    for (const auto& f : fs) cards.insert(f.factor->size());
    CHECK(cards == std::multiset<uint64_t>{2, 3});
  }
  SUBCASE("idempotents are orthogonal, sum to 1, and factor sizes multiply up") {
    for (const char* name : {"prod(Z/4,GF(2))", "Z/6", "prod(GF(2),GF(2),Z/4)"}) {
      RingPtr R = ring(name);
      auto fs = decompose_into_local_factors(R);
      RingElement sum(R, R->zero());
      uint64_t prod = 1;
      for (size_t i = 0; i < fs.size(); ++i) {
        CHECK(fs[i].factor->locality().is_local);
        prod *= fs[i].factor->size();
        sum = sum + fs[i].idempotent;
        for (size_t j = i + 1; j < fs.size(); ++j)
          CHECK((fs[i].idempotent * fs[j].idempotent).is_zero());
      }
      CHECK(sum == RingElement(R, R->one()));
      CHECK(prod == R->size());
    }
  }
}

TEST_CASE("idealization multiplication law holds exhaustively on small rings") {
  for (const char* name : {"triv(Z/4,quot((2)))", "triv(GF(2),free(2))",
                           "triv(GF(2)[x]/(x^2),quot((x)))"}) {
    RingPtr R = ring(name);
    const auto& TR = dynamic_cast<const TrivialExtRing&>(*R);
    const RingPtr& A = TR.base();
    REQUIRE(R->size() <= 64);
    for (uint64_t i = 0; i < R->size(); ++i) {
      Enc z = R->element_at(i);
      for (uint64_t j = 0; j < R->size(); ++j) {
        Enc w = R->element_at(j);
        Enc a1 = TR.base_part(z), e1 = TR.mod_part(z);
        Enc a2 = TR.base_part(w), e2 = TR.mod_part(w);
        Enc expect = TR.join(
            A->mul(a1, a2),
            TR.ext().add(TR.ext().scalar(a1, e2), TR.ext().scalar(a2, e1)));
        CHECK(R->mul(z, w) == expect);
      }
    }
  }
}

TEST_CASE("series arithmetic agrees with the polynomial quotient on low degrees") {
  RingPtr s = ring("series(2,4)");
  RingPtr q = ring("GF(2)[x]/(x^4)");
  // encodings coincide: both are coefficient vectors of length 4
  for (uint64_t i = 0; i < 16; ++i) {
    Enc a = q->element_at(i);
    for (uint64_t j = 0; j < 16; ++j) {
      Enc b = q->element_at(j);
      CHECK(s->add(a, b) == q->add(a, b));
      CHECK(s->mul(a, b) == q->mul(a, b));
    }
  }
  // the unit/regularity semantics differ: x is regular only in the domain
  Enc x = q->zero();
  x[1] = 1;
  CHECK(s->is_regular(x));
  CHECK_FALSE(q->is_regular(x));
}

TEST_CASE("maximal ideal generators span exactly the non-unit set") {
  for (const auto& name : finite_rings()) {
    RingPtr R = ring(name);
    if (!R->locality().is_local) continue;
    std::set<Enc> nonunits;
    for (uint64_t i = 0; i < R->size(); ++i) {
      Enc x = R->element_at(i);
      if (!R->is_unit(x)) nonunits.insert(x);
    }
    std::vector<Enc> span = ideal_elements(R, R->locality().max_ideal_gens);
    CHECK(std::set<Enc>(span.begin(), span.end()) == nonunits);
  }
}

TEST_CASE("residue field descriptors really are fields") {
  for (const auto& name : finite_rings()) {
    RingPtr R = ring(name);
    if (!R->locality().is_local) continue;
    REQUIRE(R->locality().residue_field.has_value());
    RingPtr k = construct_ring(*R->locality().residue_field);
    CHECK(k->size() == R->locality().residue_card);
    for (uint64_t i = 1; i < k->size(); ++i) CHECK(k->is_unit(k->element_at(i)));
  }
}

TEST_CASE("canonical field descriptors") {
  CHECK(canonical_field_descriptor(2).to_string() == "GF(2)");
  CHECK(canonical_field_descriptor(4).to_string() == "GF(2)[x]/(1+x+x^2)");
  CHECK(smallest_irreducible_poly(2, 2) == Enc{1, 1, 1});
}
