#pragma once

#include <string>
#include <vector>

#include "trivext/module.hpp"
#include "trivext/ring.hpp"

namespace trivext {

// Recursive-descent parser for ring/module/element expressions:
//
//   ring   := "Z/" INT | "GF(" INT ")" | "GF(" INT ")[x]/(" poly ")"
//           | "triv(" ring "," module ")" | "prod(" ring ("," ring)+ ")"
//           | "series(" INT "," INT ")"
//   module := "quot(" ideal ")" | "free(" INT ")" | "pres(" matrix ")"
//   ideal  := "(" elem ("," elem)* ")"
//   matrix := "[" row ("," row)* "]",  row := "[" elem ("," elem)* "]"
//   poly   := term ("+" term)*,  term := INT | INT "*" XP | XP,  XP := "x" ("^" INT)?
//   elem   := poly | "(" elem ("," elem)* ")" | "[" elem ("," elem)* "]"
//
// GF accepts prime powers: GF(p^k) elaborates to GF(p)[x]/(f) for the
// lexicographically smallest monic irreducible f of degree k.
//
// Canonical forms round-trip: parse(d.to_string()) == d for every
// grammar-expressible descriptor, and parse_element(R, R.render(e)) == e.

RingDescriptor parse_ring_descriptor(const std::string& text);
RingPtr parse_ring(const std::string& text, const Config& cfg = Config{});

RingElement parse_element(const RingPtr& R, const std::string& text);
std::vector<RingElement> parse_ideal_gens(const RingPtr& R, const std::string& text);
ModuleSpec parse_module(const RingPtr& R, const std::string& text);

}  // namespace trivext
