#pragma once

#include <string>
#include <vector>

#include "trivext/module.hpp"
#include "trivext/parser.hpp"

namespace suite {

using namespace trivext;

inline RingPtr ring(const std::string& text) { return parse_ring(text); }

inline RingElement el(const RingPtr& R, const std::string& text) {
  return parse_element(R, text);
}

// finite rings exercised by the unit tests
inline const std::vector<std::string>& finite_rings() {
  static const std::vector<std::string> rings = {
      "Z/2",
      "Z/3",
      "Z/4",
      "Z/6",
      "Z/8",
      "GF(2)",
      "GF(3)",
      "GF(4)",
      "GF(2)[x]/(x^2)",
      "GF(2)[x]/(x^4)",
      "GF(3)[x]/(x^2)",
      "prod(Z/4,GF(2))",
      "triv(Z/4,quot((2)))",
      "triv(GF(2),free(1))",
      "triv(GF(2),free(2))",
      "triv(GF(2)[x]/(x^2),quot((x)))",
  };
  return rings;
}

// local rings of cardinality <= 16 for the oracle-equivalence sweeps
inline const std::vector<std::string>& local_rings_16() {
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

inline std::vector<IVec> span_of(const RingPtr& R, const std::vector<ModuleVec>& gens,
                                 int64_t ambient) {
  std::vector<IVec> ivecs;
  for (const auto& g : gens) ivecs.push_back(to_ivec(R->table(), g));
  return span_elements(R, ivecs, ambient, 1u << 22);
}

}  // namespace suite
