#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trivext/encoding.hpp"

namespace trivext {

// Shape of a finitely presented module over a base ring, as stored inside a
// ring descriptor: the module is A^rank / <rels>, each relation a flattened
// vector in A^rank. rels empty means the free module of the given rank.
struct ModuleShape {
  int64_t rank = 1;
  std::vector<Enc> rels;

  bool operator==(const ModuleShape& o) const {
    return rank == o.rank && rels == o.rels;
  }
};

// Structural description of a constructible ring. Equality is structural:
// Z/2 and GF(2) are isomorphic but distinct descriptors.
struct RingDescriptor {
  enum class Kind {
    ZMod,         // integers mod n, n >= 2
    PrimeField,   // GF(p), p prime
    PolyQuotient, // GF(p)[x]/(f), f monic nonconstant
    Product,      // direct product of >= 1 factors
    TrivialExt,   // base ring extended by a module (square-zero ideal)
    SeriesTrunc,  // truncated power series over GF(p), precision N
    Corner,       // eRe slice of a parent ring at an idempotent e (internal)
  };

  Kind kind = Kind::ZMod;
  int64_t n = 0;       // ZMod modulus | PrimeField/PolyQuotient/SeriesTrunc prime
  int64_t trunc = 0;   // SeriesTrunc precision
  Enc poly;            // PolyQuotient modulus coefficients, ascending, monic
  std::vector<RingDescriptor> children;  // Product factors | TrivialExt base | Corner parent
  ModuleShape mod;     // TrivialExt module shape
  Enc idem;            // Corner idempotent (encoding in the parent ring)

  static RingDescriptor zmod(int64_t n);
  static RingDescriptor gfp(int64_t p);
  static RingDescriptor poly_quotient(int64_t p, Enc modulus);
  static RingDescriptor product(std::vector<RingDescriptor> factors);
  static RingDescriptor trivial_ext(RingDescriptor base, ModuleShape mod);
  static RingDescriptor series(int64_t p, int64_t precision);
  static RingDescriptor corner(RingDescriptor parent, Enc idem);

  bool operator==(const RingDescriptor& o) const;
  bool operator!=(const RingDescriptor& o) const { return !(*this == o); }

  // Length of the canonical element encoding for this ring.
  int64_t enc_len() const;

  // Canonical text form; the expression parser accepts it back verbatim
  // (Corner descriptors are internal and do not round-trip).
  std::string to_string() const;

  // Render an element encoding in the input/report syntax.
  std::string render_elem(const Enc& e) const;
};

// Renders an element of the module A^rank/<rels> given its representative
// encoding (see TrivialExtRing for the representative conventions).
std::string render_module_rep(const RingDescriptor& base, const ModuleShape& shape,
                              const Enc& rep);

// Polynomial helper shared by descriptor printing and the parser: coefficients
// ascending, e.g. {1,0,1} -> "1+x^2".
std::string poly_to_string(const Enc& coeffs);

}  // namespace trivext
