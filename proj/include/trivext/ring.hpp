#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trivext/config.hpp"
#include "trivext/descriptor.hpp"
#include "trivext/encoding.hpp"
#include "trivext/errors.hpp"

namespace trivext {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct Cardinality {
  bool finite = true;
  uint64_t count = 0;
  static Cardinality of(uint64_t n) { return {true, n}; }
  static Cardinality infinite_truncated() { return {false, 0}; }
};

struct LocalityInfo {
  bool computed = false;
  bool is_local = false;
  std::vector<Enc> max_ideal_gens;          // minimal generating set of the maximal ideal
  std::optional<RingDescriptor> residue_field;
  uint64_t residue_card = 0;
};

// Operation tables for a finite ring, indexed by enumeration order. Built at
// construction for rings below the table cutoff; all heavy machinery
// (syzygies, closures, resolutions) runs on these indices.
struct RingTable {
  uint32_t q = 0;
  std::vector<Enc> elems;                      // index -> encoding
  std::unordered_map<Enc, uint32_t, EncHash> index_of;
  std::vector<uint16_t> add_t, mul_t;          // q*q, row-major
  std::vector<uint16_t> neg_t;
  std::vector<int32_t> inv_t;                  // -1 when not a unit
  std::vector<uint8_t> unit_t;
  std::vector<std::vector<int64_t>> coords;    // additive coordinates per element
  uint32_t zero = 0, one = 0;

  uint16_t add(uint32_t i, uint32_t j) const { return add_t[i * q + j]; }
  uint16_t mul(uint32_t i, uint32_t j) const { return mul_t[i * q + j]; }
  uint16_t neg(uint32_t i) const { return neg_t[i]; }
  bool unit(uint32_t i) const { return unit_t[i] != 0; }
  uint16_t sub(uint32_t i, uint32_t j) const { return add_t[i * q + neg_t[j]]; }
  uint32_t index(const Enc& e) const;
};

// Abstract commutative ring with canonical element encodings and an additive
// coordinate system (the additive group is the product of Z/d_i over
// coord_moduli, and to_coords/from_coords are inverse bijections).
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;

  const RingDescriptor& desc() const { return desc_; }
  Cardinality cardinality() const { return card_; }
  bool finite() const { return card_.finite; }
  uint64_t size() const;  // throws NotFinite
  const LocalityInfo& locality() const { return locality_; }

  int64_t enc_len() const { return enc_len_; }
  Enc zero() const { return Enc(static_cast<size_t>(enc_len_), 0); }
  const Enc& one() const { return one_; }
  bool is_zero(const Enc& e) const;

  virtual Enc add(const Enc& a, const Enc& b) const = 0;
  virtual Enc neg(const Enc& a) const = 0;
  virtual Enc mul(const Enc& a, const Enc& b) const = 0;
  Enc sub(const Enc& a, const Enc& b) const { return add(a, neg(b)); }
  virtual bool is_unit(const Enc& a) const = 0;
  virtual std::optional<Enc> inverse(const Enc& a) const = 0;
  // Injectivity of multiplication. For SeriesTrunc this is a symbolic
  // judgment about the untruncated domain (nonzero <=> regular), not a fact
  // about truncated arithmetic.
  virtual bool is_regular(const Enc& a) const;

  const std::vector<int64_t>& coord_moduli() const { return coord_moduli_; }
  virtual std::vector<int64_t> to_coords(const Enc& e) const = 0;
  virtual Enc from_coords(const std::vector<int64_t>& c) const = 0;

  // Deterministic enumeration of a finite ring: index i maps to the element
  // whose coordinate vector is the mixed-radix expansion of i (last
  // coordinate fastest).
  Enc element_at(uint64_t i) const;

  std::string render(const Enc& e) const { return desc_.render_elem(e); }

  bool has_table() const { return table_ != nullptr; }
  const RingTable& table() const;

  // Same descriptor <=> elements interoperate.
  bool same_ring(const Ring& o) const { return this == &o || desc_ == o.desc_; }

  // Product rings expose their factor handles; empty for every other kind.
  virtual std::vector<RingPtr> product_factors() const { return {}; }

  // Post-construction step run by the ring factories: enumerates, builds
  // tables, verifies axioms, analyzes locality.
  void finalize(const Config& cfg);

 protected:
  Ring() = default;
  RingDescriptor desc_;
  Cardinality card_;
  int64_t enc_len_ = 0;
  Enc one_;
  std::vector<int64_t> coord_moduli_;
  LocalityInfo locality_;
  std::shared_ptr<RingTable> table_;
};

// A ring element tagged with its ring. Arithmetic re-canonicalizes and
// throws RingMismatch across distinct descriptors.
class RingElement {
 public:
  RingElement() = default;
  RingElement(RingPtr ring, Enc enc) : ring_(std::move(ring)), enc_(std::move(enc)) {}

  const RingPtr& ring() const { return ring_; }
  const Enc& enc() const { return enc_; }
  bool is_zero() const { return ring_->is_zero(enc_); }
  std::string str() const { return ring_->render(enc_); }

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement operator-() const { return {ring_, ring_->neg(enc_)}; }
  bool operator==(const RingElement& o) const {
    return ring_->same_ring(*o.ring_) && enc_ == o.enc_;
  }
  bool operator!=(const RingElement& o) const { return !(*this == o); }

 private:
  RingPtr ring_;
  Enc enc_;
};

enum class ArithOp { Add, Sub, Mul, Neg };
RingElement arith(ArithOp op, const RingElement& x, const RingElement& y);

// Factory: validates descriptor invariants, constructs the ring, computes
// cardinality and locality, and exhaustively verifies the ring axioms for
// finite rings below cfg.axiom_check_cutoff.
RingPtr construct_ring(const RingDescriptor& d, const Config& cfg = Config{});

// The eRe slice of a finite ring at an idempotent e (a ring with identity e).
RingPtr make_corner_ring(const RingPtr& parent, const Enc& idem, const Config& cfg);

bool is_unit(const RingElement& x);
RingElement inverse(const RingElement& x);  // throws NotAUnit
bool is_regular(const RingElement& x);

// All e with e*e = e, by enumeration; throws NotFinite.
std::vector<RingElement> idempotents(const RingPtr& R);

uint64_t ring_size(const RingPtr& R);                  // throws NotFinite
RingElement element_at(const RingPtr& R, uint64_t i);
std::vector<RingElement> all_elements(const RingPtr& R);

struct LocalFactor {
  RingPtr factor;
  RingElement idempotent;  // embedding idempotent in the parent ring
};

// Complete orthogonal set of primitive idempotents with the corresponding
// local factor rings; the product of the factors is isomorphic to R.
std::vector<LocalFactor> decompose_into_local_factors(const RingPtr& R,
                                                      const Config& cfg = Config{});

// Canonical field descriptor of order q (prime power), used for residue
// fields: GF(p) when q is prime, otherwise GF(p)[x]/(f) for the
// lexicographically smallest monic irreducible f.
RingDescriptor canonical_field_descriptor(uint64_t q);

// Lexicographically smallest monic irreducible polynomial of degree k over
// GF(p), coefficients ascending (length k+1).
Enc smallest_irreducible_poly(int64_t p, int64_t k);

}  // namespace trivext
