#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "trivext/abelian.hpp"
#include "trivext/ring.hpp"

namespace trivext {

// The module side E of an idealization A ∝ E, realized as A^rank / <rels>.
//
// Over a finite base the cosets are tabulated: an element is encoded by the
// lexicographically least representative of its coset. Over a truncated
// series base only quotients by monomial ideals (x^k) (and free modules) are
// supported; a residue keeps its first k coefficients.
class ExtModule {
 public:
  ExtModule(RingPtr base, ModuleShape shape, const Config& cfg);

  const RingPtr& base() const { return base_; }
  const ModuleShape& shape() const { return shape_; }
  int64_t rep_len() const { return rep_len_; }
  bool finite() const { return finite_; }
  uint64_t size() const;  // throws NotFinite for free modules over series

  Enc zero() const { return Enc(static_cast<size_t>(rep_len_), 0); }
  Enc one_rep() const;  // representative of 1 (rank-1 quotients only)
  Enc add(const Enc& a, const Enc& b) const;
  Enc neg(const Enc& a) const;
  Enc scalar(const Enc& a, const Enc& e) const;  // a in base, e in E

  // Canonical representative of a raw vector in A^rank (finite base).
  Enc canonicalize(const Enc& raw) const;

  const std::vector<Enc>& reps() const;  // finite case, deterministic order
  const std::vector<int64_t>& coord_moduli() const { return moduli_; }
  std::vector<int64_t> to_coords(const Enc& e) const;
  Enc from_coords(const std::vector<int64_t>& c) const;

  // Generators of E as an A-module (minimal over a local base).
  std::vector<Enc> module_generators() const;

 private:
  RingPtr base_;
  ModuleShape shape_;
  bool finite_ = true;
  bool series_quot_ = false;  // series base, quotient by (x^k)
  int64_t series_k_ = 0;
  int64_t rep_len_ = 0;
  std::vector<Enc> reps_;
  std::unordered_map<Enc, Enc, EncHash> canon_;  // raw vector -> representative
  AbelianBasis basis_;
  std::vector<int64_t> moduli_;
};

// R = A ∝ E with multiplication (a,e)(a',e') = (aa', ae' + a'e).
class TrivialExtRing final : public Ring {
 public:
  TrivialExtRing(RingDescriptor d, RingPtr base, ExtModule ext, const Config& cfg);

  const RingPtr& base() const { return base_; }
  const ExtModule& ext() const { return ext_; }

  Enc base_part(const Enc& e) const {
    return enc_slice(e, 0, static_cast<size_t>(base_->enc_len()));
  }
  Enc mod_part(const Enc& e) const {
    return enc_slice(e, static_cast<size_t>(base_->enc_len()),
                     static_cast<size_t>(ext_.rep_len()));
  }
  Enc join(const Enc& a, const Enc& e) const { return enc_concat(a, e); }

  Enc add(const Enc& a, const Enc& b) const override;
  Enc neg(const Enc& a) const override;
  Enc mul(const Enc& a, const Enc& b) const override;
  bool is_unit(const Enc& a) const override;
  std::optional<Enc> inverse(const Enc& a) const override;
  bool is_regular(const Enc& a) const override;
  std::vector<int64_t> to_coords(const Enc& e) const override;
  Enc from_coords(const std::vector<int64_t>& c) const override;

 private:
  RingPtr base_;
  ExtModule ext_;
};

// Builds A ∝ (A^rank/<rels>); locality is determined by enumeration for
// finite instances and structurally over a series base.
RingPtr triv_extend_shape(const RingPtr& A, ModuleShape shape, const Config& cfg = Config{});

// The pair (I, E') of an ideal candidate J = I ∝ E' in a trivial extension.
struct IdealForm {
  std::vector<Enc> base_ideal_gens;  // generators of I inside the base ring
  std::vector<Enc> submodule_gens;   // generators of E' inside E
};

struct IdealProbeReport {
  std::vector<Enc> gens;             // the probe's input generators
  std::vector<Enc> ideal_elements;   // the full ideal, sorted
  std::optional<bool> has_pair_form; // empty for rings that are not idealizations
  std::optional<IdealForm> pair;
  std::optional<Enc> counterexample; // element of I ∝ E' missing from J
};

// Enumerates the ideal generated by gens and tests the pair-form claim
// J = I ∝ E' with I the projection and E' = {e : (0,e) in J}. The claim is
// probed, never asserted: counterexamples are reported verbatim.
IdealProbeReport ideal_pair_form_probe(const RingPtr& R, const std::vector<RingElement>& gens,
                                       const Config& cfg = Config{});

// Every distinct ideal of a finite ring (by closure growth from generator
// sets), each with its pair-form probe when R is a trivial extension.
std::vector<IdealProbeReport> enumerate_ideals(const RingPtr& R, const Config& cfg = Config{});

// Elements of the ideal generated by gens inside R (module closure in R^1).
std::vector<Enc> ideal_elements(const RingPtr& R, const std::vector<Enc>& gens,
                                const Config& cfg = Config{});

}  // namespace trivext
