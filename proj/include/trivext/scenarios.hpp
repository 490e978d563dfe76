#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trivext/module.hpp"
#include "trivext/resolution.hpp"

namespace trivext {

struct CheckResult {
  enum class Status { Pass, Fail, RecordedDiscrepancy };
  std::string name;
  std::string verifies;  // the identity or property being checked
  Status status = Status::Pass;
  std::string witness;   // counterexample or note

  static CheckResult pass(std::string name, std::string verifies, std::string note = "");
  static CheckResult fail(std::string name, std::string verifies, std::string witness);
  static CheckResult discrepancy(std::string name, std::string verifies, std::string witness);
};

struct ScenarioReport {
  std::string scenario_id;
  std::vector<std::pair<std::string, std::string>> instance;  // ordered key/value
  std::vector<CheckResult> checks;
  double elapsed_ms = 0;

  bool all_pass() const;
  bool has_failure() const;
  bool has_discrepancy() const;
};

// R = A ∝ A/M, the idealization of a local ring by its residue field.
RingPtr residue_idealization(const RingPtr& A, const Config& cfg = Config{});

// For R = A ∝ A/I (I proper): the quotient R/(I ∝ A/I) is not projective and
// I ∝ A/I is not generated by an idempotent; Ker(u) splits as
// (U ∝ (A/I)^Δ) ⊕ (I ∝ A/I); the induced isomorphism
// I ∝ A/I ≅ (R^Δ/(U ∝ (A/I)^Δ)) ⊕ (R/(I ∝ A/I)); both distinguished modules
// have certified-infinite projective dimension; Ker(z -> z(0,1)) = I ∝ A/I.
ScenarioReport lemma12_scenario(const RingPtr& A, const std::vector<RingElement>& ideal_gens,
                                int depth, const Config& cfg = Config{});

// Replays the kernel chain H1 = Ker(u0), H2 = Ker(u1) = U ∝ (A/M)^m,
// H3 = Ker(u2) ≅ (V ∝ (A/M)^p) ⊕ (M^m ∝ (A/M)^m) for a module H0 over
// R = A ∝ A/M with A finite local.
ScenarioReport thm11_structure_scenario(const RingPtr& A, const ModuleSpec& H0, int depth,
                                        const Config& cfg = Config{});

// Bounded-window check over R = series(p,N) ∝ A/(x): pairs (a,e) with
// deg a <= Dg satisfy (a,e)(x,0) = 0 only for a = 0, so the kernel of
// multiplication by (x,0) meets the window in 0 ∝ A/M = R(0,1).
// Requires Dg + 1 < N (PrecisionTooSmall otherwise).
ScenarioReport thm11_part2_bounded(int64_t p, int64_t N, int64_t Dg,
                                   const Config& cfg = Config{});

// Seeded random modules over A x B: the decomposition verdict equals the
// max of independently computed component verdicts.
ScenarioReport thm13_product_scenario(const RingPtr& A, const RingPtr& B, int trials,
                                      uint64_t seed, int depth, const Config& cfg = Config{});

// Ideal census of GF(p)[x]/(x^N) ∝ A/(x): every ideal is tested against the
// two-generator normal form (a,0), (0,1) (discrepancies recorded, never
// fatal), and the ring has certified-infinite global dimension.
ScenarioReport ex22_scenario(int64_t p, int64_t N, int depth, const Config& cfg = Config{});

// A = GF(p) ∝ E: the maximal ideal 0 ∝ E squares to zero and consists of
// zero-divisors; a sample kernel chain over R = A ∝ A/M satisfies
// Ker(v) = V ∝ (A/M)^p with V ⊆ M^p; no nonzero submodule of M^n is free.
ScenarioReport ex23_scenario(int64_t p, int64_t dimE, int depth, const Config& cfg = Config{});

}  // namespace trivext
