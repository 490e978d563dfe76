#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trivext/module.hpp"

namespace trivext {

// Chain of minimal presentation matrices d_i : R^{b_i} -> R^{b_{i-1}} with
// d_i ∘ d_{i+1} = 0; betti[i] = b_i. `terminated` means the last computed
// syzygy module was zero, so the chain is a complete free resolution.
struct Resolution {
  ModuleSpec module;
  std::vector<PresentationMatrix> steps;  // d_1, d_2, ...
  std::vector<int64_t> betti;             // b_0, b_1, ...
  bool minimal = true;
  bool terminated = false;
  int depth_reached = 0;
};

struct PeriodCertificate {
  int offset = 0;
  int period = 0;
};

struct PdVerdict {
  enum class Kind { Finite, CertifiedInfinite, Unknown };
  Kind kind = Kind::Unknown;
  int64_t k = 0;                 // Finite(k)
  std::string reason;            // NonFreeOverArtinianLocal | PeriodicSyzygy
  std::optional<PeriodCertificate> periodic;
  int64_t lower_bound = 0;       // Unknown(lower_bound)

  static PdVerdict finite(int64_t k);
  static PdVerdict infinite_nonfree();
  static PdVerdict infinite_periodic(int offset, int period);
  static PdVerdict unknown(int64_t lower_bound);
  bool operator==(const PdVerdict& o) const;
  std::string str() const;
};

// Minimal free resolution over a finite local ring to the given depth;
// generators chosen by minimal_generators, syzygies by the structured solver,
// stopping early when a syzygy module vanishes.
Resolution minimal_resolution(const ModuleSpec& M, int depth, const Config& cfg = Config{});

// Projective-dimension verdict over a finite local (hence Artinian) ring:
// Finite(0) exactly when M is free; otherwise CertifiedInfinite, justified by
// the Artinian-local rule (finite pd => free) and cross-checked by depth-D
// non-termination. A PeriodicSyzygy certificate is attached when two
// canonicalized differentials coincide.
PdVerdict pd_verdict(const ModuleSpec& M, int depth, const Config& cfg = Config{});

// Decomposes a finite ring into local factors via its primitive idempotents
// and combines the factor verdicts (max of finite; infinite dominates).
PdVerdict pd_over_product(const ModuleSpec& M, int depth, const Config& cfg = Config{});

struct GlobalDimFactor {
  RingDescriptor factor;
  Enc idempotent;
  uint64_t cardinality = 0;
  bool is_field = false;
  PdVerdict residue_pd;
};

struct GlobalDimReport {
  PdVerdict verdict;  // Finite(0) iff every local factor is a field
  std::vector<GlobalDimFactor> factors;
};

GlobalDimReport global_dim_probe(const RingPtr& R, int depth, const Config& cfg = Config{});

// Canonical form used by the periodicity detector: columns sorted
// lexicographically by encoding, then rows likewise.
std::vector<Enc> canonical_matrix_form(const PresentationMatrix& m);

}  // namespace trivext
