#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "trivext/ring.hpp"
#include "trivext/trivial_ext.hpp"
#include "trivext/zlin.hpp"

namespace trivext {

// Vector in R^n, the public form of a module element (for a Presented module
// this is the canonical coset representative in R^g).
using ModuleVec = std::vector<RingElement>;

// Index form of the same, over a table-backed ring.
using IVec = std::vector<uint16_t>;

struct IVecHash {
  size_t operator()(const IVec& v) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (uint16_t x : v) h ^= x + 0x9e3779b9ull + (h << 6) + (h >> 2);
    return h;
  }
};

// g x r matrix over R presenting coker(R^r -> R^g); columns are relations.
struct PresentationMatrix {
  RingPtr ring;
  int64_t rows = 0, cols = 0;
  std::vector<RingElement> entries;  // row-major

  const RingElement& at(int64_t i, int64_t j) const {
    return entries[static_cast<size_t>(i * cols + j)];
  }
  static PresentationMatrix make(RingPtr R, int64_t rows, int64_t cols,
                                 std::vector<RingElement> entries);
  static PresentationMatrix zero_free(RingPtr R, int64_t rank);  // n x 0
};

struct ModuleSpec {
  enum class Kind { Free, Presented, Submodule };
  Kind kind = Kind::Free;
  RingPtr ring;
  int64_t free_rank = 0;                 // Free
  PresentationMatrix pres;               // Presented
  int64_t ambient = 0;                   // Submodule
  std::vector<ModuleVec> sub_gens;       // Submodule

  static ModuleSpec free_module(RingPtr R, int64_t rank);
  static ModuleSpec presented(PresentationMatrix m);
  static ModuleSpec submodule(RingPtr R, int64_t ambient, std::vector<ModuleVec> gens);
};

// Working form: the module (span(gens) + span(rels)) / span(rels) in
// R^ambient, in index representation.
struct Mod {
  RingPtr R;
  int64_t ambient = 0;
  std::vector<IVec> rels;
  std::vector<IVec> gens;

  static Mod from_spec(const ModuleSpec& spec);
};

struct SyzygyBasis {
  std::vector<ModuleVec> generators;
  std::vector<ModuleVec> kernel_elements;  // full kernel set (oracle only)
};

// Complete kernel {v in R^m : Mv = 0} by exhaustive enumeration of |R|^m
// candidates (budget-guarded), reduced to module generators by closure
// pruning. Independent of the structured path by construction.
SyzygyBasis syzygies_oracle(const PresentationMatrix& M, const Config& cfg = Config{});

// Same kernel over a finite local ring: unit-pivot column reduction to a
// block with entries in the maximal ideal, then an exact additive kernel
// computation over Z/p^K, minimalized via Nakayama.
SyzygyBasis syzygies_structured(const PresentationMatrix& M, const Config& cfg = Config{});

// Generating set whose images form a basis of M/mM (local rings).
std::vector<ModuleVec> minimal_generators(const ModuleSpec& M, const Config& cfg = Config{});

// Kernel of the map R^m -> target sending basis vectors to `images`,
// returned as a Submodule of R^m with a computed generating set.
ModuleSpec kernel_of_map(const std::vector<ModuleVec>& images, const ModuleSpec& target,
                         const Config& cfg = Config{});

// Free <=> projective over a local ring: the minimal presentation has no
// relations.
bool is_projective(const ModuleSpec& M, const Config& cfg = Config{});

struct IsoWitness {
  std::vector<ModuleVec> generators;  // generators of M
  std::vector<ModuleVec> images;      // their images in N
};

std::optional<IsoWitness> modules_isomorphic(const ModuleSpec& M, const ModuleSpec& N,
                                             const Config& cfg = Config{});

ModuleSpec direct_sum(const ModuleSpec& M, const ModuleSpec& N, const Config& cfg = Config{});

// Presentation of an arbitrary spec (Free -> n x 0; Submodule -> syzygy
// presentation of its generators).
ModuleSpec to_presented(const ModuleSpec& M, const Config& cfg = Config{});

// Idealization by a finitely presented module.
RingPtr triv_extend(const RingPtr& A, const ModuleSpec& E, const Config& cfg = Config{});

enum class DistKind { IExt, ZeroExt, Full };

// The distinguished modules of R = A ∝ A/I: I ∝ A/I, 0 ∝ A/I, and the
// maximal ideal M ∝ E (A local), as submodules of R^1.
ModuleSpec distinguished_module(const RingPtr& R, DistKind kind, const Config& cfg = Config{});

// --- index-level machinery shared with resolutions and scenarios ---

IVec to_ivec(const RingTable& t, const ModuleVec& v);
ModuleVec from_ivec(const RingPtr& R, const IVec& v);
std::string ivec_str(const RingPtr& R, const IVec& v);

IVec iv_add(const RingTable& t, const IVec& a, const IVec& b);
IVec iv_sub(const RingTable& t, const IVec& a, const IVec& b);
IVec iv_scalar(const RingTable& t, uint16_t s, const IVec& v);
bool iv_is_zero(const RingTable& t, const IVec& v);

// Elements of the submodule of R^n generated by gens (additive closure of all
// scalar multiples), sorted.
std::vector<IVec> span_elements(const RingPtr& R, const std::vector<IVec>& gens,
                                int64_t ambient, uint64_t budget);

// Canonical representative (lexicographically least in v + span(rels)).
IVec coset_rep(const RingTable& t, const IVec& v, const std::vector<IVec>& relspan);

// Elements of a Mod as canonical coset representatives, sorted.
std::vector<IVec> mod_elements(const Mod& m, const Config& cfg = Config{});

// Additive scaled-coordinate machinery of a finite local ring (|R| = p^s).
struct PadicRing {
  RingPtr R;
  PadicContext ctx;
  std::vector<int64_t> moduli;                  // coordinate moduli (powers of p)
  std::vector<int64_t> scale;                   // p^{K - k_j} per slot
  std::vector<std::vector<int64_t>> scaled_of;  // per element index

  static PadicRing build(const RingPtr& R);
  ZVec scaled(const IVec& v) const;  // length = v.size() * slots
  IVec unscale_solution(const ZVec& x, int64_t m) const;
};

// Minimal generators (Nakayama) of the module spanned by `candidates`
// together with `extra_span` (e.g. quotient relations), over a local ring.
std::vector<IVec> minimal_gens_index(const RingPtr& R, int64_t ambient,
                                     std::vector<IVec> candidates,
                                     const std::vector<IVec>& extra_span);

// Membership of v in the R-span of `vectors` inside R^ambient, by exact
// additive linear algebra (local rings; no enumeration).
bool in_rspan_index(const RingPtr& R, const std::vector<IVec>& vectors, int64_t ambient,
                    const IVec& v);

// Index-level structured syzygies: generators of {v : sum v_j cols[j] = 0}.
std::vector<IVec> syzygy_gens_structured(const RingPtr& R, int64_t ambient,
                                         const std::vector<IVec>& cols, const Config& cfg);

// Index-level exhaustive kernel {v in R^m : sum v_j cols[j] = 0} in
// enumeration order (budget-guarded).
std::vector<IVec> syzygy_kernel_index(const RingPtr& R, int64_t ambient,
                                      const std::vector<IVec>& cols, uint64_t budget);

// Index-level kernel of R^m -> target (images in target's ambient).
Mod kernel_of_map_index(const std::vector<IVec>& images, const Mod& target,
                        const Config& cfg);

}  // namespace trivext
