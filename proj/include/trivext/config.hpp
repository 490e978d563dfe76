#pragma once

#include <cstdint>
#include <string>

namespace trivext {

// Runtime limits and reproducibility constants. Values can be loaded from a
// key=value config file and overridden by CLI flags; the defaults below are
// the documented baseline.
struct Config {
  int depth = 6;                       // resolution depth bound
  uint64_t budget = 1000000;           // candidate cap for exhaustive searches
  uint64_t axiom_check_cutoff = 256;   // exhaustive ring-axiom check below this size
  uint64_t table_cutoff = 4096;        // operation tables built below this size
  uint64_t ideal_enum_cutoff = 4096;   // ideal census allowed below this ring size
  uint64_t iso_search_cutoff = 4096;   // module isomorphism search cap (elements)
  uint64_t quotient_cutoff = 4096;     // ambient size cap for quotient-module tables
  uint64_t seed = 0;
  // 64-bit linear congruential generator (Knuth's MMIX constants); the exact
  // update is documented next to Lcg below so results are reproducible across
  // implementations.
  uint64_t lcg_multiplier = 6364136223846793005ull;
  uint64_t lcg_increment = 1442695040888963407ull;

  static Config load_file(const std::string& path);  // throws Error(Usage)
  void apply_file(const std::string& path);
};

// Deterministic PRNG: s_{k+1} = a*s_k + c (mod 2^64); each draw advances the
// state once and returns the high 32 bits; below(n) reduces the draw mod n.
class Lcg {
 public:
  Lcg(uint64_t seed, const Config& cfg)
      : state_(seed), mult_(cfg.lcg_multiplier), inc_(cfg.lcg_increment) {}
  uint64_t next_u32() {
    state_ = state_ * mult_ + inc_;
    return state_ >> 32;
  }
  uint64_t below(uint64_t n) { return n <= 1 ? 0 : next_u32() % n; }

 private:
  uint64_t state_;
  uint64_t mult_;
  uint64_t inc_;
};

}  // namespace trivext
