#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace trivext {

// Exact linear algebra over Z/p^K (the additive side of a finite local ring).
struct PadicContext {
  int64_t p = 2;
  int K = 1;
  int64_t q = 2;  // p^K

  int val(int64_t x) const {  // p-adic valuation in [0, K]; val(0) = K
    if (x == 0) return K;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  int64_t pow(int v) const {
    int64_t r = 1;
    while (v-- > 0) r *= p;
    return r;
  }
  int64_t norm(int64_t x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }
  int64_t unit_inverse(int64_t u) const;  // u must be a unit mod q
};

struct ZMat {
  int rows = 0, cols = 0;
  std::vector<int64_t> a;

  ZMat() = default;
  ZMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  int64_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  int64_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static ZMat identity(int n);
};

using ZVec = std::vector<int64_t>;

// Generators of {x in (Z/q)^cols : Mx = 0 mod q}.
std::vector<ZVec> kernel_mod_q(const PadicContext& ctx, ZMat M);

// One solution of Mx = b mod q, if any.
std::optional<ZVec> solve_mod_q(const PadicContext& ctx, ZMat M, ZVec b);

// Incrementally built additive span inside (Z/q)^dim with exact membership
// tests (Howell-style echelon: a row with pivot p^a also spawns its
// p^{K-a} shift so that greedy reduction is complete).
class PadicSpan {
 public:
  PadicSpan(const PadicContext& ctx, int dim) : ctx_(ctx), dim_(dim) {}

  bool contains(ZVec v) const;
  bool insert(ZVec v);  // true if the span grew
  size_t row_count() const { return rows_.size(); }

 private:
  struct Row {
    int pivot;
    int vval;
    ZVec v;  // normalized: v[pivot] = p^vval exactly
  };
  // Reduces v in place; returns false if a pivot collision with smaller
  // valuation blocks reduction (v is then not in the span).
  bool reduce(ZVec& v) const;

  PadicContext ctx_;
  int dim_;
  std::vector<Row> rows_;  // sorted by pivot column
};

}  // namespace trivext
