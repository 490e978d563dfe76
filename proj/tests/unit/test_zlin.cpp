#include <doctest.h>

#include <set>

#include "suite.hpp"
#include "trivext/zlin.hpp"

using namespace suite;

namespace {

// all vectors of (Z/q)^dim
std::vector<ZVec> all_vectors(int64_t q, int dim) {
  std::vector<ZVec> out;
  uint64_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<uint64_t>(q);
  for (uint64_t c = 0; c < total; ++c) {
    ZVec v(static_cast<size_t>(dim));
    uint64_t x = c;
    for (int i = 0; i < dim; ++i) {
      v[static_cast<size_t>(i)] = static_cast<int64_t>(x % static_cast<uint64_t>(q));
      x /= static_cast<uint64_t>(q);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::set<ZVec> additive_span(const PadicContext& ctx, const std::vector<ZVec>& gens,
                             int dim) {
  std::set<ZVec> span{ZVec(static_cast<size_t>(dim), 0)};
  std::vector<ZVec> work(span.begin(), span.end());
  while (!work.empty()) {
    ZVec v = work.back();
    work.pop_back();
    for (const ZVec& g : gens) {
      ZVec s(v.size());
      for (size_t i = 0; i < v.size(); ++i) s[i] = ctx.norm(v[i] + g[i]);
      if (span.insert(s).second) work.push_back(s);
    }
  }
  return span;
}

}  // namespace

TEST_CASE("kernel_mod_q generates the exact brute-force kernel") {
  Config c;
  for (int64_t p : {2, 3}) {
    for (int K : {1, 2, 3}) {
      if (p == 3 && K == 3) continue;
      PadicContext ctx;
      ctx.p = p;
      ctx.K = K;
      ctx.q = 1;
      for (int i = 0; i < K; ++i) ctx.q *= p;
      Lcg rng(static_cast<uint64_t>(p * 100 + K), c);
      for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(2));
        int cols = 1 + static_cast<int>(rng.below(3));
        ZMat M(rows, cols);
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j)
            M.at(i, j) = static_cast<int64_t>(rng.below(static_cast<uint64_t>(ctx.q)));

        std::set<ZVec> brute;
        for (const ZVec& v : all_vectors(ctx.q, cols)) {
          bool ok = true;
          for (int i = 0; i < rows && ok; ++i) {
            int64_t acc = 0;
            for (int j = 0; j < cols; ++j)
              acc = ctx.norm(acc + M.at(i, j) * v[static_cast<size_t>(j)]);
            if (acc != 0) ok = false;
          }
          if (ok) brute.insert(v);
        }
        std::vector<ZVec> gens = kernel_mod_q(ctx, M);
        std::set<ZVec> span = additive_span(ctx, gens, cols);
        CHECK(span == brute);
      }
    }
  }
}

TEST_CASE("solve_mod_q finds a solution exactly when one exists") {
  Config c;
  PadicContext ctx;
  ctx.p = 2;
  ctx.K = 3;
  ctx.q = 8;
  Lcg rng(5, c);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + static_cast<int>(rng.below(2));
    int cols = 1 + static_cast<int>(rng.below(3));
    ZMat M(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        M.at(i, j) = static_cast<int64_t>(rng.below(8));
    ZVec b(static_cast<size_t>(rows));
    for (auto& x : b) x = static_cast<int64_t>(rng.below(8));

    bool solvable = false;
    for (const ZVec& v : all_vectors(8, cols)) {
      bool ok = true;
      for (int i = 0; i < rows && ok; ++i) {
        int64_t acc = 0;
        for (int j = 0; j < cols; ++j)
          acc = ctx.norm(acc + M.at(i, j) * v[static_cast<size_t>(j)]);
        if (acc != ctx.norm(b[static_cast<size_t>(i)])) ok = false;
      }
      if (ok) {
        solvable = true;
        break;
      }
    }
    auto x = solve_mod_q(ctx, M, b);
    CHECK(x.has_value() == solvable);
    if (x) {
      for (int i = 0; i < rows; ++i) {
        int64_t acc = 0;
        for (int j = 0; j < cols; ++j)
          acc = ctx.norm(acc + M.at(i, j) * (*x)[static_cast<size_t>(j)]);
        CHECK(acc == ctx.norm(b[static_cast<size_t>(i)]));
      }
    }
  }
}

TEST_CASE("PadicSpan membership matches explicit additive closure") {
  Config c;
  for (int64_t p : {2, 3}) {
    for (int K : {1, 2}) {
      PadicContext ctx;
      ctx.p = p;
      ctx.K = K;
      ctx.q = 1;
      for (int i = 0; i < K; ++i) ctx.q *= p;
      Lcg rng(static_cast<uint64_t>(31 * p + K), c);
      for (int trial = 0; trial < 25; ++trial) {
        int dim = 2 + static_cast<int>(rng.below(3));
        int ngens = 1 + static_cast<int>(rng.below(3));
        std::vector<ZVec> gens;
        for (int g = 0; g < ngens; ++g) {
          ZVec v(static_cast<size_t>(dim));
          for (auto& x : v) x = static_cast<int64_t>(rng.below(static_cast<uint64_t>(ctx.q)));
          gens.push_back(std::move(v));
        }
        PadicSpan span(ctx, dim);
        for (const ZVec& g : gens) span.insert(g);
        std::set<ZVec> closure = additive_span(ctx, gens, dim);
        for (const ZVec& v : all_vectors(ctx.q, dim))
          CHECK(span.contains(v) == (closure.count(v) == 1));
      }
    }
  }
}
