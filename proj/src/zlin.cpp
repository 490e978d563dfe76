#include "trivext/zlin.hpp"

#include <algorithm>
#include <deque>

#include "trivext/errors.hpp"

namespace trivext {

int64_t PadicContext::unit_inverse(int64_t u) const {
  u = norm(u);
  // extended Euclid mod q
  int64_t a = u, b = q, x0 = 1, x1 = 0;
  while (b != 0) {
    int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  if (a != 1 && a != -1) fatal_inconsistency("unit_inverse of a non-unit");
  return norm(a == 1 ? x0 : -x0);
}

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

namespace {

struct SmithResult {
  std::vector<int> diag_val;  // valuations of the diagonal pivots
  ZMat U;                     // row transform
  ZMat T;                     // column transform: U * M * T = D
};

SmithResult smith(const PadicContext& ctx, ZMat& M, bool want_U) {
  SmithResult res;
  res.T = ZMat::identity(M.cols);
  if (want_U) res.U = ZMat::identity(M.rows);
  int t = 0;
  int lim = std::min(M.rows, M.cols);
  while (t < lim) {
    int bi = -1, bj = -1, bv = ctx.K;
    for (int i = t; i < M.rows && bv > 0; ++i) {
      for (int j = t; j < M.cols; ++j) {
        int64_t x = ctx.norm(M.at(i, j));
        if (x == 0) continue;
        int v = ctx.val(x);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (bi < 0) break;

    if (bi != t) {
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(t, j), M.at(bi, j));
      if (want_U)
        for (int j = 0; j < res.U.cols; ++j) std::swap(res.U.at(t, j), res.U.at(bi, j));
    }
    if (bj != t) {
      for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, t), M.at(i, bj));
      for (int i = 0; i < res.T.rows; ++i) std::swap(res.T.at(i, t), res.T.at(i, bj));
    }

    int64_t pivot = ctx.norm(M.at(t, t));
    int64_t pv = ctx.pow(bv);
    int64_t unit = pivot / pv;
    int64_t uinv = ctx.unit_inverse(unit);
    for (int j = 0; j < M.cols; ++j) M.at(t, j) = ctx.norm(M.at(t, j) * uinv);
    if (want_U)
      for (int j = 0; j < res.U.cols; ++j)
        res.U.at(t, j) = ctx.norm(res.U.at(t, j) * uinv);

    for (int i = t + 1; i < M.rows; ++i) {
      int64_t x = ctx.norm(M.at(i, t));
      if (x == 0) continue;
      int64_t f = x / pv;  // exact: minimal valuation pivot divides everything
      for (int j = 0; j < M.cols; ++j)
        M.at(i, j) = ctx.norm(M.at(i, j) - f * M.at(t, j));
      if (want_U)
        for (int j = 0; j < res.U.cols; ++j)
          res.U.at(i, j) = ctx.norm(res.U.at(i, j) - f * res.U.at(t, j));
    }
    for (int j = t + 1; j < M.cols; ++j) {
      int64_t x = ctx.norm(M.at(t, j));
      if (x == 0) continue;
      int64_t f = x / pv;
      for (int i = 0; i < M.rows; ++i)
        M.at(i, j) = ctx.norm(M.at(i, j) - f * M.at(i, t));
      for (int i = 0; i < res.T.rows; ++i)
        res.T.at(i, j) = ctx.norm(res.T.at(i, j) - f * res.T.at(i, t));
    }
    res.diag_val.push_back(bv);
    ++t;
  }
  return res;
}

}  // namespace

std::vector<ZVec> kernel_mod_q(const PadicContext& ctx, ZMat M) {
  int cols = M.cols;
  SmithResult s = smith(ctx, M, /*want_U=*/false);
  std::vector<ZVec> gens;
  int npiv = static_cast<int>(s.diag_val.size());
  for (int t = 0; t < npiv; ++t) {
    if (s.diag_val[t] == 0) continue;  // unit pivot: coordinate forced to 0
    int64_t scale = ctx.pow(ctx.K - s.diag_val[t]);
    ZVec g(cols, 0);
    for (int i = 0; i < cols; ++i) g[i] = ctx.norm(s.T.at(i, t) * scale);
    bool nz = false;
    for (int64_t x : g) nz |= (x != 0);
    if (nz) gens.push_back(std::move(g));
  }
  for (int t = npiv; t < cols; ++t) {
    ZVec g(cols, 0);
    for (int i = 0; i < cols; ++i) g[i] = ctx.norm(s.T.at(i, t));
    gens.push_back(std::move(g));
  }
  return gens;
}

std::optional<ZVec> solve_mod_q(const PadicContext& ctx, ZMat M, ZVec b) {
  int rows = M.rows, cols = M.cols;
  SmithResult s = smith(ctx, M, /*want_U=*/true);
  ZVec c(rows, 0);
  for (int i = 0; i < rows; ++i) {
    int64_t acc = 0;
    for (int j = 0; j < rows; ++j) acc = ctx.norm(acc + s.U.at(i, j) * b[j]);
    c[i] = acc;
  }
  int npiv = static_cast<int>(s.diag_val.size());
  ZVec y(cols, 0);
  for (int i = 0; i < rows; ++i) {
    if (i < npiv) {
      int64_t x = ctx.norm(c[i]);
      if (x == 0) continue;
      if (ctx.val(x) < s.diag_val[i]) return std::nullopt;
      if (i < cols) y[i] = x / ctx.pow(s.diag_val[i]);
    } else if (ctx.norm(c[i]) != 0) {
      return std::nullopt;
    }
  }
  ZVec x(cols, 0);
  for (int i = 0; i < cols; ++i) {
    int64_t acc = 0;
    for (int j = 0; j < cols; ++j) acc = ctx.norm(acc + s.T.at(i, j) * y[j]);
    x[i] = acc;
  }
  return x;
}

bool PadicSpan::reduce(ZVec& v) const {
  for (const Row& r : rows_) {
    int64_t x = ctx_.norm(v[r.pivot]);
    if (x == 0) continue;
    int w = ctx_.val(x);
    if (w < r.vval) return false;  // blocked: smaller valuation at this pivot
    int64_t f = x / ctx_.pow(r.vval);
    for (int i = r.pivot; i < dim_; ++i)
      v[i] = ctx_.norm(v[i] - f * r.v[i]);
  }
  return true;
}

bool PadicSpan::contains(ZVec v) const {
  for (auto& x : v) x = ctx_.norm(x);
  if (!reduce(v)) return false;
  for (int64_t x : v) {
    if (x != 0) return false;
  }
  return true;
}

bool PadicSpan::insert(ZVec v0) {
  for (auto& x : v0) x = ctx_.norm(x);
  std::deque<ZVec> work;
  work.push_back(std::move(v0));
  bool grew = false;
  while (!work.empty()) {
    ZVec v = std::move(work.front());
    work.pop_front();
    // Reduce against rows, swapping in v when it has a strictly smaller
    // valuation at an existing pivot.
    size_t idx = 0;
    bool consumed = false;
    while (idx < rows_.size()) {
      Row& r = rows_[idx];
      int64_t x = ctx_.norm(v[r.pivot]);
      // skip pivots beyond v's support
      int lead = -1;
      for (int i = 0; i < dim_; ++i) {
        if (v[i] != 0) {
          lead = i;
          break;
        }
      }
      if (lead < 0) {
        consumed = true;
        break;
      }
      if (lead < r.pivot) break;  // v becomes a new row before this pivot
      if (x == 0) {
        ++idx;
        continue;
      }
      int w = ctx_.val(x);
      if (w >= r.vval) {
        int64_t f = x / ctx_.pow(r.vval);
        for (int i = r.pivot; i < dim_; ++i)
          v[i] = ctx_.norm(v[i] - f * r.v[i]);
        ++idx;
      } else {
        // v supersedes this row: normalize v here, displace the old row.
        int64_t unit = x / ctx_.pow(w);
        int64_t uinv = ctx_.unit_inverse(unit);
        ZVec nv(dim_, 0);
        for (int i = 0; i < dim_; ++i) nv[i] = ctx_.norm(v[i] * uinv);
        ZVec old = std::move(r.v);
        int oldval = r.vval;
        r.v = nv;
        r.vval = w;
        grew = true;
        (void)oldval;
        work.push_back(std::move(old));
        if (w > 0) {
          ZVec shift(dim_, 0);
          int64_t sc = ctx_.pow(ctx_.K - w);
          for (int i = 0; i < dim_; ++i) shift[i] = ctx_.norm(nv[i] * sc);
          work.push_back(std::move(shift));
        }
        consumed = true;
        break;
      }
    }
    if (consumed) continue;
    int lead = -1;
    for (int i = 0; i < dim_; ++i) {
      if (ctx_.norm(v[i]) != 0) {
        lead = i;
        break;
      }
    }
    if (lead < 0) continue;
    int w = ctx_.val(ctx_.norm(v[lead]));
    int64_t unit = ctx_.norm(v[lead]) / ctx_.pow(w);
    int64_t uinv = ctx_.unit_inverse(unit);
    Row nr;
    nr.pivot = lead;
    nr.vval = w;
    nr.v.assign(dim_, 0);
    for (int i = 0; i < dim_; ++i) nr.v[i] = ctx_.norm(v[i] * uinv);
    auto pos = std::lower_bound(
        rows_.begin(), rows_.end(), lead,
        [](const Row& r, int piv) { return r.pivot < piv; });
    if (pos != rows_.end() && pos->pivot == lead)
      fatal_inconsistency("padic span pivot collision");
    ZVec shifted;
    if (w > 0) {
      shifted.assign(dim_, 0);
      int64_t sc = ctx_.pow(ctx_.K - w);
      for (int i = 0; i < dim_; ++i) shifted[i] = ctx_.norm(nr.v[i] * sc);
    }
    rows_.insert(pos, std::move(nr));
    grew = true;
    if (!shifted.empty()) work.push_back(std::move(shifted));
  }
  return grew;
}

}  // namespace trivext
