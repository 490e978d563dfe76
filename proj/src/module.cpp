#include "trivext/module.hpp"

#include <algorithm>

namespace trivext {

// ---------------------------------------------------------------------------
// Spec types

PresentationMatrix PresentationMatrix::make(RingPtr R, int64_t rows, int64_t cols,
                                            std::vector<RingElement> entries) {
  if (static_cast<int64_t>(entries.size()) != rows * cols)
    fail(ErrorKind::Internal, "presentation matrix entry count mismatch");
  for (const auto& e : entries)
    if (!e.ring()->same_ring(*R)) fail(ErrorKind::RingMismatch, "matrix entry from another ring");
  PresentationMatrix m;
  m.ring = std::move(R);
  m.rows = rows;
  m.cols = cols;
  m.entries = std::move(entries);
  return m;
}

PresentationMatrix PresentationMatrix::zero_free(RingPtr R, int64_t rank) {
  PresentationMatrix m;
  m.ring = std::move(R);
  m.rows = rank;
  m.cols = 0;
  return m;
}

ModuleSpec ModuleSpec::free_module(RingPtr R, int64_t rank) {
  ModuleSpec s;
  s.kind = Kind::Free;
  s.ring = std::move(R);
  s.free_rank = rank;
  return s;
}

ModuleSpec ModuleSpec::presented(PresentationMatrix m) {
  ModuleSpec s;
  s.kind = Kind::Presented;
  s.ring = m.ring;
  s.pres = std::move(m);
  return s;
}

ModuleSpec ModuleSpec::submodule(RingPtr R, int64_t ambient, std::vector<ModuleVec> gens) {
  for (const auto& g : gens) {
    if (static_cast<int64_t>(g.size()) != ambient)
      fail(ErrorKind::Internal, "submodule generator has wrong length");
    for (const auto& e : g)
      if (!e.ring()->same_ring(*R)) fail(ErrorKind::RingMismatch, "generator from another ring");
  }
  ModuleSpec s;
  s.kind = Kind::Submodule;
  s.ring = std::move(R);
  s.ambient = ambient;
  s.sub_gens = std::move(gens);
  return s;
}

// ---------------------------------------------------------------------------
// Index-vector helpers

IVec to_ivec(const RingTable& t, const ModuleVec& v) {
  IVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<uint16_t>(t.index(v[i].enc()));
  return out;
}

ModuleVec from_ivec(const RingPtr& R, const IVec& v) {
  const RingTable& t = R->table();
  ModuleVec out;
  out.reserve(v.size());
  for (uint16_t i : v) out.emplace_back(R, t.elems[i]);
  return out;
}

std::string ivec_str(const RingPtr& R, const IVec& v) {
  const RingTable& t = R->table();
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += R->render(t.elems[v[i]]);
  }
  return s + "]";
}

IVec iv_add(const RingTable& t, const IVec& a, const IVec& b) {
  IVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = t.add(a[i], b[i]);
  return c;
}

IVec iv_sub(const RingTable& t, const IVec& a, const IVec& b) {
  IVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = t.sub(a[i], b[i]);
  return c;
}

IVec iv_scalar(const RingTable& t, uint16_t s, const IVec& v) {
  IVec c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = t.mul(s, v[i]);
  return c;
}

bool iv_is_zero(const RingTable& t, const IVec& v) {
  for (uint16_t x : v)
    if (x != t.zero) return false;
  return true;
}

namespace {

IVec iv_zero(const RingTable& t, int64_t n) {
  return IVec(static_cast<size_t>(n), static_cast<uint16_t>(t.zero));
}

std::vector<IVec> standard_basis(const RingTable& t, int64_t n) {
  std::vector<IVec> out;
  for (int64_t i = 0; i < n; ++i) {
    IVec e = iv_zero(t, n);
    e[static_cast<size_t>(i)] = static_cast<uint16_t>(t.one);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Mod Mod::from_spec(const ModuleSpec& spec) {
  Mod m;
  m.R = spec.ring;
  const RingTable& t = m.R->table();
  switch (spec.kind) {
    case ModuleSpec::Kind::Free:
      m.ambient = spec.free_rank;
      m.gens = standard_basis(t, spec.free_rank);
      break;
    case ModuleSpec::Kind::Presented: {
      m.ambient = spec.pres.rows;
      m.gens = standard_basis(t, spec.pres.rows);
      for (int64_t j = 0; j < spec.pres.cols; ++j) {
        IVec col(static_cast<size_t>(spec.pres.rows));
        for (int64_t i = 0; i < spec.pres.rows; ++i)
          col[static_cast<size_t>(i)] = static_cast<uint16_t>(t.index(spec.pres.at(i, j).enc()));
        m.rels.push_back(std::move(col));
      }
      break;
    }
    case ModuleSpec::Kind::Submodule:
      m.ambient = spec.ambient;
      for (const auto& g : spec.sub_gens) m.gens.push_back(to_ivec(t, g));
      break;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Span enumeration

std::vector<IVec> span_elements(const RingPtr& R, const std::vector<IVec>& gens,
                                int64_t ambient, uint64_t budget) {
  const RingTable& t = R->table();
  std::unordered_set<IVec, IVecHash> set;
  IVec zero = iv_zero(t, ambient);
  set.insert(zero);
  std::vector<IVec> members{zero};
  std::vector<IVec> work;
  for (const IVec& g : gens) {
    for (uint32_t r = 0; r < t.q; ++r) {
      IVec m = iv_scalar(t, static_cast<uint16_t>(r), g);
      if (set.insert(m).second) {
        members.push_back(m);
        work.push_back(std::move(m));
      }
    }
  }
  while (!work.empty()) {
    IVec x = std::move(work.back());
    work.pop_back();
    for (size_t k = 0; k < members.size(); ++k) {
      IVec s = iv_add(t, x, members[k]);
      if (set.insert(s).second) {
        if (set.size() > budget) fail(ErrorKind::BudgetExceeded, "submodule span too large");
        members.push_back(s);
        work.push_back(std::move(s));
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

IVec coset_rep(const RingTable& t, const IVec& v, const std::vector<IVec>& relspan) {
  IVec best = v;
  for (const IVec& s : relspan) {
    IVec w = iv_add(t, v, s);
    if (w < best) best = w;
  }
  return best;
}

std::vector<IVec> mod_elements(const Mod& m, const Config& cfg) {
  const RingTable& t = m.R->table();
  std::vector<IVec> relspan = span_elements(m.R, m.rels, m.ambient, cfg.budget);
  std::vector<IVec> all_gens = m.gens;
  all_gens.insert(all_gens.end(), m.rels.begin(), m.rels.end());
  std::vector<IVec> full = span_elements(m.R, all_gens, m.ambient, cfg.budget);
  std::unordered_set<IVec, IVecHash> seen;
  std::vector<IVec> out;
  for (const IVec& v : full) {
    IVec r = coset_rep(t, v, relspan);
    if (seen.insert(r).second) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Additive coordinates of a finite local ring

PadicRing PadicRing::build(const RingPtr& R) {
  PadicRing P;
  P.R = R;
  uint64_t q = R->size();
  int64_t p = 2;
  while (q % static_cast<uint64_t>(p) != 0) ++p;
  {
    uint64_t m = q;
    while (m % static_cast<uint64_t>(p) == 0) m /= static_cast<uint64_t>(p);
    if (m != 1)
      fail(ErrorKind::NotLocal, "ring order is not a prime power: " + R->desc().to_string());
  }
  P.moduli = R->coord_moduli();
  int K = 0;
  for (int64_t d : P.moduli) {
    int k = 0;
    int64_t dd = d;
    while (dd % p == 0) {
      dd /= p;
      ++k;
    }
    if (dd != 1) fail(ErrorKind::NotLocal, "coordinate modulus is not a power of p");
    K = std::max(K, k);
  }
  P.ctx.p = p;
  P.ctx.K = K;
  P.ctx.q = 1;
  for (int i = 0; i < K; ++i) P.ctx.q *= p;
  P.scale.resize(P.moduli.size());
  for (size_t s = 0; s < P.moduli.size(); ++s) P.scale[s] = P.ctx.q / P.moduli[s];
  const RingTable& t = R->table();
  P.scaled_of.resize(t.q);
  for (uint32_t i = 0; i < t.q; ++i) {
    const auto& c = t.coords[i];
    std::vector<int64_t> sc(c.size());
    for (size_t s = 0; s < c.size(); ++s) sc[s] = (c[s] * P.scale[s]) % P.ctx.q;
    P.scaled_of[i] = std::move(sc);
  }
  return P;
}

ZVec PadicRing::scaled(const IVec& v) const {
  size_t t = moduli.size();
  ZVec out(v.size() * t);
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& sc = scaled_of[v[i]];
    std::copy(sc.begin(), sc.end(), out.begin() + static_cast<std::ptrdiff_t>(i * t));
  }
  return out;
}

IVec PadicRing::unscale_solution(const ZVec& x, int64_t m) const {
  size_t t = moduli.size();
  const RingTable& tab = R->table();
  IVec out(static_cast<size_t>(m));
  std::vector<int64_t> c(t);
  for (int64_t i = 0; i < m; ++i) {
    for (size_t s = 0; s < t; ++s)
      c[s] = ((x[static_cast<size_t>(i) * t + s] % moduli[s]) + moduli[s]) % moduli[s];
    out[static_cast<size_t>(i)] = static_cast<uint16_t>(tab.index(R->from_coords(c)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimal generators (Nakayama) at index level

std::vector<IVec> minimal_gens_index(const RingPtr& R, int64_t ambient,
                                     std::vector<IVec> candidates,
                                     const std::vector<IVec>& extra_span) {
  if (!R->locality().is_local)
    fail(ErrorKind::NotLocal, "minimal generators require a local ring");
  const RingTable& t = R->table();
  PadicRing P = PadicRing::build(R);
  size_t slots = P.moduli.size();
  PadicSpan span(P.ctx, static_cast<int>(ambient * static_cast<int64_t>(slots)));

  std::vector<uint16_t> basis_idx;
  for (size_t s = 0; s < slots; ++s) {
    std::vector<int64_t> c(slots, 0);
    c[s] = 1;
    basis_idx.push_back(static_cast<uint16_t>(t.index(R->from_coords(c))));
  }
  std::vector<uint16_t> mgens;
  for (const Enc& g : R->locality().max_ideal_gens)
    mgens.push_back(static_cast<uint16_t>(t.index(g)));

  auto insert_rspan = [&](const IVec& v) {
    for (uint16_t b : basis_idx) span.insert(P.scaled(iv_scalar(t, b, v)));
  };
  for (const IVec& v : extra_span) insert_rspan(v);

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<IVec> live;
  for (const IVec& g : candidates)
    if (!iv_is_zero(t, g)) live.push_back(g);

  for (const IVec& g : live)
    for (uint16_t x : mgens) insert_rspan(iv_scalar(t, x, g));

  std::vector<IVec> selected;
  for (const IVec& g : live) {
    if (span.contains(P.scaled(g))) continue;
    selected.push_back(g);
    insert_rspan(g);
  }
  return selected;
}

bool in_rspan_index(const RingPtr& R, const std::vector<IVec>& vectors, int64_t ambient,
                    const IVec& v) {
  const RingTable& t = R->table();
  PadicRing P = PadicRing::build(R);
  size_t slots = P.moduli.size();
  PadicSpan span(P.ctx, static_cast<int>(ambient * static_cast<int64_t>(slots)));
  for (size_t s = 0; s < slots; ++s) {
    std::vector<int64_t> c(slots, 0);
    c[s] = 1;
    uint16_t b = static_cast<uint16_t>(t.index(R->from_coords(c)));
    for (const IVec& w : vectors) span.insert(P.scaled(iv_scalar(t, b, w)));
  }
  return span.contains(P.scaled(v));
}

// ---------------------------------------------------------------------------
// Structured syzygies

std::vector<IVec> syzygy_gens_structured(const RingPtr& R, int64_t ambient,
                                         const std::vector<IVec>& cols, const Config& cfg) {
  if (!R->locality().is_local)
    fail(ErrorKind::NotLocal, "structured syzygies require a local ring");
  (void)cfg;
  const RingTable& t = R->table();
  int64_t m = static_cast<int64_t>(cols.size());
  if (m == 0) return {};

  std::vector<IVec> W = cols;
  std::vector<IVec> T = standard_basis(t, m);  // T[j] = column j of the transform
  std::vector<uint8_t> row_active(static_cast<size_t>(ambient), 1);
  std::vector<uint8_t> col_active(static_cast<size_t>(m), 1);

  // unit-pivot reduction: clear one row per unit entry via column operations
  for (;;) {
    int64_t pi = -1, pj = -1;
    for (int64_t i = 0; i < ambient && pi < 0; ++i) {
      if (!row_active[static_cast<size_t>(i)]) continue;
      for (int64_t j = 0; j < m; ++j) {
        if (!col_active[static_cast<size_t>(j)]) continue;
        if (t.unit(W[static_cast<size_t>(j)][static_cast<size_t>(i)])) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi < 0) break;
    uint16_t piv = W[static_cast<size_t>(pj)][static_cast<size_t>(pi)];
    uint16_t uinv = static_cast<uint16_t>(t.inv_t[piv]);
    W[static_cast<size_t>(pj)] = iv_scalar(t, uinv, W[static_cast<size_t>(pj)]);
    T[static_cast<size_t>(pj)] = iv_scalar(t, uinv, T[static_cast<size_t>(pj)]);
    for (int64_t k = 0; k < m; ++k) {
      if (k == pj || !col_active[static_cast<size_t>(k)]) continue;
      uint16_t lam = W[static_cast<size_t>(k)][static_cast<size_t>(pi)];
      if (lam == t.zero) continue;
      IVec lj = iv_scalar(t, lam, W[static_cast<size_t>(pj)]);
      W[static_cast<size_t>(k)] = iv_sub(t, W[static_cast<size_t>(k)], lj);
      IVec ltj = iv_scalar(t, lam, T[static_cast<size_t>(pj)]);
      T[static_cast<size_t>(k)] = iv_sub(t, T[static_cast<size_t>(k)], ltj);
    }
    row_active[static_cast<size_t>(pi)] = 0;
    col_active[static_cast<size_t>(pj)] = 0;
  }

  std::vector<int64_t> arows, acols;
  for (int64_t i = 0; i < ambient; ++i)
    if (row_active[static_cast<size_t>(i)]) arows.push_back(i);
  for (int64_t j = 0; j < m; ++j)
    if (col_active[static_cast<size_t>(j)]) acols.push_back(j);

  std::vector<IVec> kernel_add;  // additive generators of the kernel in R^m
  if (!acols.empty()) {
    PadicRing P = PadicRing::build(R);
    size_t slots = P.moduli.size();
    std::vector<uint16_t> basis_idx;
    for (size_t s = 0; s < slots; ++s) {
      std::vector<int64_t> c(slots, 0);
      c[s] = 1;
      basis_idx.push_back(static_cast<uint16_t>(t.index(R->from_coords(c))));
    }
    ZMat phi(static_cast<int>(arows.size() * slots),
             static_cast<int>(acols.size() * slots));
    for (size_t cj = 0; cj < acols.size(); ++cj) {
      const IVec& col = W[static_cast<size_t>(acols[cj])];
      for (size_t s = 0; s < slots; ++s) {
        // image of the (column cj, slot s) additive generator
        IVec img(arows.size());
        for (size_t ri = 0; ri < arows.size(); ++ri)
          img[ri] = t.mul(basis_idx[s], col[static_cast<size_t>(arows[ri])]);
        ZVec sc = P.scaled(img);
        for (size_t r = 0; r < sc.size(); ++r)
          phi.at(static_cast<int>(r), static_cast<int>(cj * slots + s)) = sc[r];
      }
    }
    std::vector<ZVec> kern = kernel_mod_q(P.ctx, phi);
    for (const ZVec& x : kern) {
      IVec va = P.unscale_solution(x, static_cast<int64_t>(acols.size()));
      IVec emb = iv_zero(t, m);
      for (size_t cj = 0; cj < acols.size(); ++cj)
        emb[static_cast<size_t>(acols[cj])] = va[cj];
      // map back through the accumulated column transform
      IVec v = iv_zero(t, m);
      for (int64_t k = 0; k < m; ++k) {
        if (emb[static_cast<size_t>(k)] == t.zero) continue;
        v = iv_add(t, v, iv_scalar(t, emb[static_cast<size_t>(k)], T[static_cast<size_t>(k)]));
      }
      if (!iv_is_zero(t, v)) kernel_add.push_back(std::move(v));
    }
  }

  return minimal_gens_index(R, m, std::move(kernel_add), {});
}

// ---------------------------------------------------------------------------
// Oracle syzygies

std::vector<IVec> syzygy_kernel_index(const RingPtr& R, int64_t ambient,
                                      const std::vector<IVec>& cols, uint64_t budget) {
  const RingTable& t = R->table();
  int64_t n = ambient, m = static_cast<int64_t>(cols.size());

  // budget: |R|^m candidate vectors
  uint64_t cand = 1;
  for (int64_t j = 0; j < m; ++j) {
    if (cand > budget / std::max<uint64_t>(1, t.q))
      fail(ErrorKind::BudgetExceeded, "oracle candidate space exceeds budget");
    cand *= t.q;
  }
  if (cand > budget)
    fail(ErrorKind::BudgetExceeded, "oracle candidate space exceeds budget");

  // odometer enumeration (last coordinate fastest) with incremental image
  // updates: one digit change touches one column
  std::vector<IVec> kernel;
  IVec v(static_cast<size_t>(m), 0);
  IVec img(static_cast<size_t>(n), static_cast<uint16_t>(t.zero));
  kernel.push_back(v);  // the zero vector is always a syzygy
  for (uint64_t c = 1; c < cand; ++c) {
    int64_t j = m - 1;
    for (;;) {
      uint16_t old = v[static_cast<size_t>(j)];
      uint16_t nw = static_cast<uint16_t>(old + 1u == t.q ? 0 : old + 1);
      v[static_cast<size_t>(j)] = nw;
      uint16_t d = t.sub(nw, old);
      const IVec& col = cols[static_cast<size_t>(j)];
      for (int64_t i = 0; i < n; ++i)
        img[static_cast<size_t>(i)] =
            t.add(img[static_cast<size_t>(i)], t.mul(d, col[static_cast<size_t>(i)]));
      if (nw != 0 || j == 0) break;
      --j;
    }
    if (iv_is_zero(t, img)) kernel.push_back(v);
  }
  return kernel;
}

SyzygyBasis syzygies_oracle(const PresentationMatrix& M, const Config& cfg) {
  const RingPtr& R = M.ring;
  const RingTable& t = R->table();
  int64_t n = M.rows, m = M.cols;

  std::vector<IVec> cols(static_cast<size_t>(m));
  for (int64_t j = 0; j < m; ++j) {
    IVec col(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i)
      col[static_cast<size_t>(i)] = static_cast<uint16_t>(t.index(M.at(i, j).enc()));
    cols[static_cast<size_t>(j)] = std::move(col);
  }
  std::vector<IVec> kernel = syzygy_kernel_index(R, n, cols, cfg.budget);

  // prune additive list to module generators by closure growth
  std::vector<IVec> selected;
  std::unordered_set<IVec, IVecHash> spanned;
  std::vector<IVec> members;
  IVec zero = iv_zero(t, m);
  spanned.insert(zero);
  members.push_back(zero);
  for (const IVec& k : kernel) {
    if (spanned.count(k)) continue;
    selected.push_back(k);
    std::vector<IVec> frontier;
    for (uint32_t r = 0; r < t.q; ++r) {
      IVec mult = iv_scalar(t, static_cast<uint16_t>(r), k);
      if (spanned.insert(mult).second) {
        members.push_back(mult);
        frontier.push_back(std::move(mult));
      }
    }
    while (!frontier.empty()) {
      IVec x = std::move(frontier.back());
      frontier.pop_back();
      for (size_t i = 0; i < members.size(); ++i) {
        IVec s = iv_add(t, x, members[i]);
        if (spanned.insert(s).second) {
          members.push_back(s);
          frontier.push_back(std::move(s));
        }
      }
    }
  }

  SyzygyBasis out;
  for (const IVec& g : selected) out.generators.push_back(from_ivec(R, g));
  for (const IVec& k : kernel) out.kernel_elements.push_back(from_ivec(R, k));
  return out;
}

SyzygyBasis syzygies_structured(const PresentationMatrix& M, const Config& cfg) {
  const RingPtr& R = M.ring;
  const RingTable& t = R->table();
  std::vector<IVec> cols(static_cast<size_t>(M.cols));
  for (int64_t j = 0; j < M.cols; ++j) {
    IVec col(static_cast<size_t>(M.rows));
    for (int64_t i = 0; i < M.rows; ++i)
      col[static_cast<size_t>(i)] = static_cast<uint16_t>(t.index(M.at(i, j).enc()));
    cols[static_cast<size_t>(j)] = std::move(col);
  }
  std::vector<IVec> gens = syzygy_gens_structured(R, M.rows, cols, cfg);
  SyzygyBasis out;
  for (const IVec& g : gens) out.generators.push_back(from_ivec(R, g));
  return out;
}

// ---------------------------------------------------------------------------
// Kernel of a map into a module

Mod kernel_of_map_index(const std::vector<IVec>& images, const Mod& target,
                        const Config& cfg) {
  const RingPtr& R = target.R;
  const RingTable& t = R->table();
  int64_t m = static_cast<int64_t>(images.size());
  std::vector<IVec> cols = images;
  cols.insert(cols.end(), target.rels.begin(), target.rels.end());

  std::vector<IVec> proj;
  if (R->locality().is_local) {
    std::vector<IVec> syz = syzygy_gens_structured(R, target.ambient, cols, cfg);
    for (const IVec& s : syz) proj.emplace_back(s.begin(), s.begin() + m);
    Mod out;
    out.R = R;
    out.ambient = m;
    out.gens = minimal_gens_index(R, m, std::move(proj), {});
    return out;
  }

  // non-local fallback: exhaustive kernel over R^{m+k}, then closure pruning
  uint64_t cand = 1;
  for (size_t j = 0; j < cols.size(); ++j) {
    cand *= t.q;
    if (cand > cfg.budget)
      fail(ErrorKind::BudgetExceeded, "kernel candidate space exceeds budget");
  }
  std::vector<RingElement> entries;
  for (int64_t i = 0; i < target.ambient; ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      entries.emplace_back(R, t.elems[cols[j][static_cast<size_t>(i)]]);
  PresentationMatrix mat = PresentationMatrix::make(
      R, target.ambient, static_cast<int64_t>(cols.size()), std::move(entries));
  SyzygyBasis syz = syzygies_oracle(mat, cfg);

  std::unordered_set<IVec, IVecHash> seen;
  for (const auto& gvec : syz.generators) {
    IVec g = to_ivec(t, gvec);
    IVec p(g.begin(), g.begin() + m);
    if (!iv_is_zero(t, p) && seen.insert(p).second) proj.push_back(p);
  }
  // greedy prune
  std::vector<IVec> selected;
  std::unordered_set<IVec, IVecHash> spanned;
  spanned.insert(iv_zero(t, m));
  for (const IVec& g : proj) {
    if (spanned.count(g)) continue;
    selected.push_back(g);
    std::vector<IVec> cur = selected;
    std::vector<IVec> span = span_elements(R, cur, m, cfg.budget);
    spanned = std::unordered_set<IVec, IVecHash>(span.begin(), span.end());
  }
  Mod out;
  out.R = R;
  out.ambient = m;
  out.gens = std::move(selected);
  return out;
}

ModuleSpec kernel_of_map(const std::vector<ModuleVec>& images, const ModuleSpec& target,
                         const Config& cfg) {
  Mod tmod = Mod::from_spec(target);
  const RingTable& t = tmod.R->table();
  std::vector<IVec> imgs;
  for (const auto& w : images) {
    if (static_cast<int64_t>(w.size()) != tmod.ambient)
      fail(ErrorKind::Internal, "image vector has wrong length");
    imgs.push_back(to_ivec(t, w));
  }
  Mod k = kernel_of_map_index(imgs, tmod, cfg);
  std::vector<ModuleVec> gens;
  for (const IVec& g : k.gens) gens.push_back(from_ivec(k.R, g));
  return ModuleSpec::submodule(k.R, k.ambient, std::move(gens));
}

// ---------------------------------------------------------------------------
// Minimal generators, projectivity

std::vector<ModuleVec> minimal_generators(const ModuleSpec& M, const Config& cfg) {
  (void)cfg;
  Mod m = Mod::from_spec(M);
  if (!m.R->locality().is_local)
    fail(ErrorKind::NotLocal, "minimal generators require a local ring");
  std::vector<IVec> sel = minimal_gens_index(m.R, m.ambient, m.gens, m.rels);
  std::vector<ModuleVec> out;
  for (const IVec& g : sel) out.push_back(from_ivec(m.R, g));
  return out;
}

bool is_projective(const ModuleSpec& M, const Config& cfg) {
  Mod m = Mod::from_spec(M);
  if (!m.R->locality().is_local)
    fail(ErrorKind::NotLocal, "projectivity test requires a local ring");
  std::vector<IVec> gens = minimal_gens_index(m.R, m.ambient, m.gens, m.rels);
  Mod k = kernel_of_map_index(gens, m, cfg);
  return k.gens.empty();
}

// ---------------------------------------------------------------------------
// Direct sums and presentations

ModuleSpec to_presented(const ModuleSpec& M, const Config& cfg) {
  switch (M.kind) {
    case ModuleSpec::Kind::Free:
      return ModuleSpec::presented(PresentationMatrix::zero_free(M.ring, M.free_rank));
    case ModuleSpec::Kind::Presented:
      return M;
    case ModuleSpec::Kind::Submodule: {
      Mod m = Mod::from_spec(M);
      const RingTable& t = m.R->table();
      int64_t g = static_cast<int64_t>(m.gens.size());
      std::vector<IVec> syz;
      if (m.R->locality().is_local) {
        syz = syzygy_gens_structured(m.R, m.ambient, m.gens, cfg);
      } else {
        Mod k = kernel_of_map_index(m.gens, Mod{m.R, m.ambient, {}, {}}, cfg);
        syz = k.gens;
      }
      std::vector<RingElement> entries;
      for (int64_t i = 0; i < g; ++i)
        for (const IVec& s : syz)
          entries.emplace_back(m.R, t.elems[s[static_cast<size_t>(i)]]);
      return ModuleSpec::presented(PresentationMatrix::make(
          m.R, g, static_cast<int64_t>(syz.size()), std::move(entries)));
    }
  }
  fail(ErrorKind::Internal, "bad module kind");
}

ModuleSpec direct_sum(const ModuleSpec& M, const ModuleSpec& N, const Config& cfg) {
  if (!M.ring->same_ring(*N.ring)) fail(ErrorKind::RingMismatch, "direct sum across rings");
  if (M.kind == ModuleSpec::Kind::Free && N.kind == ModuleSpec::Kind::Free)
    return ModuleSpec::free_module(M.ring, M.free_rank + N.free_rank);
  ModuleSpec a = to_presented(M, cfg), b = to_presented(N, cfg);
  int64_t rows = a.pres.rows + b.pres.rows;
  int64_t cols = a.pres.cols + b.pres.cols;
  RingElement z(M.ring, M.ring->zero());
  std::vector<RingElement> entries(static_cast<size_t>(rows * cols), z);
  for (int64_t i = 0; i < a.pres.rows; ++i)
    for (int64_t j = 0; j < a.pres.cols; ++j)
      entries[static_cast<size_t>(i * cols + j)] = a.pres.at(i, j);
  for (int64_t i = 0; i < b.pres.rows; ++i)
    for (int64_t j = 0; j < b.pres.cols; ++j)
      entries[static_cast<size_t>((a.pres.rows + i) * cols + (a.pres.cols + j))] =
          b.pres.at(i, j);
  return ModuleSpec::presented(PresentationMatrix::make(M.ring, rows, cols, std::move(entries)));
}

// ---------------------------------------------------------------------------
// Module isomorphism search

namespace {

struct ModView {
  Mod m;
  std::vector<IVec> relspan;
  std::unordered_set<IVec, IVecHash> relset;
  std::vector<IVec> elems;  // canonical representatives, sorted
  IVec zero_rep;

  static ModView build(const Mod& mod, const Config& cfg) {
    ModView v;
    v.m = mod;
    v.relspan = span_elements(mod.R, mod.rels, mod.ambient, cfg.budget);
    v.relset = std::unordered_set<IVec, IVecHash>(v.relspan.begin(), v.relspan.end());
    v.elems = mod_elements(mod, cfg);
    const RingTable& t = mod.R->table();
    v.zero_rep = coset_rep(t, IVec(static_cast<size_t>(mod.ambient),
                                   static_cast<uint16_t>(t.zero)),
                           v.relspan);
    return v;
  }
  IVec rep(const IVec& x) const { return coset_rep(m.R->table(), x, relspan); }
  bool is_zero(const IVec& x) const { return rep(x) == zero_rep; }
};

// sizes of m^i M until the chain stabilizes at the zero module
std::vector<uint64_t> filtration_sizes(const Mod& mod, const Config& cfg) {
  const RingTable& t = mod.R->table();
  std::vector<uint16_t> mgens;
  for (const Enc& g : mod.R->locality().max_ideal_gens)
    mgens.push_back(static_cast<uint16_t>(t.index(g)));
  std::vector<uint64_t> sizes;
  std::vector<IVec> gens = mod.gens;
  for (int guard = 0; guard < 64; ++guard) {
    Mod cur{mod.R, mod.ambient, mod.rels, gens};
    uint64_t sz = mod_elements(cur, cfg).size();
    sizes.push_back(sz);
    if (sz == 1) break;
    std::vector<IVec> next;
    for (const IVec& g : gens)
      for (uint16_t x : mgens) {
        IVec w = iv_scalar(t, x, g);
        if (!iv_is_zero(t, w)) next.push_back(w);
      }
    gens = std::move(next);
    if (gens.empty()) {
      sizes.push_back(1);
      break;
    }
  }
  return sizes;
}

int64_t additive_order(const ModView& v, const IVec& x) {
  const RingTable& t = v.m.R->table();
  IVec cur = x;
  int64_t k = 1;
  while (!v.is_zero(cur)) {
    cur = iv_add(t, cur, x);
    ++k;
  }
  return k;
}

}  // namespace

std::optional<IsoWitness> modules_isomorphic(const ModuleSpec& Ms, const ModuleSpec& Ns,
                                             const Config& cfg) {
  if (!Ms.ring->same_ring(*Ns.ring)) fail(ErrorKind::RingMismatch, "isomorphism across rings");
  const RingPtr& R = Ms.ring;
  const RingTable& t = R->table();
  Mod M = Mod::from_spec(Ms), N = Mod::from_spec(Ns);

  bool local = R->locality().is_local;

  // fast path (no enumeration): modules killed by the maximal ideal are
  // vector spaces over the residue field, so minimal generator counts decide
  if (local) {
    auto killed = [&](const Mod& mod) {
      std::vector<uint16_t> mgens;
      for (const Enc& g : R->locality().max_ideal_gens)
        mgens.push_back(static_cast<uint16_t>(t.index(g)));
      for (const IVec& g : mod.gens)
        for (uint16_t x : mgens) {
          IVec w = iv_scalar(t, x, g);
          if (iv_is_zero(t, w)) continue;
          if (!in_rspan_index(R, mod.rels, mod.ambient, w)) return false;
        }
      return true;
    };
    bool km = killed(M), kn = killed(N);
    if (km != kn) return std::nullopt;
    if (km && kn) {
      std::vector<IVec> Gm = minimal_gens_index(R, M.ambient, M.gens, M.rels);
      std::vector<IVec> Hn = minimal_gens_index(R, N.ambient, N.gens, N.rels);
      if (Gm.size() != Hn.size()) return std::nullopt;
      IsoWitness w;
      for (size_t i = 0; i < Gm.size(); ++i) {
        w.generators.push_back(from_ivec(R, Gm[i]));
        w.images.push_back(from_ivec(R, Hn[i]));
      }
      return w;
    }
  }

  Config ecfg = cfg;
  ecfg.budget = std::min(cfg.budget, cfg.iso_search_cutoff);
  ModView mv, nv;
  try {
    mv = ModView::build(M, ecfg);
    nv = ModView::build(N, ecfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded)
      fail(ErrorKind::TooLarge, "modules exceed the isomorphism search cutoff");
    throw;
  }
  if (mv.elems.size() != nv.elems.size()) return std::nullopt;

  if (local) {
    if (filtration_sizes(M, ecfg) != filtration_sizes(N, ecfg)) return std::nullopt;
  }

  // generators of M and their relation module
  std::vector<IVec> G = local ? minimal_gens_index(R, M.ambient, M.gens, M.rels)
                              : M.gens;
  if (G.empty()) {
    if (nv.elems.size() == 1)
      return IsoWitness{};  // both zero modules
    return std::nullopt;
  }
  std::vector<IVec> relations = kernel_of_map_index(G, M, ecfg).gens;

  // invariant signatures
  auto signature = [&](const ModView& view, const IVec& x,
                       const std::vector<std::unordered_set<IVec, IVecHash>>& filt_sets) {
    int64_t ord = additive_order(view, x);
    int64_t depth = 0;
    IVec r = view.rep(x);
    for (size_t i = 1; i < filt_sets.size(); ++i) {
      if (filt_sets[i].count(r))
        depth = static_cast<int64_t>(i);
      else
        break;
    }
    int64_t ann = 0;
    for (uint32_t s = 0; s < t.q; ++s)
      if (view.is_zero(iv_scalar(t, static_cast<uint16_t>(s), r))) ++ann;
    return std::tuple<int64_t, int64_t, int64_t>(ord, depth, ann);
  };

  auto filt_sets_of = [&](const Mod& mod) {
    std::vector<std::unordered_set<IVec, IVecHash>> sets;
    std::vector<uint16_t> mgens;
    for (const Enc& g : R->locality().max_ideal_gens)
      mgens.push_back(static_cast<uint16_t>(t.index(g)));
    std::vector<IVec> gens = mod.gens;
    for (int guard = 0; guard < 64; ++guard) {
      Mod cur{mod.R, mod.ambient, mod.rels, gens};
      std::vector<IVec> el = mod_elements(cur, ecfg);
      sets.emplace_back(el.begin(), el.end());
      if (el.size() == 1) break;
      std::vector<IVec> next;
      for (const IVec& g : gens)
        for (uint16_t x : mgens) {
          IVec w = iv_scalar(t, x, g);
          if (!iv_is_zero(t, w)) next.push_back(w);
        }
      gens = std::move(next);
      if (gens.empty()) break;
    }
    return sets;
  };
  std::vector<std::unordered_set<IVec, IVecHash>> mfilt, nfilt;
  if (local) {
    mfilt = filt_sets_of(M);
    nfilt = filt_sets_of(N);
  } else {
    mfilt.emplace_back();
    nfilt.emplace_back();
  }

  std::vector<std::vector<IVec>> candidates(G.size());
  for (size_t i = 0; i < G.size(); ++i) {
    auto sig = signature(mv, G[i], mfilt);
    for (const IVec& h : nv.elems) {
      if (h == nv.zero_rep) continue;
      if (signature(nv, h, nfilt) == sig) candidates[i].push_back(h);
    }
    if (candidates[i].empty()) return std::nullopt;
  }

  // backtracking over generator images with relation pruning
  std::vector<IVec> assign(G.size());
  uint64_t attempts = 0;
  std::function<bool(size_t)> dfs = [&](size_t pos) -> bool {
    if (++attempts > cfg.budget)
      fail(ErrorKind::BudgetExceeded, "isomorphism search budget exhausted");
    if (pos == G.size()) {
      // surjectivity: images + relations span all of N
      std::vector<IVec> ag = assign;
      ag.insert(ag.end(), N.rels.begin(), N.rels.end());
      std::vector<IVec> span = span_elements(R, ag, N.ambient, ecfg.budget);
      std::unordered_set<IVec, IVecHash> reps;
      for (const IVec& v : span) reps.insert(nv.rep(v));
      return reps.size() == nv.elems.size();
    }
    for (const IVec& h : candidates[pos]) {
      assign[pos] = h;
      bool ok = true;
      for (const IVec& rel : relations) {
        bool supported = true;
        for (size_t j = pos + 1; j < G.size(); ++j)
          if (rel[j] != t.zero) {
            supported = false;
            break;
          }
        if (!supported) continue;
        IVec acc(static_cast<size_t>(N.ambient), static_cast<uint16_t>(t.zero));
        for (size_t j = 0; j <= pos; ++j) {
          if (rel[j] == t.zero) continue;
          acc = iv_add(t, acc, iv_scalar(t, rel[j], assign[j]));
        }
        if (!nv.is_zero(acc)) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(pos + 1)) return true;
    }
    return false;
  };

  if (!dfs(0)) return std::nullopt;
  IsoWitness w;
  for (size_t i = 0; i < G.size(); ++i) {
    w.generators.push_back(from_ivec(R, G[i]));
    w.images.push_back(from_ivec(R, assign[i]));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Trivial extension bridging

RingPtr triv_extend(const RingPtr& A, const ModuleSpec& E, const Config& cfg) {
  if (!E.ring->same_ring(*A)) fail(ErrorKind::RingMismatch, "module over a different base");
  ModuleShape shape;
  switch (E.kind) {
    case ModuleSpec::Kind::Free:
      shape.rank = E.free_rank;
      break;
    case ModuleSpec::Kind::Presented: {
      shape.rank = E.pres.rows;
      for (int64_t j = 0; j < E.pres.cols; ++j) {
        Enc rel;
        for (int64_t i = 0; i < E.pres.rows; ++i) {
          const Enc& e = E.pres.at(i, j).enc();
          rel.insert(rel.end(), e.begin(), e.end());
        }
        shape.rels.push_back(std::move(rel));
      }
      break;
    }
    case ModuleSpec::Kind::Submodule: {
      return triv_extend(A, to_presented(E, cfg), cfg);
    }
  }
  return triv_extend_shape(A, std::move(shape), cfg);
}

ModuleSpec distinguished_module(const RingPtr& R, DistKind kind, const Config& cfg) {
  (void)cfg;
  const auto* TR = dynamic_cast<const TrivialExtRing*>(R.get());
  if (TR == nullptr)
    fail(ErrorKind::WrongShape, "distinguished modules require a trivial extension");
  if (TR->ext().shape().rank != 1)
    fail(ErrorKind::WrongShape, "distinguished modules require R = A ∝ A/I (rank-1 module)");
  const RingPtr& A = TR->base();
  std::vector<ModuleVec> gens;
  auto push_elem = [&](const Enc& e) { gens.push_back({RingElement(R, e)}); };
  switch (kind) {
    case DistKind::ZeroExt:
      push_elem(TR->join(A->zero(), TR->ext().one_rep()));
      break;
    case DistKind::IExt:
      for (const Enc& x : TR->ext().shape().rels)
        push_elem(TR->join(x, TR->ext().zero()));
      push_elem(TR->join(A->zero(), TR->ext().one_rep()));
      break;
    case DistKind::Full:
      if (!R->locality().is_local)
        fail(ErrorKind::NotLocal, "the full distinguished module requires a local base");
      for (const Enc& g : R->locality().max_ideal_gens) push_elem(g);
      break;
  }
  return ModuleSpec::submodule(R, 1, std::move(gens));
}

}  // namespace trivext
