#include "trivext/resolution.hpp"

#include <algorithm>

namespace trivext {

PdVerdict PdVerdict::finite(int64_t k) {
  PdVerdict v;
  v.kind = Kind::Finite;
  v.k = k;
  return v;
}
PdVerdict PdVerdict::infinite_nonfree() {
  PdVerdict v;
  v.kind = Kind::CertifiedInfinite;
  v.reason = "NonFreeOverArtinianLocal";
  return v;
}
PdVerdict PdVerdict::infinite_periodic(int offset, int period) {
  PdVerdict v;
  v.kind = Kind::CertifiedInfinite;
  v.reason = "PeriodicSyzygy";
  v.periodic = PeriodCertificate{offset, period};
  return v;
}
PdVerdict PdVerdict::unknown(int64_t lower_bound) {
  PdVerdict v;
  v.kind = Kind::Unknown;
  v.lower_bound = lower_bound;
  return v;
}

bool PdVerdict::operator==(const PdVerdict& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Finite) return k == o.k;
  return true;  // infinite verdicts compare equal regardless of certificate
}

std::string PdVerdict::str() const {
  switch (kind) {
    case Kind::Finite:
      return "Finite(" + std::to_string(k) + ")";
    case Kind::CertifiedInfinite:
      if (periodic)
        return "CertifiedInfinite(PeriodicSyzygy(offset " +
               std::to_string(periodic->offset) + ", period " +
               std::to_string(periodic->period) + "))";
      return "CertifiedInfinite(" + reason + ")";
    case Kind::Unknown:
      return "Unknown(lower bound " + std::to_string(lower_bound) + ")";
  }
  return "?";
}

std::vector<Enc> canonical_matrix_form(const PresentationMatrix& m) {
  // columns sorted lexicographically by encoding, then rows likewise
  std::vector<std::vector<Enc>> cols(static_cast<size_t>(m.cols));
  for (int64_t j = 0; j < m.cols; ++j)
    for (int64_t i = 0; i < m.rows; ++i)
      cols[static_cast<size_t>(j)].push_back(m.at(i, j).enc());
  std::sort(cols.begin(), cols.end());
  std::vector<Enc> rows(static_cast<size_t>(m.rows));
  for (int64_t i = 0; i < m.rows; ++i) {
    Enc row;
    row.push_back(m.rows);
    row.push_back(m.cols);
    for (int64_t j = 0; j < m.cols; ++j) {
      const Enc& e = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
      row.push_back(static_cast<int64_t>(e.size()));
      row.insert(row.end(), e.begin(), e.end());
    }
    rows[static_cast<size_t>(i)] = std::move(row);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

namespace {

PresentationMatrix matrix_from_cols(const RingPtr& R, int64_t rows,
                                    const std::vector<IVec>& cols) {
  const RingTable& t = R->table();
  std::vector<RingElement> entries;
  entries.reserve(static_cast<size_t>(rows) * cols.size());
  for (int64_t i = 0; i < rows; ++i)
    for (const IVec& c : cols) entries.emplace_back(R, t.elems[c[static_cast<size_t>(i)]]);
  return PresentationMatrix::make(R, rows, static_cast<int64_t>(cols.size()), entries);
}

struct ResolutionWork {
  std::vector<int64_t> betti;
  std::vector<std::vector<IVec>> step_cols;  // columns of d_1, d_2, ...
  std::vector<int64_t> step_rows;
  bool terminated = false;
};

// membership of v in the R-span of `vectors` (+ its additive closure)
bool in_rspan(const RingPtr& R, const PadicRing& P, const std::vector<IVec>& vectors,
              int64_t ambient, const IVec& v) {
  const RingTable& t = R->table();
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

ResolutionWork resolve_mod(const Mod& m, int depth, const Config& cfg) {
  const RingPtr& R = m.R;
  if (!R->locality().is_local)
    fail(ErrorKind::NotLocal, "minimal resolutions require a local ring");
  const RingTable& t = R->table();
  PadicRing P = PadicRing::build(R);

  ResolutionWork work;
  std::vector<IVec> G0 = minimal_gens_index(R, m.ambient, m.gens, m.rels);
  work.betti.push_back(static_cast<int64_t>(G0.size()));
  if (G0.empty()) {
    work.terminated = true;
    return work;
  }

  Mod kernel0 = kernel_of_map_index(G0, m, cfg);
  std::vector<IVec> cur = kernel0.gens;
  int64_t prev_rank = static_cast<int64_t>(G0.size());

  // exactness of the first step: columns of d_1 map into the relations of M
  for (const IVec& col : cur) {
    IVec acc(static_cast<size_t>(m.ambient), static_cast<uint16_t>(t.zero));
    for (size_t j = 0; j < G0.size(); ++j)
      acc = iv_add(t, acc, iv_scalar(t, col[j], G0[j]));
    if (!m.rels.empty() || !iv_is_zero(t, acc)) {
      if (!in_rspan(R, P, m.rels, m.ambient, acc))
        fatal_inconsistency("first syzygy does not annihilate the generators");
    }
  }

  for (int i = 1; i <= depth; ++i) {
    if (cur.empty()) {
      work.terminated = true;
      break;
    }
    // minimality: differential entries lie in the maximal ideal
    for (const IVec& col : cur)
      for (uint16_t x : col)
        if (t.unit(x))
          fatal_inconsistency("non-minimal differential entry (unit) at step " +
                              std::to_string(i));
    work.betti.push_back(static_cast<int64_t>(cur.size()));
    work.step_cols.push_back(cur);
    work.step_rows.push_back(prev_rank);

    std::vector<IVec> next = syzygy_gens_structured(R, prev_rank, cur, cfg);
    // composite zero: each next column is a syzygy of the current columns
    for (const IVec& nc : next) {
      IVec acc(static_cast<size_t>(prev_rank), static_cast<uint16_t>(t.zero));
      for (size_t j = 0; j < cur.size(); ++j)
        acc = iv_add(t, acc, iv_scalar(t, nc[j], cur[j]));
      if (!iv_is_zero(t, acc))
        fatal_inconsistency("consecutive differentials do not compose to zero");
    }
    prev_rank = static_cast<int64_t>(cur.size());
    cur = std::move(next);
  }
  if (!work.terminated && cur.empty()) work.terminated = true;
  return work;
}

}  // namespace

Resolution minimal_resolution(const ModuleSpec& M, int depth, const Config& cfg) {
  if (depth < 1) fail(ErrorKind::Usage, "resolution depth must be >= 1");
  if (!M.ring->finite())
    fail(ErrorKind::NotFinite, "resolutions require a finite ring");
  Mod m = Mod::from_spec(M);
  ResolutionWork w = resolve_mod(m, depth, cfg);
  Resolution res;
  res.module = M;
  res.betti = w.betti;
  res.terminated = w.terminated;
  res.minimal = true;
  res.depth_reached = static_cast<int>(w.step_cols.size());
  for (size_t i = 0; i < w.step_cols.size(); ++i)
    res.steps.push_back(matrix_from_cols(m.R, w.step_rows[i], w.step_cols[i]));
  return res;
}

namespace {

PdVerdict verdict_from_resolution(const Resolution& res) {
  if (res.terminated) {
    int64_t k = static_cast<int64_t>(res.steps.size());
    if (k == 0) return PdVerdict::finite(0);
    // Over an Artinian local ring a module of finite projective dimension is
    // free; a terminating resolution of positive length contradicts that.
    fatal_inconsistency("resolution terminated at positive depth over an Artinian local ring");
  }
  // certified infinite; look for a periodicity certificate
  for (size_t i = 0; i < res.steps.size(); ++i) {
    for (size_t j = i + 1; j < res.steps.size(); ++j) {
      if (res.steps[i].rows != res.steps[j].rows || res.steps[i].cols != res.steps[j].cols)
        continue;
      if (canonical_matrix_form(res.steps[i]) == canonical_matrix_form(res.steps[j]))
        return PdVerdict::infinite_periodic(static_cast<int>(i + 1),
                                            static_cast<int>(j - i));
    }
  }
  return PdVerdict::infinite_nonfree();
}

PdVerdict pd_verdict_mod(const Mod& m, int depth, const Config& cfg) {
  ResolutionWork w = resolve_mod(m, depth, cfg);
  Resolution res;
  res.betti = w.betti;
  res.terminated = w.terminated;
  for (size_t i = 0; i < w.step_cols.size(); ++i)
    res.steps.push_back(matrix_from_cols(m.R, w.step_rows[i], w.step_cols[i]));
  return verdict_from_resolution(res);
}

Mod transport_to_factor(const Mod& m, const RingPtr& factor, const Enc& idem) {
  const RingPtr& R = m.R;
  const RingTable& rt = R->table();
  const RingTable& ft = factor->table();
  auto move_vec = [&](const IVec& v) {
    IVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      out[i] = static_cast<uint16_t>(ft.index(R->mul(idem, rt.elems[v[i]])));
    return out;
  };
  Mod out;
  out.R = factor;
  out.ambient = m.ambient;
  for (const IVec& r : m.rels) out.rels.push_back(move_vec(r));
  for (const IVec& g : m.gens) out.gens.push_back(move_vec(g));
  return out;
}

}  // namespace

PdVerdict pd_verdict(const ModuleSpec& M, int depth, const Config& cfg) {
  if (!M.ring->finite())
    fail(ErrorKind::NotFinite, "pd verdicts require a finite ring");
  Mod m = Mod::from_spec(M);
  if (!m.R->locality().is_local)
    fail(ErrorKind::NotLocal, "pd_verdict requires a local ring; decompose first");
  return pd_verdict_mod(m, depth, cfg);
}

PdVerdict pd_over_product(const ModuleSpec& M, int depth, const Config& cfg) {
  const RingPtr& R = M.ring;
  Mod m = Mod::from_spec(M);
  std::vector<LocalFactor> factors = decompose_into_local_factors(R, cfg);
  int64_t max_finite = 0;
  std::optional<PdVerdict> infinite;
  std::optional<int64_t> unknown_lb;
  for (const LocalFactor& f : factors) {
    PdVerdict v;
    if (f.factor.get() == R.get()) {
      v = pd_verdict_mod(m, depth, cfg);
    } else {
      Mod fm = transport_to_factor(m, f.factor, f.idempotent.enc());
      v = pd_verdict_mod(fm, depth, cfg);
    }
    switch (v.kind) {
      case PdVerdict::Kind::Finite:
        max_finite = std::max(max_finite, v.k);
        break;
      case PdVerdict::Kind::CertifiedInfinite:
        if (!infinite) infinite = v;
        break;
      case PdVerdict::Kind::Unknown:
        unknown_lb = std::max(unknown_lb.value_or(0), v.lower_bound);
        break;
    }
  }
  if (infinite) return *infinite;
  if (unknown_lb) return PdVerdict::unknown(*unknown_lb);
  return PdVerdict::finite(max_finite);
}

GlobalDimReport global_dim_probe(const RingPtr& R, int depth, const Config& cfg) {
  GlobalDimReport rep;
  std::vector<LocalFactor> factors = decompose_into_local_factors(R, cfg);
  std::optional<PdVerdict> infinite;
  for (const LocalFactor& f : factors) {
    GlobalDimFactor gf;
    gf.factor = f.factor->desc();
    gf.idempotent = f.idempotent.enc();
    gf.cardinality = f.factor->size();
    const LocalityInfo& loc = f.factor->locality();
    gf.is_field = loc.is_local && loc.max_ideal_gens.empty();
    // residue field as a module over the factor
    const RingTable& ft = f.factor->table();
    Mod k;
    k.R = f.factor;
    k.ambient = 1;
    k.gens = {IVec{static_cast<uint16_t>(ft.one)}};
    for (const Enc& g : loc.max_ideal_gens)
      k.rels.push_back(IVec{static_cast<uint16_t>(ft.index(g))});
    gf.residue_pd = pd_verdict_mod(k, depth, cfg);
    if (gf.is_field) {
      if (!(gf.residue_pd == PdVerdict::finite(0)))
        fatal_inconsistency("residue field of a field factor is not free");
    } else {
      if (gf.residue_pd.kind != PdVerdict::Kind::CertifiedInfinite)
        fatal_inconsistency("non-field Artinian local factor with finite residue pd");
      if (!infinite) infinite = gf.residue_pd;
    }
    rep.factors.push_back(std::move(gf));
  }
  rep.verdict = infinite ? *infinite : PdVerdict::finite(0);
  return rep;
}

}  // namespace trivext
