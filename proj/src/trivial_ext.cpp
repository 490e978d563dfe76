#include "trivext/trivial_ext.hpp"

#include <algorithm>
#include <unordered_set>

namespace trivext {

namespace {

Enc vec_add(const Ring& A, int64_t rank, const Enc& a, const Enc& b) {
  int64_t bl = A.enc_len();
  Enc out;
  out.reserve(a.size());
  for (int64_t i = 0; i < rank; ++i) {
    Enc r = A.add(enc_slice(a, static_cast<size_t>(i * bl), static_cast<size_t>(bl)),
                  enc_slice(b, static_cast<size_t>(i * bl), static_cast<size_t>(bl)));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Enc vec_neg(const Ring& A, int64_t rank, const Enc& a) {
  int64_t bl = A.enc_len();
  Enc out;
  out.reserve(a.size());
  for (int64_t i = 0; i < rank; ++i) {
    Enc r = A.neg(enc_slice(a, static_cast<size_t>(i * bl), static_cast<size_t>(bl)));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

Enc vec_scalar(const Ring& A, int64_t rank, const Enc& s, const Enc& a) {
  int64_t bl = A.enc_len();
  Enc out;
  out.reserve(a.size());
  for (int64_t i = 0; i < rank; ++i) {
    Enc r = A.mul(s, enc_slice(a, static_cast<size_t>(i * bl), static_cast<size_t>(bl)));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

// A-module closure of vectors in A^rank, by breadth-first span growth.
std::vector<Enc> closure_over_base(const Ring& A, int64_t rank, const std::vector<Enc>& gens,
                                   uint64_t budget) {
  uint64_t n = A.size();
  std::unordered_set<Enc, EncHash> set;
  Enc zero(static_cast<size_t>(rank * A.enc_len()), 0);
  set.insert(zero);
  std::vector<Enc> members{zero};
  std::vector<Enc> seeds;
  for (const Enc& g : gens) {
    for (uint64_t i = 0; i < n; ++i) {
      Enc m = vec_scalar(A, rank, A.element_at(i), g);
      if (set.insert(m).second) {
        members.push_back(m);
        seeds.push_back(m);
      }
    }
  }
  std::vector<Enc> work(seeds);
  while (!work.empty()) {
    Enc x = std::move(work.back());
    work.pop_back();
    for (size_t k = 0; k < members.size(); ++k) {
      Enc s = vec_add(A, rank, x, members[k]);
      if (set.insert(s).second) {
        if (set.size() > budget) fail(ErrorKind::BudgetExceeded, "module closure too large");
        members.push_back(s);
        work.push_back(std::move(s));
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExtModule

ExtModule::ExtModule(RingPtr base, ModuleShape shape, const Config& cfg)
    : base_(std::move(base)), shape_(std::move(shape)) {
  if (shape_.rank < 0) fail(ErrorKind::InvalidDescriptor, "module rank must be >= 0");
  int64_t bl = base_->enc_len();
  for (const Enc& r : shape_.rels)
    if (static_cast<int64_t>(r.size()) != shape_.rank * bl)
      fail(ErrorKind::InvalidDescriptor, "relation length does not match module rank");

  if (!base_->finite()) {
    // truncated series base: free modules and quotients by (x^k)
    std::vector<Enc> nz;
    for (const Enc& r : shape_.rels)
      if (!std::all_of(r.begin(), r.end(), [](int64_t c) { return c == 0; })) nz.push_back(r);
    if (nz.empty()) {
      finite_ = shape_.rank == 0;
      rep_len_ = shape_.rank * bl;
      moduli_ = {};
      for (int64_t i = 0; i < shape_.rank; ++i)
        for (int64_t m : base_->coord_moduli()) moduli_.push_back(m);
      return;
    }
    if (shape_.rank != 1)
      fail(ErrorKind::UnsupportedModule,
           "over a series base only rank-1 quotients and free modules are supported");
    int64_t k = -1;
    for (const Enc& r : nz) {
      int64_t lead = 0;
      while (r[static_cast<size_t>(lead)] == 0) ++lead;
      if (k < 0 || lead < k) k = lead;
    }
    series_quot_ = true;
    series_k_ = k;
    rep_len_ = k;
    finite_ = true;
    moduli_.assign(static_cast<size_t>(k), base_->coord_moduli().empty()
                                              ? 2
                                              : base_->coord_moduli()[0]);
    // enumerate residues
    uint64_t count = 1;
    for (int64_t i = 0; i < k; ++i) count *= static_cast<uint64_t>(moduli_[0]);
    for (uint64_t i = 0; i < count; ++i) {
      Enc e(static_cast<size_t>(k), 0);
      uint64_t v = i;
      for (size_t j = static_cast<size_t>(k); j-- > 0;) {
        e[j] = static_cast<int64_t>(v % static_cast<uint64_t>(moduli_[0]));
        v /= static_cast<uint64_t>(moduli_[0]);
      }
      reps_.push_back(std::move(e));
    }
    return;
  }

  // finite base: tabulate cosets
  rep_len_ = shape_.rank * bl;
  uint64_t ambient = 1;
  for (int64_t i = 0; i < shape_.rank; ++i) {
    if (ambient > cfg.quotient_cutoff)
      fail(ErrorKind::TooLarge, "quotient module ambient too large");
    ambient *= base_->size();
  }
  if (ambient > cfg.quotient_cutoff)
    fail(ErrorKind::TooLarge, "quotient module ambient too large");

  std::vector<Enc> sub = closure_over_base(*base_, shape_.rank, shape_.rels, cfg.budget);
  std::unordered_set<Enc, EncHash> subset(sub.begin(), sub.end());

  // walk all of A^rank, one coset at a time
  std::vector<int64_t> amoduli;
  for (int64_t i = 0; i < shape_.rank; ++i)
    for (int64_t m : base_->coord_moduli()) amoduli.push_back(m);
  auto vec_at = [&](uint64_t idx) {
    std::vector<int64_t> c(amoduli.size(), 0);
    for (size_t j = amoduli.size(); j-- > 0;) {
      c[j] = static_cast<int64_t>(idx % static_cast<uint64_t>(amoduli[j]));
      idx /= static_cast<uint64_t>(amoduli[j]);
    }
    Enc out;
    size_t off = 0;
    size_t clen = base_->coord_moduli().size();
    for (int64_t i = 0; i < shape_.rank; ++i) {
      std::vector<int64_t> ci(c.begin() + static_cast<std::ptrdiff_t>(off),
                              c.begin() + static_cast<std::ptrdiff_t>(off + clen));
      Enc e = base_->from_coords(ci);
      out.insert(out.end(), e.begin(), e.end());
      off += clen;
    }
    return out;
  };

  for (uint64_t i = 0; i < ambient; ++i) {
    Enc v = vec_at(i);
    if (canon_.count(v)) continue;
    Enc rep = v;
    std::vector<Enc> coset;
    coset.reserve(sub.size());
    for (const Enc& s : sub) {
      Enc w = vec_add(*base_, shape_.rank, v, s);
      if (w < rep) rep = w;
      coset.push_back(std::move(w));
    }
    for (Enc& w : coset) canon_.emplace(std::move(w), rep);
    reps_.push_back(rep);
  }
  std::sort(reps_.begin(), reps_.end());

  basis_ = abelian_basis(
      reps_, zero(),
      [this](const Enc& a, const Enc& b) {
        return canonicalize(vec_add(*base_, shape_.rank, a, b));
      },
      [this](const Enc& a) { return canonicalize(vec_neg(*base_, shape_.rank, a)); });
  moduli_ = basis_.moduli;
}

uint64_t ExtModule::size() const {
  if (!finite_) fail(ErrorKind::NotFinite, "free module over a series base");
  if (series_quot_ || !base_->finite()) return reps_.size();
  return reps_.size();
}

const std::vector<Enc>& ExtModule::reps() const {
  if (!finite_) fail(ErrorKind::NotFinite, "free module over a series base");
  return reps_;
}

Enc ExtModule::one_rep() const {
  if (shape_.rank != 1) fail(ErrorKind::WrongShape, "module is not a rank-1 quotient");
  if (series_quot_) {
    Enc e = zero();
    if (rep_len_ > 0) e[0] = 1;
    return e;
  }
  return canonicalize(base_->one());
}

Enc ExtModule::canonicalize(const Enc& raw) const {
  if (series_quot_) return Enc(raw.begin(), raw.begin() + series_k_);
  if (!base_->finite()) return raw;
  auto it = canon_.find(raw);
  if (it == canon_.end()) fatal_inconsistency("vector outside quotient domain");
  return it->second;
}

Enc ExtModule::add(const Enc& a, const Enc& b) const {
  if (series_quot_) {
    Enc c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % moduli_[0];
    return c;
  }
  if (!base_->finite()) return vec_add(*base_, shape_.rank, a, b);
  return canonicalize(vec_add(*base_, shape_.rank, a, b));
}

Enc ExtModule::neg(const Enc& a) const {
  if (series_quot_) {
    Enc c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = (moduli_[0] - a[i]) % moduli_[0];
    return c;
  }
  if (!base_->finite()) return vec_neg(*base_, shape_.rank, a);
  return canonicalize(vec_neg(*base_, shape_.rank, a));
}

Enc ExtModule::scalar(const Enc& s, const Enc& e) const {
  if (series_quot_) {
    // lift to the series ring, multiply, keep the first k coefficients
    Enc lift(static_cast<size_t>(base_->enc_len()), 0);
    std::copy(e.begin(), e.end(), lift.begin());
    Enc prod = base_->mul(s, lift);
    return Enc(prod.begin(), prod.begin() + series_k_);
  }
  if (!base_->finite()) return vec_scalar(*base_, shape_.rank, s, e);
  return canonicalize(vec_scalar(*base_, shape_.rank, s, e));
}

std::vector<int64_t> ExtModule::to_coords(const Enc& e) const {
  if (series_quot_ || !base_->finite())
    return std::vector<int64_t>(e.begin(), e.end());
  return basis_.coords_of(e);
}

Enc ExtModule::from_coords(const std::vector<int64_t>& c) const {
  if (series_quot_) {
    Enc e(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
      int64_t m = moduli_[i];
      e[i] = ((c[i] % m) + m) % m;
    }
    return e;
  }
  if (!base_->finite()) {
    // free module over the series base: coordinates are the coefficients
    std::vector<int64_t> cc(c);
    Enc out;
    size_t off = 0;
    size_t clen = base_->coord_moduli().size();
    for (int64_t i = 0; i < shape_.rank; ++i) {
      std::vector<int64_t> ci(cc.begin() + static_cast<std::ptrdiff_t>(off),
                              cc.begin() + static_cast<std::ptrdiff_t>(off + clen));
      Enc e = base_->from_coords(ci);
      out.insert(out.end(), e.begin(), e.end());
      off += clen;
    }
    return out;
  }
  std::vector<int64_t> cc(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    int64_t m = moduli_[i];
    cc[i] = ((c[i] % m) + m) % m;
  }
  return basis_.elem_of(cc);
}

std::vector<Enc> ExtModule::module_generators() const {
  if (shape_.rels.empty() || !finite_) {
    // free module: standard basis
    std::vector<Enc> out;
    int64_t bl = base_->enc_len();
    for (int64_t i = 0; i < shape_.rank; ++i) {
      Enc e(static_cast<size_t>(rep_len_), 0);
      Enc one = base_->one();
      std::copy(one.begin(), one.end(), e.begin() + i * bl);
      out.push_back(std::move(e));
    }
    return out;
  }
  if (shape_.rank == 1) {
    Enc one = one_rep();
    if (std::all_of(one.begin(), one.end(), [](int64_t c) { return c == 0; })) return {};
    return {one};
  }
  // greedy irredundant generating set over the (finite) base
  std::vector<Enc> selected;
  std::unordered_set<Enc, EncHash> span{zero()};
  uint64_t scalars = base_->size();
  auto grow = [&](const Enc& g) {
    std::vector<Enc> frontier;
    for (uint64_t i = 0; i < scalars; ++i) {
      Enc m = scalar(base_->element_at(i), g);
      if (span.insert(m).second) frontier.push_back(m);
    }
    std::vector<Enc> members(span.begin(), span.end());
    while (!frontier.empty()) {
      Enc x = std::move(frontier.back());
      frontier.pop_back();
      for (size_t k = 0; k < members.size(); ++k) {
        Enc s = add(x, members[k]);
        if (span.insert(s).second) {
          members.push_back(s);
          frontier.push_back(s);
        }
      }
      members.push_back(x);
    }
  };
  for (const Enc& cand : reps_) {
    if (span.size() == reps_.size()) break;
    if (span.count(cand)) continue;
    selected.push_back(cand);
    grow(cand);
  }
  return selected;
}

// ---------------------------------------------------------------------------
// TrivialExtRing

TrivialExtRing::TrivialExtRing(RingDescriptor d, RingPtr base, ExtModule ext, const Config& cfg)
    : base_(std::move(base)), ext_(std::move(ext)) {
  desc_ = std::move(d);
  enc_len_ = base_->enc_len() + ext_.rep_len();
  one_ = join(base_->one(), ext_.zero());
  coord_moduli_ = base_->coord_moduli();
  for (int64_t m : ext_.coord_moduli()) coord_moduli_.push_back(m);
  if (base_->finite() && ext_.finite()) {
    card_ = Cardinality::of(base_->size() * ext_.size());
  } else {
    card_ = Cardinality::infinite_truncated();
    // structural locality: A ∝ E is local iff A is, with maximal ideal M ∝ E
    const LocalityInfo& bl = base_->locality();
    locality_.computed = bl.computed;
    locality_.is_local = bl.is_local;
    if (bl.is_local) {
      for (const Enc& m : bl.max_ideal_gens)
        locality_.max_ideal_gens.push_back(join(m, ext_.zero()));
      for (const Enc& e : ext_.module_generators())
        locality_.max_ideal_gens.push_back(join(base_->zero(), e));
      locality_.residue_field = bl.residue_field;
      locality_.residue_card = bl.residue_card;
    }
  }
  (void)cfg;
}

Enc TrivialExtRing::add(const Enc& a, const Enc& b) const {
  return join(base_->add(base_part(a), base_part(b)),
              ext_.add(mod_part(a), mod_part(b)));
}

Enc TrivialExtRing::neg(const Enc& a) const {
  return join(base_->neg(base_part(a)), ext_.neg(mod_part(a)));
}

Enc TrivialExtRing::mul(const Enc& a, const Enc& b) const {
  Enc a1 = base_part(a), e1 = mod_part(a);
  Enc a2 = base_part(b), e2 = mod_part(b);
  return join(base_->mul(a1, a2), ext_.add(ext_.scalar(a1, e2), ext_.scalar(a2, e1)));
}

bool TrivialExtRing::is_unit(const Enc& a) const {
  return base_->is_unit(base_part(a));
}

std::optional<Enc> TrivialExtRing::inverse(const Enc& a) const {
  auto ai = base_->inverse(base_part(a));
  if (!ai) return std::nullopt;
  Enc sq = base_->mul(*ai, *ai);
  return join(*ai, ext_.neg(ext_.scalar(sq, mod_part(a))));
}

bool TrivialExtRing::is_regular(const Enc& a) const {
  if (finite()) return Ring::is_regular(a);
  Enc ab = base_part(a);
  if (base_->is_unit(ab)) return true;
  if (!base_->is_regular(ab)) return false;
  if (!ext_.finite()) return true;  // free module over a domain: faithful
  for (const Enc& e : ext_.reps()) {
    bool zero_e = std::all_of(e.begin(), e.end(), [](int64_t c) { return c == 0; });
    if (zero_e) continue;
    Enc img = ext_.scalar(ab, e);
    if (std::all_of(img.begin(), img.end(), [](int64_t c) { return c == 0; })) return false;
  }
  return true;
}

std::vector<int64_t> TrivialExtRing::to_coords(const Enc& e) const {
  std::vector<int64_t> c = base_->to_coords(base_part(e));
  std::vector<int64_t> ce = ext_.to_coords(mod_part(e));
  c.insert(c.end(), ce.begin(), ce.end());
  return c;
}

Enc TrivialExtRing::from_coords(const std::vector<int64_t>& c) const {
  size_t bl = base_->coord_moduli().size();
  std::vector<int64_t> cb(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(bl));
  std::vector<int64_t> ce(c.begin() + static_cast<std::ptrdiff_t>(bl), c.end());
  return join(base_->from_coords(cb), ext_.from_coords(ce));
}

RingPtr triv_extend_shape(const RingPtr& A, ModuleShape shape, const Config& cfg) {
  ExtModule ext(A, shape, cfg);
  RingDescriptor d = RingDescriptor::trivial_ext(A->desc(), std::move(shape));
  auto r = std::make_shared<TrivialExtRing>(std::move(d), A, std::move(ext), cfg);
  r->finalize(cfg);
  return r;
}

// ---------------------------------------------------------------------------
// Ideal probes

std::vector<Enc> ideal_elements(const RingPtr& R, const std::vector<Enc>& gens,
                                const Config& cfg) {
  return closure_over_base(*R, 1, gens, cfg.budget);
}

namespace {

IdealProbeReport probe_from_elements(const RingPtr& R, std::vector<Enc> gens,
                                     std::vector<Enc> elements) {
  IdealProbeReport rep;
  rep.gens = std::move(gens);
  rep.ideal_elements = std::move(elements);
  const auto* TR = dynamic_cast<const TrivialExtRing*>(R.get());
  if (TR == nullptr) return rep;

  std::unordered_set<Enc, EncHash> in_J(rep.ideal_elements.begin(), rep.ideal_elements.end());
  std::vector<Enc> I;     // projection to base components
  std::vector<Enc> Esub;  // {e : (0,e) in J}
  {
    std::unordered_set<Enc, EncHash> seen;
    for (const Enc& j : rep.ideal_elements) {
      Enc a = TR->base_part(j);
      if (seen.insert(a).second) I.push_back(a);
      if (TR->base()->is_zero(a)) Esub.push_back(TR->mod_part(j));
    }
  }
  std::sort(I.begin(), I.end());
  std::sort(Esub.begin(), Esub.end());

  bool pair_form = I.size() * Esub.size() == rep.ideal_elements.size();
  std::optional<Enc> witness;
  for (const Enc& a : I) {
    for (const Enc& e : Esub) {
      Enc cand = TR->join(a, e);
      if (!in_J.count(cand)) {
        pair_form = false;
        witness = cand;
        break;
      }
    }
    if (witness) break;
  }
  rep.has_pair_form = pair_form;
  if (witness) rep.counterexample = witness;
  if (pair_form) {
    IdealForm form;
    // reduce I to ideal generators over the base
    const RingPtr& A = TR->base();
    std::unordered_set<Enc, EncHash> covered;
    {
      std::vector<Enc> cur;
      covered.insert(A->zero());
      for (const Enc& a : I) {
        if (covered.count(a)) continue;
        cur.push_back(a);
        auto cl = ideal_elements(A, cur, Config{});
        covered = std::unordered_set<Enc, EncHash>(cl.begin(), cl.end());
        form.base_ideal_gens.push_back(a);
      }
    }
    // reduce E' to A-module generators inside E
    {
      const ExtModule& E = TR->ext();
      std::unordered_set<Enc, EncHash> span{E.zero()};
      uint64_t scalars = A->size();
      for (const Enc& e : Esub) {
        if (span.count(e)) continue;
        form.submodule_gens.push_back(e);
        std::vector<Enc> members(span.begin(), span.end());
        std::vector<Enc> frontier;
        for (uint64_t i = 0; i < scalars; ++i) {
          Enc m = E.scalar(A->element_at(i), e);
          if (span.insert(m).second) frontier.push_back(m);
        }
        while (!frontier.empty()) {
          Enc x = std::move(frontier.back());
          frontier.pop_back();
          members.push_back(x);
          for (size_t k = 0; k < members.size(); ++k) {
            Enc s = E.add(x, members[k]);
            if (span.insert(s).second) frontier.push_back(s);
          }
        }
      }
    }
    rep.pair = std::move(form);
  }
  return rep;
}

}  // namespace

IdealProbeReport ideal_pair_form_probe(const RingPtr& R, const std::vector<RingElement>& gens,
                                       const Config& cfg) {
  if (!R->finite()) fail(ErrorKind::NotFinite, "ideal probe requires a finite ring");
  std::vector<Enc> g;
  for (const auto& x : gens) {
    if (!x.ring()->same_ring(*R)) fail(ErrorKind::RingMismatch, "generator from another ring");
    g.push_back(x.enc());
  }
  std::vector<Enc> elems = ideal_elements(R, g, cfg);
  return probe_from_elements(R, std::move(g), std::move(elems));
}

std::vector<IdealProbeReport> enumerate_ideals(const RingPtr& R, const Config& cfg) {
  if (!R->finite()) fail(ErrorKind::NotFinite, "ideal census requires a finite ring");
  if (R->size() > cfg.ideal_enum_cutoff)
    fail(ErrorKind::TooLarge, "ring exceeds the ideal census cutoff");

  uint64_t n = R->size();
  std::vector<Enc> elems;
  for (uint64_t i = 0; i < n; ++i) elems.push_back(R->element_at(i));
  std::sort(elems.begin(), elems.end());

  struct Entry {
    std::vector<Enc> gens;
    std::vector<Enc> elements;
  };
  std::unordered_map<Enc, Entry, EncHash> found;  // key: flattened sorted elements
  auto key_of = [](const std::vector<Enc>& sorted_elems) {
    Enc key;
    for (const Enc& e : sorted_elems) {
      key.push_back(static_cast<int64_t>(e.size()));
      key.insert(key.end(), e.begin(), e.end());
    }
    return key;
  };

  std::vector<Enc> zero_ideal{R->zero()};
  std::vector<std::vector<Enc>> work;
  found.emplace(key_of(zero_ideal), Entry{{}, zero_ideal});
  work.push_back(zero_ideal);

  while (!work.empty()) {
    std::vector<Enc> J = std::move(work.back());
    work.pop_back();
    std::unordered_set<Enc, EncHash> inJ(J.begin(), J.end());
    Enc jkey = key_of(J);
    for (const Enc& x : elems) {
      if (inJ.count(x)) continue;
      std::vector<Enc> gens = found.at(jkey).gens;
      gens.push_back(x);
      std::vector<Enc> J2 = ideal_elements(R, gens, cfg);
      Enc key = key_of(J2);
      if (!found.count(key)) {
        found.emplace(key, Entry{gens, J2});
        work.push_back(J2);
      }
    }
  }

  std::vector<IdealProbeReport> out;
  std::vector<const Entry*> entries;
  for (const auto& [k, v] : found) entries.push_back(&v);
  std::sort(entries.begin(), entries.end(), [](const Entry* a, const Entry* b) {
    if (a->elements.size() != b->elements.size())
      return a->elements.size() < b->elements.size();
    return a->elements < b->elements;
  });
  for (const Entry* e : entries)
    out.push_back(probe_from_elements(R, e->gens, e->elements));
  return out;
}

}  // namespace trivext
