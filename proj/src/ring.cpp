#include "trivext/ring.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "trivext/abelian.hpp"

namespace trivext {

namespace {

bool is_prime64(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t mod_norm(int64_t x, int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

int64_t mod_inverse(int64_t a, int64_t m) {  // -1 if none
  int64_t g = mod_norm(a, m), b = m, x0 = 1, x1 = 0;
  while (b != 0) {
    int64_t t = g / b;
    g -= t * b;
    std::swap(g, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  if (g != 1 && g != -1) return -1;
  return mod_norm(g == 1 ? x0 : -x0, m);
}

// --- dense polynomial helpers over GF(p), coefficients ascending ---

void poly_trim(Enc& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Enc poly_mul(const Enc& a, const Enc& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Enc c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = mod_norm(c[i + j] + a[i] * b[j], p);
  }
  poly_trim(c);
  return c;
}

// Remainder of a by monic m.
Enc poly_rem(Enc a, const Enc& m, int64_t p) {
  poly_trim(a);
  size_t dm = m.size() - 1;
  while (a.size() > dm) {
    int64_t lead = a.back();
    size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (size_t i = 0; i < m.size(); ++i)
        a[shift + i] = mod_norm(a[shift + i] - lead * m[i], p);
    }
    a.pop_back();
    poly_trim(a);
    if (a.size() <= dm) break;
  }
  return a;
}

// gcd + Bezout x with x*a = g (mod m), m monic; used for inverses in
// GF(p)[x]/(m).
struct PolyExt {
  Enc g, x;
};
PolyExt poly_extgcd(Enc a, Enc b, int64_t p) {
  // returns g = gcd(a,b) and x with x*a ≡ g mod b0 (we only track x)
  Enc x0{1}, x1{};
  Enc r0 = a, r1 = b;
  poly_trim(r0);
  poly_trim(r1);
  while (!r1.empty()) {
    // divide r0 by r1 (r1 need not be monic: normalize by lead inverse)
    int64_t lead = r1.back();
    int64_t li = mod_inverse(lead, p);
    Enc q(std::max<size_t>(r0.size(), 1), 0);
    Enc rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      int64_t f = mod_norm(rem.back() * li, p);
      size_t shift = rem.size() - r1.size();
      if (f != 0) {
        if (q.size() <= shift) q.resize(shift + 1, 0);
        q[shift] = mod_norm(q[shift] + f, p);
        for (size_t i = 0; i < r1.size(); ++i)
          rem[shift + i] = mod_norm(rem[shift + i] - f * r1[i], p);
      }
      poly_trim(rem);
      if (rem.size() < r1.size()) break;
    }
    poly_trim(q);
    // (r0, r1) <- (r1, rem); (x0, x1) <- (x1, x0 - q*x1)
    Enc qx = poly_mul(q, x1, p);
    Enc nx = x0;
    if (nx.size() < qx.size()) nx.resize(qx.size(), 0);
    for (size_t i = 0; i < qx.size(); ++i) nx[i] = mod_norm(nx[i] - qx[i], p);
    poly_trim(nx);
    r0 = r1;
    r1 = rem;
    x0 = x1;
    x1 = nx;
  }
  return {r0, x0};
}

bool poly_is_irreducible(const Enc& f, int64_t p) {
  size_t k = f.size() - 1;
  if (k < 1) return false;
  // trial division by all monic polynomials of degree 1..k/2
  for (size_t d = 1; 2 * d <= k; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= static_cast<uint64_t>(p);
    for (uint64_t ci = 0; ci < count; ++ci) {
      Enc g(d + 1, 0);
      uint64_t v = ci;
      for (size_t i = 0; i < d; ++i) {
        g[i] = static_cast<int64_t>(v % static_cast<uint64_t>(p));
        v /= static_cast<uint64_t>(p);
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Enc smallest_irreducible_poly(int64_t p, int64_t k) {
  uint64_t count = 1;
  for (int64_t i = 0; i < k; ++i) count *= static_cast<uint64_t>(p);
  for (uint64_t i = 0; i < count; ++i) {
    Enc f(static_cast<size_t>(k + 1), 0);
    uint64_t v = i;
    // decode with c0 most significant so ascending i is lex order on (c0,..)
    for (int64_t j = k - 1; j >= 0; --j) {
      f[static_cast<size_t>(k - 1 - j)] =
          static_cast<int64_t>((v / [&] {
            uint64_t pw = 1;
            for (int64_t t = 0; t < j; ++t) pw *= static_cast<uint64_t>(p);
            return pw;
          }()) % static_cast<uint64_t>(p));
    }
    f[static_cast<size_t>(k)] = 1;
    if (poly_is_irreducible(f, p)) return f;
  }
  fail(ErrorKind::Internal, "no irreducible polynomial found");
}

RingDescriptor canonical_field_descriptor(uint64_t q) {
  if (q < 2) fail(ErrorKind::Internal, "field order must be >= 2");
  int64_t p = 2;
  while (q % static_cast<uint64_t>(p) != 0) ++p;
  uint64_t m = q;
  int64_t k = 0;
  while (m % static_cast<uint64_t>(p) == 0) {
    m /= static_cast<uint64_t>(p);
    ++k;
  }
  if (m != 1)
    fail(ErrorKind::Internal, "field order " + std::to_string(q) + " is not a prime power");
  if (k == 1) return RingDescriptor::gfp(p);
  return RingDescriptor::poly_quotient(p, smallest_irreducible_poly(p, k));
}

// ---------------------------------------------------------------------------
// Ring base machinery

uint64_t Ring::size() const {
  if (!card_.finite) fail(ErrorKind::NotFinite, desc_.to_string() + " is not finite");
  return card_.count;
}

bool Ring::is_zero(const Enc& e) const {
  for (int64_t v : e)
    if (v != 0) return false;
  return true;
}

Enc Ring::element_at(uint64_t i) const {
  std::vector<int64_t> c(coord_moduli_.size(), 0);
  for (size_t j = coord_moduli_.size(); j-- > 0;) {
    c[j] = static_cast<int64_t>(i % static_cast<uint64_t>(coord_moduli_[j]));
    i /= static_cast<uint64_t>(coord_moduli_[j]);
  }
  return from_coords(c);
}

const RingTable& Ring::table() const {
  if (!table_)
    fail(ErrorKind::TooLarge,
         desc_.to_string() + " has no operation tables (not finite or above cutoff)");
  return *table_;
}

uint32_t RingTable::index(const Enc& e) const {
  auto it = index_of.find(e);
  if (it == index_of.end()) fatal_inconsistency("element not in ring table");
  return it->second;
}

bool Ring::is_regular(const Enc& a) const {
  if (!card_.finite)
    fail(ErrorKind::NotFinite, "regularity undecidable for " + desc_.to_string());
  if (table_) {
    const RingTable& t = *table_;
    uint32_t i = t.index(a);
    for (uint32_t j = 0; j < t.q; ++j) {
      if (j == t.zero) continue;
      if (t.mul(i, j) == t.zero) return false;
    }
    return true;
  }
  for (uint64_t j = 0; j < card_.count; ++j) {
    Enc y = element_at(j);
    if (is_zero(y)) continue;
    if (is_zero(mul(a, y))) return false;
  }
  return true;
}

namespace {

// Ideal generated by `gens` inside a table-backed finite ring, as an index set.
std::vector<uint8_t> ideal_closure(const RingTable& t, const std::vector<uint32_t>& gens) {
  std::vector<uint8_t> in(t.q, 0);
  in[t.zero] = 1;
  // additive closure of all multiples of the generators
  std::vector<uint32_t> seeds;
  for (uint32_t g : gens)
    for (uint32_t r = 0; r < t.q; ++r) {
      uint32_t m = t.mul(r, g);
      if (!in[m]) {
        in[m] = 1;
        seeds.push_back(m);
      }
    }
  std::vector<uint32_t> work(seeds);
  std::vector<uint32_t> members{t.zero};
  members.insert(members.end(), seeds.begin(), seeds.end());
  while (!work.empty()) {
    uint32_t x = work.back();
    work.pop_back();
    for (size_t k = 0; k < members.size(); ++k) {
      uint32_t s = t.add(x, members[k]);
      if (!in[s]) {
        in[s] = 1;
        members.push_back(s);
        work.push_back(s);
      }
    }
  }
  return in;
}

}  // namespace

void Ring::finalize(const Config& cfg) {
  // index machinery stores element indices in uint16_t
  uint64_t table_cutoff = std::min<uint64_t>(cfg.table_cutoff, 65535);
  if (card_.finite && card_.count <= table_cutoff) {
    auto t = std::make_shared<RingTable>();
    t->q = static_cast<uint32_t>(card_.count);
    t->elems.reserve(t->q);
    for (uint32_t i = 0; i < t->q; ++i) {
      Enc e = element_at(i);
      t->index_of.emplace(e, i);
      t->elems.push_back(std::move(e));
    }
    if (t->index_of.size() != t->q)
      fatal_inconsistency("element enumeration is not injective for " + desc_.to_string());
    t->add_t.resize(static_cast<size_t>(t->q) * t->q);
    t->mul_t.resize(static_cast<size_t>(t->q) * t->q);
    t->neg_t.resize(t->q);
    t->inv_t.assign(t->q, -1);
    t->unit_t.assign(t->q, 0);
    t->coords.reserve(t->q);
    for (uint32_t i = 0; i < t->q; ++i) {
      const Enc& a = t->elems[i];
      for (uint32_t j = 0; j < t->q; ++j) {
        const Enc& b = t->elems[j];
        t->add_t[static_cast<size_t>(i) * t->q + j] =
            static_cast<uint16_t>(t->index(add(a, b)));
        t->mul_t[static_cast<size_t>(i) * t->q + j] =
            static_cast<uint16_t>(t->index(mul(a, b)));
      }
      t->neg_t[i] = static_cast<uint16_t>(t->index(neg(a)));
      if (is_unit(a)) {
        t->unit_t[i] = 1;
        auto inv = inverse(a);
        if (!inv) fatal_inconsistency("unit without inverse");
        t->inv_t[i] = static_cast<int32_t>(t->index(*inv));
      }
      t->coords.push_back(to_coords(a));
    }
    t->zero = t->index(zero());
    t->one = t->index(one_);
    table_ = std::move(t);
  }

  if (table_ && card_.count <= cfg.axiom_check_cutoff) {
    const RingTable& t = *table_;
    uint32_t q = t.q;
    if (t.zero == t.one) fail(ErrorKind::AxiomViolation, "0 = 1 in " + desc_.to_string());
    for (uint32_t i = 0; i < q; ++i) {
      if (t.add(i, t.zero) != i) fail(ErrorKind::AxiomViolation, "additive identity");
      if (t.mul(i, t.one) != i) fail(ErrorKind::AxiomViolation, "multiplicative identity");
      if (t.add(i, t.neg(i)) != t.zero) fail(ErrorKind::AxiomViolation, "additive inverse");
      for (uint32_t j = i; j < q; ++j) {
        if (t.add(i, j) != t.add(j, i)) fail(ErrorKind::AxiomViolation, "additive commutativity");
        if (t.mul(i, j) != t.mul(j, i)) fail(ErrorKind::AxiomViolation, "multiplicative commutativity");
      }
    }
    for (uint32_t i = 0; i < q; ++i)
      for (uint32_t j = 0; j < q; ++j)
        for (uint32_t k = 0; k < q; ++k) {
          if (t.add(t.add(i, j), k) != t.add(i, t.add(j, k)))
            fail(ErrorKind::AxiomViolation, "additive associativity");
          if (t.mul(t.mul(i, j), k) != t.mul(i, t.mul(j, k)))
            fail(ErrorKind::AxiomViolation, "multiplicative associativity");
          if (t.mul(i, t.add(j, k)) != t.add(t.mul(i, j), t.mul(i, k)))
            fail(ErrorKind::AxiomViolation, "distributivity");
        }
  }

  if (table_ && !locality_.computed) {
    const RingTable& t = *table_;
    std::vector<uint32_t> nonunits;
    for (uint32_t i = 0; i < t.q; ++i)
      if (!t.unit(i)) nonunits.push_back(i);
    bool closed = true;
    for (size_t a = 0; a < nonunits.size() && closed; ++a)
      for (size_t b = a; b < nonunits.size(); ++b) {
        if (t.unit(t.add(nonunits[a], nonunits[b]))) {
          closed = false;
          break;
        }
      }
    locality_.computed = true;
    locality_.is_local = closed;
    if (closed) {
      std::vector<uint8_t> in_ideal(t.q, 0);
      in_ideal[t.zero] = 1;
      std::vector<uint32_t> gens;
      for (uint32_t x : nonunits) {
        if (in_ideal[x]) continue;
        gens.push_back(x);
        in_ideal = ideal_closure(t, gens);
      }
      // prune redundant generators (irredundant = minimal over a local ring)
      for (size_t g = 0; g < gens.size();) {
        std::vector<uint32_t> rest;
        for (size_t k = 0; k < gens.size(); ++k)
          if (k != g) rest.push_back(gens[k]);
        std::vector<uint8_t> cl = ideal_closure(t, rest);
        bool covers = true;
        for (uint32_t x : nonunits)
          if (!cl[x]) {
            covers = false;
            break;
          }
        if (covers)
          gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(g));
        else
          ++g;
      }
      for (uint32_t g : gens) locality_.max_ideal_gens.push_back(t.elems[g]);
      uint64_t m_size = nonunits.size();
      if (card_.count % m_size != 0)
        fatal_inconsistency("maximal ideal size does not divide ring size");
      locality_.residue_card = card_.count / m_size;
      locality_.residue_field = canonical_field_descriptor(locality_.residue_card);
    }
  }
}

// ---------------------------------------------------------------------------
// RingElement and free helpers

RingElement operator+(const RingElement& a, const RingElement& b) {
  if (!a.ring()->same_ring(*b.ring()))
    fail(ErrorKind::RingMismatch, "elements of different rings");
  return {a.ring(), a.ring()->add(a.enc(), b.enc())};
}
RingElement operator-(const RingElement& a, const RingElement& b) {
  if (!a.ring()->same_ring(*b.ring()))
    fail(ErrorKind::RingMismatch, "elements of different rings");
  return {a.ring(), a.ring()->sub(a.enc(), b.enc())};
}
RingElement operator*(const RingElement& a, const RingElement& b) {
  if (!a.ring()->same_ring(*b.ring()))
    fail(ErrorKind::RingMismatch, "elements of different rings");
  return {a.ring(), a.ring()->mul(a.enc(), b.enc())};
}

RingElement arith(ArithOp op, const RingElement& x, const RingElement& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Neg: return -x;
  }
  fail(ErrorKind::Internal, "bad op");
}

bool is_unit(const RingElement& x) { return x.ring()->is_unit(x.enc()); }

RingElement inverse(const RingElement& x) {
  auto inv = x.ring()->inverse(x.enc());
  if (!inv) fail(ErrorKind::NotAUnit, x.str() + " is not a unit");
  return {x.ring(), *inv};
}

bool is_regular(const RingElement& x) { return x.ring()->is_regular(x.enc()); }

uint64_t ring_size(const RingPtr& R) { return R->size(); }

RingElement element_at(const RingPtr& R, uint64_t i) {
  return {R, R->element_at(i)};
}

std::vector<RingElement> all_elements(const RingPtr& R) {
  uint64_t n = R->size();
  std::vector<RingElement> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.emplace_back(R, R->element_at(i));
  return out;
}

std::vector<RingElement> idempotents(const RingPtr& R) {
  uint64_t n = R->size();
  std::vector<RingElement> out;
  for (uint64_t i = 0; i < n; ++i) {
    Enc e = R->element_at(i);
    if (R->mul(e, e) == e) out.emplace_back(R, e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Concrete rings

class ZModRing final : public Ring {
 public:
  ZModRing(RingDescriptor d, int64_t n) : n_(n) {
    desc_ = std::move(d);
    card_ = Cardinality::of(static_cast<uint64_t>(n));
    enc_len_ = 1;
    one_ = Enc{1 % n};
    coord_moduli_ = {n};
  }
  Enc add(const Enc& a, const Enc& b) const override { return {mod_norm(a[0] + b[0], n_)}; }
  Enc neg(const Enc& a) const override { return {mod_norm(-a[0], n_)}; }
  Enc mul(const Enc& a, const Enc& b) const override { return {mod_norm(a[0] * b[0], n_)}; }
  bool is_unit(const Enc& a) const override { return std::gcd(a[0], n_) == 1; }
  std::optional<Enc> inverse(const Enc& a) const override {
    int64_t i = mod_inverse(a[0], n_);
    if (i < 0) return std::nullopt;
    return Enc{i};
  }
  std::vector<int64_t> to_coords(const Enc& e) const override { return {e[0]}; }
  Enc from_coords(const std::vector<int64_t>& c) const override {
    return {mod_norm(c[0], n_)};
  }

 private:
  int64_t n_;
};

class PolyQuotientRing final : public Ring {
 public:
  PolyQuotientRing(RingDescriptor d, int64_t p, Enc modulus)
      : p_(p), modulus_(std::move(modulus)), deg_(static_cast<int64_t>(modulus_.size()) - 1) {
    desc_ = std::move(d);
    uint64_t c = 1;
    for (int64_t i = 0; i < deg_; ++i) c *= static_cast<uint64_t>(p_);
    card_ = Cardinality::of(c);
    enc_len_ = deg_;
    one_ = zero();
    one_[0] = 1 % p_;
    coord_moduli_.assign(static_cast<size_t>(deg_), p_);
  }
  Enc add(const Enc& a, const Enc& b) const override {
    Enc c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mod_norm(a[i] + b[i], p_);
    return c;
  }
  Enc neg(const Enc& a) const override {
    Enc c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mod_norm(-a[i], p_);
    return c;
  }
  Enc mul(const Enc& a, const Enc& b) const override {
    Enc prod = poly_mul(a, b, p_);
    Enc rem = poly_rem(std::move(prod), modulus_, p_);
    rem.resize(static_cast<size_t>(deg_), 0);
    return rem;
  }
  bool is_unit(const Enc& a) const override {
    Enc aa = a;
    poly_trim(aa);
    if (aa.empty()) return false;
    PolyExt eg = poly_extgcd(aa, modulus_, p_);
    return eg.g.size() == 1;  // gcd is a nonzero constant
  }
  std::optional<Enc> inverse(const Enc& a) const override {
    Enc aa = a;
    poly_trim(aa);
    if (aa.empty()) return std::nullopt;
    PolyExt eg = poly_extgcd(aa, modulus_, p_);
    if (eg.g.size() != 1) return std::nullopt;
    int64_t gi = mod_inverse(eg.g[0], p_);
    Enc x = eg.x;
    for (auto& c : x) c = mod_norm(c * gi, p_);
    Enc rem = poly_rem(std::move(x), modulus_, p_);
    rem.resize(static_cast<size_t>(deg_), 0);
    return rem;
  }
  std::vector<int64_t> to_coords(const Enc& e) const override {
    return std::vector<int64_t>(e.begin(), e.end());
  }
  Enc from_coords(const std::vector<int64_t>& c) const override {
    Enc e(c.size());
    for (size_t i = 0; i < c.size(); ++i) e[i] = mod_norm(c[i], p_);
    return e;
  }

 private:
  int64_t p_;
  Enc modulus_;
  int64_t deg_;
};

class SeriesTruncRing final : public Ring {
 public:
  SeriesTruncRing(RingDescriptor d, int64_t p, int64_t N) : p_(p), prec_(N) {
    desc_ = std::move(d);
    card_ = Cardinality::infinite_truncated();
    enc_len_ = N;
    one_ = zero();
    one_[0] = 1 % p_;
    coord_moduli_.assign(static_cast<size_t>(N), p_);
    locality_.computed = true;
    locality_.is_local = true;
    Enc x = zero();
    if (N >= 2)
      x[1] = 1;
    locality_.max_ideal_gens = {x};
    locality_.residue_field = RingDescriptor::gfp(p_);
    locality_.residue_card = static_cast<uint64_t>(p_);
  }
  Enc add(const Enc& a, const Enc& b) const override {
    Enc c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mod_norm(a[i] + b[i], p_);
    return c;
  }
  Enc neg(const Enc& a) const override {
    Enc c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mod_norm(-a[i], p_);
    return c;
  }
  Enc mul(const Enc& a, const Enc& b) const override {
    Enc c(static_cast<size_t>(prec_), 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; i + j < static_cast<size_t>(prec_); ++j)
        c[i + j] = mod_norm(c[i + j] + a[i] * b[j], p_);
    }
    return c;
  }
  bool is_unit(const Enc& a) const override { return a[0] != 0; }
  std::optional<Enc> inverse(const Enc& a) const override {
    if (a[0] == 0) return std::nullopt;
    int64_t c0 = mod_inverse(a[0], p_);
    Enc b(static_cast<size_t>(prec_), 0);
    b[0] = c0;
    for (size_t k = 1; k < static_cast<size_t>(prec_); ++k) {
      int64_t s = 0;
      for (size_t i = 1; i <= k; ++i) s = mod_norm(s + a[i] * b[k - i], p_);
      b[k] = mod_norm(-c0 * s, p_);
    }
    return b;
  }
  // Symbolic judgment for the untruncated power series domain.
  bool is_regular(const Enc& a) const override { return !is_zero(a); }
  std::vector<int64_t> to_coords(const Enc& e) const override {
    return std::vector<int64_t>(e.begin(), e.end());
  }
  Enc from_coords(const std::vector<int64_t>& c) const override {
    Enc e(c.size());
    for (size_t i = 0; i < c.size(); ++i) e[i] = mod_norm(c[i], p_);
    return e;
  }

 private:
  int64_t p_;
  int64_t prec_;
};

class ProductRing final : public Ring {
 public:
  ProductRing(RingDescriptor d, std::vector<RingPtr> factors)
      : factors_(std::move(factors)) {
    desc_ = std::move(d);
    bool finite = true;
    uint64_t count = 1;
    enc_len_ = 0;
    for (const auto& f : factors_) {
      offsets_.push_back(enc_len_);
      enc_len_ += f->enc_len();
      if (!f->cardinality().finite)
        finite = false;
      else if (finite) {
        if (count > (1ull << 62) / std::max<uint64_t>(1, f->cardinality().count))
          fail(ErrorKind::TooLarge, "product cardinality overflow");
        count *= f->cardinality().count;
      }
      for (int64_t m : f->coord_moduli()) coord_moduli_.push_back(m);
    }
    card_ = finite ? Cardinality::of(count) : Cardinality::infinite_truncated();
    one_.clear();
    for (const auto& f : factors_) one_ = enc_concat(one_, f->one());
  }
  Enc piece(const Enc& e, size_t i) const {
    return enc_slice(e, static_cast<size_t>(offsets_[i]),
                     static_cast<size_t>(factors_[i]->enc_len()));
  }
  template <typename F>
  Enc zip(const Enc& a, const Enc& b, F&& f) const {
    Enc out;
    out.reserve(static_cast<size_t>(enc_len_));
    for (size_t i = 0; i < factors_.size(); ++i) {
      Enc r = f(*factors_[i], piece(a, i), piece(b, i));
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  Enc add(const Enc& a, const Enc& b) const override {
    return zip(a, b, [](const Ring& r, const Enc& x, const Enc& y) { return r.add(x, y); });
  }
  Enc mul(const Enc& a, const Enc& b) const override {
    return zip(a, b, [](const Ring& r, const Enc& x, const Enc& y) { return r.mul(x, y); });
  }
  Enc neg(const Enc& a) const override {
    Enc out;
    out.reserve(static_cast<size_t>(enc_len_));
    for (size_t i = 0; i < factors_.size(); ++i) {
      Enc r = factors_[i]->neg(piece(a, i));
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  bool is_unit(const Enc& a) const override {
    for (size_t i = 0; i < factors_.size(); ++i)
      if (!factors_[i]->is_unit(piece(a, i))) return false;
    return true;
  }
  std::optional<Enc> inverse(const Enc& a) const override {
    Enc out;
    for (size_t i = 0; i < factors_.size(); ++i) {
      auto inv = factors_[i]->inverse(piece(a, i));
      if (!inv) return std::nullopt;
      out.insert(out.end(), inv->begin(), inv->end());
    }
    return out;
  }
  std::vector<int64_t> to_coords(const Enc& e) const override {
    std::vector<int64_t> c;
    for (size_t i = 0; i < factors_.size(); ++i) {
      auto ci = factors_[i]->to_coords(piece(e, i));
      c.insert(c.end(), ci.begin(), ci.end());
    }
    return c;
  }
  Enc from_coords(const std::vector<int64_t>& c) const override {
    Enc out;
    size_t off = 0;
    for (const auto& f : factors_) {
      size_t len = f->coord_moduli().size();
      std::vector<int64_t> ci(c.begin() + static_cast<std::ptrdiff_t>(off),
                              c.begin() + static_cast<std::ptrdiff_t>(off + len));
      Enc e = f->from_coords(ci);
      out.insert(out.end(), e.begin(), e.end());
      off += len;
    }
    return out;
  }
  std::vector<RingPtr> product_factors() const override { return factors_; }

 private:
  std::vector<RingPtr> factors_;
  std::vector<int64_t> offsets_;
};

// eR for an idempotent e: a commutative ring with identity e, sharing the
// parent's encodings.
class CornerRing final : public Ring {
 public:
  CornerRing(const RingPtr& parent, Enc idem, const Config& cfg)
      : parent_(parent) {
    uint64_t n = parent->size();
    std::unordered_set<Enc, EncHash> seen;
    std::vector<Enc> elems;
    for (uint64_t i = 0; i < n; ++i) {
      Enc e = parent->mul(idem, parent->element_at(i));
      if (seen.insert(e).second) elems.push_back(e);
    }
    std::sort(elems.begin(), elems.end());
    basis_ = abelian_basis(
        elems, parent->zero(),
        [&](const Enc& a, const Enc& b) { return parent->add(a, b); },
        [&](const Enc& a) { return parent->neg(a); });
    desc_ = RingDescriptor::corner(parent->desc(), idem);
    card_ = Cardinality::of(elems.size());
    enc_len_ = parent->enc_len();
    one_ = idem;
    coord_moduli_ = basis_.moduli;
    elems_ = std::move(elems);
    // units of eR: y with yz = e for some z
    for (const Enc& y : elems_) {
      for (const Enc& z : elems_) {
        if (parent_->mul(y, z) == one_) {
          inv_of_.emplace(y, z);
          break;
        }
      }
    }
    (void)cfg;
  }
  Enc add(const Enc& a, const Enc& b) const override { return parent_->add(a, b); }
  Enc neg(const Enc& a) const override { return parent_->neg(a); }
  Enc mul(const Enc& a, const Enc& b) const override { return parent_->mul(a, b); }
  bool is_unit(const Enc& a) const override { return inv_of_.count(a) != 0; }
  std::optional<Enc> inverse(const Enc& a) const override {
    auto it = inv_of_.find(a);
    if (it == inv_of_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<int64_t> to_coords(const Enc& e) const override {
    return basis_.coords_of(e);
  }
  Enc from_coords(const std::vector<int64_t>& c) const override {
    std::vector<int64_t> cc(c.size());
    for (size_t i = 0; i < c.size(); ++i) cc[i] = mod_norm(c[i], basis_.moduli[i]);
    return basis_.elem_of(cc);
  }

 private:
  RingPtr parent_;
  std::vector<Enc> elems_;
  AbelianBasis basis_;
  std::unordered_map<Enc, Enc, EncHash> inv_of_;
};

RingPtr make_corner_ring(const RingPtr& parent, const Enc& idem, const Config& cfg) {
  if (!parent->finite()) fail(ErrorKind::NotFinite, "corner of an infinite ring");
  auto r = std::make_shared<CornerRing>(parent, idem, cfg);
  r->finalize(cfg);
  return r;
}

std::vector<LocalFactor> decompose_into_local_factors(const RingPtr& R, const Config& cfg) {
  uint64_t n = R->size();
  std::vector<Enc> idems;
  for (uint64_t i = 0; i < n; ++i) {
    Enc e = R->element_at(i);
    if (R->mul(e, e) == e && !R->is_zero(e)) idems.push_back(e);
  }
  std::sort(idems.begin(), idems.end());
  std::vector<Enc> prims;
  for (const Enc& e : idems) {
    bool primitive = true;
    for (const Enc& f : idems) {
      if (f == e) continue;
      if (R->mul(f, e) == f) {  // 0 != f < e
        primitive = false;
        break;
      }
    }
    if (primitive) prims.push_back(e);
  }
  // sanity: orthogonal and summing to 1
  Enc sum = R->zero();
  for (size_t i = 0; i < prims.size(); ++i) {
    for (size_t j = i + 1; j < prims.size(); ++j)
      if (!R->is_zero(R->mul(prims[i], prims[j])))
        fatal_inconsistency("primitive idempotents not orthogonal");
    sum = R->add(sum, prims[i]);
  }
  if (sum != R->one()) fatal_inconsistency("primitive idempotents do not sum to 1");

  std::vector<LocalFactor> out;
  if (prims.size() == 1) {
    out.push_back({R, RingElement(R, R->one())});
    return out;
  }
  for (const Enc& e : prims) {
    LocalFactor f;
    f.factor = make_corner_ring(R, e, cfg);
    f.idempotent = RingElement(R, e);
    if (!f.factor->locality().is_local)
      fatal_inconsistency("corner at a primitive idempotent is not local");
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factory for the descriptor kinds that do not involve trivial extensions
// (those are completed in construct.cpp).

RingPtr construct_simple_ring(const RingDescriptor& d, const Config& cfg) {
  switch (d.kind) {
    case RingDescriptor::Kind::ZMod: {
      if (d.n < 2) fail(ErrorKind::InvalidDescriptor, "Z/n requires n >= 2");
      auto r = std::make_shared<ZModRing>(d, d.n);
      r->finalize(cfg);
      return r;
    }
    case RingDescriptor::Kind::PrimeField: {
      if (!is_prime64(d.n))
        fail(ErrorKind::InvalidDescriptor, "GF(p) requires prime p, got " + std::to_string(d.n));
      auto r = std::make_shared<ZModRing>(d, d.n);
      r->finalize(cfg);
      return r;
    }
    case RingDescriptor::Kind::PolyQuotient: {
      if (!is_prime64(d.n))
        fail(ErrorKind::InvalidDescriptor, "polynomial quotient base must be prime");
      if (d.poly.size() < 2)
        fail(ErrorKind::InvalidDescriptor, "modulus must be nonconstant");
      for (int64_t c : d.poly)
        if (c < 0 || c >= d.n)
          fail(ErrorKind::InvalidDescriptor, "modulus coefficients must lie in [0,p)");
      if (d.poly.back() != 1)
        fail(ErrorKind::InvalidDescriptor, "modulus must be monic");
      auto r = std::make_shared<PolyQuotientRing>(d, d.n, d.poly);
      r->finalize(cfg);
      return r;
    }
    case RingDescriptor::Kind::SeriesTrunc: {
      if (!is_prime64(d.n))
        fail(ErrorKind::InvalidDescriptor, "series base must be prime");
      if (d.trunc < 1) fail(ErrorKind::InvalidDescriptor, "series precision must be >= 1");
      auto r = std::make_shared<SeriesTruncRing>(d, d.n, d.trunc);
      r->finalize(cfg);
      return r;
    }
    case RingDescriptor::Kind::Product: {
      if (d.children.empty())
        fail(ErrorKind::InvalidDescriptor, "product requires at least one factor");
      std::vector<RingPtr> factors;
      for (const auto& c : d.children) factors.push_back(construct_ring(c, cfg));
      auto r = std::make_shared<ProductRing>(d, std::move(factors));
      r->finalize(cfg);
      return r;
    }
    case RingDescriptor::Kind::Corner: {
      RingPtr parent = construct_ring(d.children[0], cfg);
      return make_corner_ring(parent, d.idem, cfg);
    }
    case RingDescriptor::Kind::TrivialExt:
      fail(ErrorKind::Internal, "trivial extension handled elsewhere");
  }
  fail(ErrorKind::Internal, "unknown descriptor kind");
}

}  // namespace trivext
