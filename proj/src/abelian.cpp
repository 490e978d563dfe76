#include "trivext/abelian.hpp"

#include <algorithm>
#include <unordered_set>

#include "trivext/errors.hpp"

namespace trivext {

namespace {

Enc multiple(const Enc& zero, const Enc& g, int64_t k, const GroupAdd& add) {
  Enc acc = zero;
  Enc pow = g;
  while (k > 0) {
    if (k & 1) acc = add(acc, pow);
    k >>= 1;
    if (k) pow = add(pow, pow);
  }
  return acc;
}

int64_t order_of(const Enc& zero, const Enc& g, const GroupAdd& add) {
  Enc cur = g;
  int64_t k = 1;
  while (cur != zero) {
    cur = add(cur, g);
    ++k;
  }
  return k;
}

struct PBasis {
  std::vector<Enc> basis;
  std::vector<int64_t> moduli;
  std::unordered_map<Enc, std::vector<int64_t>, EncHash> coords;
};

// Basis of a finite abelian p-group: peel off an element of maximal order
// (a direct summand), recurse on the quotient, and lift quotient basis
// elements to representatives of the same order.
PBasis p_group_basis(const std::vector<Enc>& elems, const Enc& zero,
                     const GroupAdd& add, const GroupNeg& neg) {
  PBasis out;
  if (elems.size() <= 1) {
    out.coords[zero] = {};
    return out;
  }

  Enc x = zero;
  int64_t xord = 1;
  for (const Enc& g : elems) {
    int64_t o = order_of(zero, g, add);
    if (o > xord || (o == xord && g < x)) {
      x = g;
      xord = o;
    }
  }

  // <x> with discrete logs.
  std::vector<Enc> xs;
  std::unordered_map<Enc, int64_t, EncHash> dlog;
  {
    Enc cur = zero;
    for (int64_t k = 0; k < xord; ++k) {
      xs.push_back(cur);
      dlog[cur] = k;
      cur = add(cur, x);
    }
  }

  // Quotient by <x>: coset representative = lexicographically least member.
  std::unordered_map<Enc, Enc, EncHash> rep;
  std::vector<Enc> qelems;
  for (const Enc& g : elems) {
    if (rep.count(g)) continue;
    Enc r = g;
    std::vector<Enc> coset;
    for (const Enc& xi : xs) {
      Enc h = add(g, xi);
      coset.push_back(h);
      if (h < r) r = h;
    }
    for (const Enc& h : coset) rep[h] = r;
    qelems.push_back(r);
  }
  std::sort(qelems.begin(), qelems.end());
  const Enc& qzero = rep.at(zero);
  GroupAdd qadd = [&](const Enc& a, const Enc& b) { return rep.at(add(a, b)); };
  GroupNeg qneg = [&](const Enc& a) { return rep.at(neg(a)); };

  PBasis sub = p_group_basis(qelems, qzero, qadd, qneg);

  // Lift each quotient basis element to one of equal order in the full group.
  std::vector<Enc> lifted;
  for (size_t i = 0; i < sub.basis.size(); ++i) {
    std::vector<Enc> coset;
    for (const Enc& xi : xs) coset.push_back(add(sub.basis[i], xi));
    std::sort(coset.begin(), coset.end());
    bool found = false;
    for (const Enc& cand : coset) {
      if (order_of(zero, cand, add) == sub.moduli[i]) {
        lifted.push_back(cand);
        found = true;
        break;
      }
    }
    if (!found)
      fatal_inconsistency("abelian basis lift failed (group law inconsistent)");
  }

  out.basis.push_back(x);
  out.moduli.push_back(xord);
  out.basis.insert(out.basis.end(), lifted.begin(), lifted.end());
  out.moduli.insert(out.moduli.end(), sub.moduli.begin(), sub.moduli.end());

  for (const Enc& g : elems) {
    const std::vector<int64_t>& qc = sub.coords.at(rep.at(g));
    Enc acc = zero;
    for (size_t i = 0; i < lifted.size(); ++i)
      acc = add(acc, multiple(zero, lifted[i], qc[i], add));
    Enc r = add(g, neg(acc));
    auto it = dlog.find(r);
    if (it == dlog.end())
      fatal_inconsistency("abelian basis residue outside cyclic part");
    std::vector<int64_t> c;
    c.reserve(1 + qc.size());
    c.push_back(it->second);
    c.insert(c.end(), qc.begin(), qc.end());
    out.coords[g] = std::move(c);
  }
  return out;
}

}  // namespace

AbelianBasis abelian_basis(const std::vector<Enc>& elements, const Enc& zero,
                           const GroupAdd& add, const GroupNeg& neg) {
  AbelianBasis out;
  uint64_t n = elements.size();
  if (n == 0) fatal_inconsistency("abelian_basis on empty set");

  // Prime factorization of the group order.
  std::vector<std::pair<int64_t, int64_t>> pf;  // (p, p^a)
  {
    uint64_t m = n;
    for (int64_t p = 2; static_cast<uint64_t>(p) * p <= m; ++p) {
      if (m % p == 0) {
        int64_t pa = 1;
        while (m % p == 0) {
          m /= p;
          pa *= p;
        }
        pf.emplace_back(p, pa);
      }
    }
    if (m > 1) pf.emplace_back(static_cast<int64_t>(m), static_cast<int64_t>(m));
  }
  if (pf.empty()) {  // trivial group
    out.coords[zero] = {};
    out.elem_by_coords[Enc{}] = zero;
    return out;
  }

  struct SylowPart {
    std::vector<Enc> elems;
    PBasis basis;
    int64_t lambda;  // CRT projector coefficient
  };
  std::vector<SylowPart> parts;

  for (auto [p, pa] : pf) {
    int64_t cof = static_cast<int64_t>(n) / pa;
    // lambda = cof * (cof^{-1} mod pa): acts as identity on the p-part and
    // kills the others.
    int64_t inv = 1;
    {
      int64_t a = cof % pa, best = 1;
      for (int64_t t = 1; t < pa; ++t) {
        if ((a * t) % pa == 1) {
          best = t;
          break;
        }
      }
      inv = best;
    }
    int64_t lambda = cof * inv;

    std::unordered_set<Enc, EncHash> seen;
    std::vector<Enc> selems;
    for (const Enc& g : elements) {
      Enc h = multiple(zero, g, cof, add);
      if (seen.insert(h).second) selems.push_back(h);
    }
    std::sort(selems.begin(), selems.end());
    SylowPart part;
    part.elems = std::move(selems);
    part.basis = p_group_basis(part.elems, zero, add, neg);
    part.lambda = lambda;
    parts.push_back(std::move(part));
  }

  uint64_t expect = 1;
  for (const auto& part : parts) {
    out.basis.insert(out.basis.end(), part.basis.basis.begin(), part.basis.basis.end());
    out.moduli.insert(out.moduli.end(), part.basis.moduli.begin(), part.basis.moduli.end());
  }
  for (int64_t m : out.moduli) expect *= static_cast<uint64_t>(m);
  if (expect != n) fatal_inconsistency("abelian basis order mismatch");

  for (const Enc& g : elements) {
    std::vector<int64_t> c;
    for (const auto& part : parts) {
      Enc gp = multiple(zero, g, part.lambda, add);
      const auto& pc = part.basis.coords.at(gp);
      c.insert(c.end(), pc.begin(), pc.end());
    }
    out.elem_by_coords[Enc(c.begin(), c.end())] = g;
    out.coords[g] = std::move(c);
  }
  if (out.elem_by_coords.size() != n)
    fatal_inconsistency("abelian basis coordinates not bijective");
  return out;
}

std::vector<int64_t> AbelianBasis::coords_of(const Enc& e) const {
  auto it = coords.find(e);
  if (it == coords.end()) fatal_inconsistency("element outside abelian basis domain");
  return it->second;
}

const Enc& AbelianBasis::elem_of(const std::vector<int64_t>& c) const {
  auto it = elem_by_coords.find(Enc(c.begin(), c.end()));
  if (it == elem_by_coords.end())
    fatal_inconsistency("coordinates outside abelian basis range");
  return it->second;
}

}  // namespace trivext
