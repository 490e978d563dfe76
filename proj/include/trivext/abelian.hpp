#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "trivext/encoding.hpp"

namespace trivext {

// Cyclic decomposition of a finite abelian group given by an element list and
// its operation: basis elements b_i of order moduli[i] such that every group
// element is uniquely sum c_i * b_i with 0 <= c_i < moduli[i].
struct AbelianBasis {
  std::vector<Enc> basis;
  std::vector<int64_t> moduli;
  std::unordered_map<Enc, std::vector<int64_t>, EncHash> coords;
  std::unordered_map<Enc, Enc, EncHash> elem_by_coords;  // key: coords as Enc

  std::vector<int64_t> coords_of(const Enc& e) const;
  const Enc& elem_of(const std::vector<int64_t>& c) const;
};

using GroupAdd = std::function<Enc(const Enc&, const Enc&)>;
using GroupNeg = std::function<Enc(const Enc&)>;

AbelianBasis abelian_basis(const std::vector<Enc>& elements, const Enc& zero,
                           const GroupAdd& add, const GroupNeg& neg);

}  // namespace trivext
