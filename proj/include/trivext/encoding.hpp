#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace trivext {

// Canonical element encoding: a fixed-length vector of small nonnegative
// integers. Two elements of the same ring are equal iff their encodings are
// identical, and every arithmetic result is re-canonicalized before it is
// returned.
using Enc = std::vector<int64_t>;

struct EncHash {
  size_t operator()(const Enc& e) const {
    size_t h = 0xcbf29ce484222325ull;
    for (int64_t v : e) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline bool enc_lex_less(const Enc& a, const Enc& b) {
  return a < b;  // std::vector lexicographic compare
}

inline Enc enc_concat(const Enc& a, const Enc& b) {
  Enc r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Enc enc_slice(const Enc& e, size_t from, size_t len) {
  return Enc(e.begin() + from, e.begin() + from + len);
}

std::string enc_to_debug_string(const Enc& e);

}  // namespace trivext
