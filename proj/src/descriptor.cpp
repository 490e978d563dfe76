#include "trivext/descriptor.hpp"

#include <sstream>

#include "trivext/errors.hpp"

namespace trivext {

std::string enc_to_debug_string(const Enc& e) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) os << ',';
    os << e[i];
  }
  os << ']';
  return os.str();
}

RingDescriptor RingDescriptor::zmod(int64_t n) {
  RingDescriptor d;
  d.kind = Kind::ZMod;
  d.n = n;
  return d;
}

RingDescriptor RingDescriptor::gfp(int64_t p) {
  RingDescriptor d;
  d.kind = Kind::PrimeField;
  d.n = p;
  return d;
}

RingDescriptor RingDescriptor::poly_quotient(int64_t p, Enc modulus) {
  RingDescriptor d;
  d.kind = Kind::PolyQuotient;
  d.n = p;
  d.poly = std::move(modulus);
  return d;
}

RingDescriptor RingDescriptor::product(std::vector<RingDescriptor> factors) {
  RingDescriptor d;
  d.kind = Kind::Product;
  d.children = std::move(factors);
  return d;
}

RingDescriptor RingDescriptor::trivial_ext(RingDescriptor base, ModuleShape mod) {
  RingDescriptor d;
  d.kind = Kind::TrivialExt;
  d.children.push_back(std::move(base));
  d.mod = std::move(mod);
  return d;
}

RingDescriptor RingDescriptor::series(int64_t p, int64_t precision) {
  RingDescriptor d;
  d.kind = Kind::SeriesTrunc;
  d.n = p;
  d.trunc = precision;
  return d;
}

RingDescriptor RingDescriptor::corner(RingDescriptor parent, Enc idem) {
  RingDescriptor d;
  d.kind = Kind::Corner;
  d.children.push_back(std::move(parent));
  d.idem = std::move(idem);
  return d;
}

bool RingDescriptor::operator==(const RingDescriptor& o) const {
  if (kind != o.kind || n != o.n || trunc != o.trunc || poly != o.poly ||
      idem != o.idem || !(mod == o.mod))
    return false;
  if (children.size() != o.children.size()) return false;
  for (size_t i = 0; i < children.size(); ++i)
    if (children[i] != o.children[i]) return false;
  return true;
}

namespace {

// Representative length of an element of base^rank/<rels>; over a truncated
// series base a quotient by a monomial ideal (x^k) keeps only the first k
// coefficients.
int64_t module_rep_len(const RingDescriptor& base, const ModuleShape& shape) {
  if (base.kind == RingDescriptor::Kind::SeriesTrunc) {
    int64_t k = -1;
    for (const Enc& rel : shape.rels) {
      for (size_t i = 0; i < rel.size(); ++i) {
        if (rel[i] != 0) {
          int64_t lead = static_cast<int64_t>(i);
          if (k < 0 || lead < k) k = lead;
          break;
        }
      }
    }
    if (k >= 0) return k;  // quotient by (x^k)
  }
  return shape.rank * base.enc_len();
}

}  // namespace

int64_t RingDescriptor::enc_len() const {
  switch (kind) {
    case Kind::ZMod:
    case Kind::PrimeField:
      return 1;
    case Kind::PolyQuotient:
      return static_cast<int64_t>(poly.size()) - 1;
    case Kind::SeriesTrunc:
      return trunc;
    case Kind::Product: {
      int64_t t = 0;
      for (const auto& c : children) t += c.enc_len();
      return t;
    }
    case Kind::TrivialExt:
      return children[0].enc_len() + module_rep_len(children[0], mod);
    case Kind::Corner:
      return children[0].enc_len();
  }
  fail(ErrorKind::Internal, "unknown descriptor kind");
}

std::string poly_to_string(const Enc& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0) {
      os << coeffs[k];
    } else {
      if (coeffs[k] != 1) os << coeffs[k] << '*';
      os << 'x';
      if (k > 1) os << '^' << k;
    }
  }
  if (first) os << '0';
  return os.str();
}

std::string render_module_rep(const RingDescriptor& base, const ModuleShape& shape,
                              const Enc& rep) {
  if (base.kind == RingDescriptor::Kind::SeriesTrunc &&
      static_cast<int64_t>(rep.size()) != shape.rank * base.enc_len()) {
    return poly_to_string(rep);  // truncated residue of a series quotient
  }
  int64_t bl = base.enc_len();
  if (shape.rank == 1) return base.render_elem(rep);
  std::ostringstream os;
  os << '[';
  for (int64_t i = 0; i < shape.rank; ++i) {
    if (i) os << ',';
    os << base.render_elem(enc_slice(rep, static_cast<size_t>(i * bl),
                                     static_cast<size_t>(bl)));
  }
  os << ']';
  return os.str();
}

std::string RingDescriptor::render_elem(const Enc& e) const {
  switch (kind) {
    case Kind::ZMod:
    case Kind::PrimeField:
      return std::to_string(e[0]);
    case Kind::PolyQuotient:
    case Kind::SeriesTrunc:
      return poly_to_string(e);
    case Kind::Product: {
      std::ostringstream os;
      os << '(';
      size_t off = 0;
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) os << ',';
        size_t len = static_cast<size_t>(children[i].enc_len());
        os << children[i].render_elem(enc_slice(e, off, len));
        off += len;
      }
      os << ')';
      return os.str();
    }
    case Kind::TrivialExt: {
      size_t bl = static_cast<size_t>(children[0].enc_len());
      std::ostringstream os;
      os << '(' << children[0].render_elem(enc_slice(e, 0, bl)) << ','
         << render_module_rep(children[0], mod, enc_slice(e, bl, e.size() - bl))
         << ')';
      return os.str();
    }
    case Kind::Corner:
      return children[0].render_elem(e);
  }
  fail(ErrorKind::Internal, "unknown descriptor kind");
}

std::string RingDescriptor::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::ZMod:
      os << "Z/" << n;
      break;
    case Kind::PrimeField:
      os << "GF(" << n << ")";
      break;
    case Kind::PolyQuotient:
      os << "GF(" << n << ")[x]/(" << poly_to_string(poly) << ")";
      break;
    case Kind::SeriesTrunc:
      os << "series(" << n << "," << trunc << ")";
      break;
    case Kind::Product: {
      os << "prod(";
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) os << ",";
        os << children[i].to_string();
      }
      os << ")";
      break;
    }
    case Kind::TrivialExt: {
      const RingDescriptor& base = children[0];
      os << "triv(" << base.to_string() << ",";
      if (mod.rels.empty()) {
        os << "free(" << mod.rank << ")";
      } else if (mod.rank == 1) {
        os << "quot((";
        for (size_t i = 0; i < mod.rels.size(); ++i) {
          if (i) os << ",";
          os << base.render_elem(mod.rels[i]);
        }
        os << "))";
      } else {
        int64_t bl = base.enc_len();
        os << "pres([";
        for (int64_t r = 0; r < mod.rank; ++r) {
          if (r) os << ",";
          os << "[";
          for (size_t c = 0; c < mod.rels.size(); ++c) {
            if (c) os << ",";
            os << base.render_elem(enc_slice(mod.rels[c],
                                             static_cast<size_t>(r * bl),
                                             static_cast<size_t>(bl)));
          }
          os << "]";
        }
        os << "])";
      }
      os << ")";
      break;
    }
    case Kind::Corner:
      os << "corner(" << children[0].to_string() << ","
         << children[0].render_elem(idem) << ")";
      break;
  }
  return os.str();
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::NotLocal: return "NotLocal";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::ImproperIdeal: return "ImproperIdeal";
    case ErrorKind::PrecisionTooSmall: return "PrecisionTooSmall";
    case ErrorKind::UnsupportedModule: return "UnsupportedModule";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Internal: return "Internal";
  }
  return "Error";
}

}  // namespace trivext
