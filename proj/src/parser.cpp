#include "trivext/parser.hpp"

#include <cctype>

#include "trivext/trivial_ext.hpp"

namespace trivext {

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  int64_t value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void expected(const std::string& what) const {
    std::string got = tok_.kind == Token::Kind::End ? "end of input" : "'" + tok_.text + "'";
    throw SyntaxError(tok_.line, tok_.col, what, "unexpected " + got);
  }

  void expect_sym(char c) {
    if (tok_.kind != Token::Kind::Sym || tok_.text[0] != c)
      expected(std::string("\"") + c + "\"");
    advance();
  }

  bool try_sym(char c) {
    if (tok_.kind == Token::Kind::Sym && tok_.text[0] == c) {
      advance();
      return true;
    }
    return false;
  }

  int64_t expect_int(const std::string& what) {
    if (tok_.kind != Token::Kind::Int) expected(what);
    int64_t v = tok_.value;
    advance();
    return v;
  }

  std::string expect_ident(const std::string& what) {
    if (tok_.kind != Token::Kind::Ident) expected(what);
    std::string v = tok_.text;
    advance();
    return v;
  }

  bool at_ident(const char* name) const {
    return tok_.kind == Token::Kind::Ident && tok_.text == name;
  }
  bool at_sym(char c) const {
    return tok_.kind == Token::Kind::Sym && tok_.text[0] == c;
  }
  bool at_end() const { return tok_.kind == Token::Kind::End; }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
        ++col_;
      }
      tok_.kind = Token::Kind::Int;
      tok_.text = s_.substr(start, pos_ - start);
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (...) {
        throw SyntaxError(tok_.line, tok_.col, "integer", "number too large");
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
        ++col_;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    tok_.kind = Token::Kind::Sym;
    tok_.text = std::string(1, c);
    ++pos_;
    ++col_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// --- element ASTs (typed against a ring during elaboration) ---

struct ElemAst {
  enum class Kind { Poly, Tuple, List };
  Kind kind = Kind::Poly;
  Enc poly;  // ascending coefficients (unreduced)
  std::vector<ElemAst> items;
  int line = 1, col = 1;
};

Enc parse_poly(Lexer& lx) {
  // term ("+" term)*
  Enc coeffs;
  auto add_term = [&](int64_t c, int64_t k) {
    if (static_cast<int64_t>(coeffs.size()) <= k) coeffs.resize(static_cast<size_t>(k + 1), 0);
    coeffs[static_cast<size_t>(k)] += c;
  };
  for (;;) {
    int64_t c = 1;
    int64_t k = 0;
    bool have_coeff = false;
    if (lx.peek().kind == Token::Kind::Int) {
      c = lx.expect_int("integer");
      have_coeff = true;
    }
    if (lx.at_ident("x")) {
      if (have_coeff && !lx.try_sym('*')) {
        // allow "2x^3" only with explicit '*', so require symbol between
        // coefficient and x; a bare coefficient followed by x is an error
        lx.expected("\"*\" between coefficient and x");
      }
      if (!have_coeff) {
        // plain x term
      }
      lx.expect_ident("x");
      k = 1;
      if (lx.try_sym('^')) k = lx.expect_int("exponent");
    } else if (have_coeff && lx.at_sym('*')) {
      lx.expect_sym('*');
      lx.expect_ident("x");
      k = 1;
      if (lx.try_sym('^')) k = lx.expect_int("exponent");
    } else if (!have_coeff) {
      lx.expected("polynomial term");
    }
    add_term(c, k);
    if (!lx.try_sym('+')) break;
  }
  return coeffs;
}

ElemAst parse_elem(Lexer& lx) {
  ElemAst e;
  e.line = lx.peek().line;
  e.col = lx.peek().col;
  if (lx.try_sym('(')) {
    e.kind = ElemAst::Kind::Tuple;
    e.items.push_back(parse_elem(lx));
    while (lx.try_sym(',')) e.items.push_back(parse_elem(lx));
    if (!lx.try_sym(')')) lx.expected("\")\" or \",\"");
    return e;
  }
  if (lx.try_sym('[')) {
    e.kind = ElemAst::Kind::List;
    e.items.push_back(parse_elem(lx));
    while (lx.try_sym(',')) e.items.push_back(parse_elem(lx));
    if (!lx.try_sym(']')) lx.expected("\"]\" or \",\"");
    return e;
  }
  e.kind = ElemAst::Kind::Poly;
  e.poly = parse_poly(lx);
  return e;
}

struct ModuleAst {
  enum class Kind { Quot, Free, Pres };
  Kind kind = Kind::Free;
  std::vector<ElemAst> ideal;
  int64_t free_rank = 0;
  std::vector<std::vector<ElemAst>> rows;
  int line = 1, col = 1;
};

ModuleAst parse_module_ast(Lexer& lx) {
  ModuleAst m;
  m.line = lx.peek().line;
  m.col = lx.peek().col;
  std::string head = lx.expect_ident("\"quot\", \"free\" or \"pres\"");
  if (head == "quot") {
    lx.expect_sym('(');
    lx.expect_sym('(');
    m.kind = ModuleAst::Kind::Quot;
    m.ideal.push_back(parse_elem(lx));
    while (lx.try_sym(',')) m.ideal.push_back(parse_elem(lx));
    if (!lx.try_sym(')')) lx.expected("\")\" or \",\"");
    lx.expect_sym(')');
    return m;
  }
  if (head == "free") {
    lx.expect_sym('(');
    m.kind = ModuleAst::Kind::Free;
    m.free_rank = lx.expect_int("rank");
    lx.expect_sym(')');
    return m;
  }
  if (head == "pres") {
    lx.expect_sym('(');
    lx.expect_sym('[');
    m.kind = ModuleAst::Kind::Pres;
    do {
      if (!lx.try_sym('[')) lx.expected("\"[\"");
      std::vector<ElemAst> row;
      if (!lx.at_sym(']')) {
        row.push_back(parse_elem(lx));
        while (lx.try_sym(',')) row.push_back(parse_elem(lx));
      }
      if (!lx.try_sym(']')) lx.expected("\"]\" or \",\"");
      m.rows.push_back(std::move(row));
    } while (lx.try_sym(','));
    if (!lx.try_sym(']')) lx.expected("\"]\" or \",\"");
    lx.expect_sym(')');
    return m;
  }
  throw SyntaxError(m.line, m.col, "\"quot\", \"free\" or \"pres\"",
                    "unknown module form '" + head + "'");
}

struct RingAst {
  enum class Kind { ZMod, GF, GFPoly, Triv, Prod, Series };
  Kind kind = Kind::ZMod;
  int64_t a = 0, b = 0;
  Enc poly;
  std::vector<RingAst> children;
  ModuleAst module;
  int line = 1, col = 1;
};

RingAst parse_ring_ast(Lexer& lx) {
  RingAst r;
  r.line = lx.peek().line;
  r.col = lx.peek().col;
  std::string head = lx.expect_ident("ring expression");
  if (head == "Z") {
    lx.expect_sym('/');
    r.kind = RingAst::Kind::ZMod;
    r.a = lx.expect_int("modulus");
    return r;
  }
  if (head == "GF") {
    lx.expect_sym('(');
    r.a = lx.expect_int("field order");
    lx.expect_sym(')');
    if (lx.try_sym('[')) {
      std::string var = lx.expect_ident("\"x\"");
      if (var != "x")
        throw SyntaxError(r.line, r.col, "\"x\"", "unknown variable '" + var + "'");
      lx.expect_sym(']');
      lx.expect_sym('/');
      lx.expect_sym('(');
      r.poly = parse_poly(lx);
      lx.expect_sym(')');
      r.kind = RingAst::Kind::GFPoly;
      return r;
    }
    r.kind = RingAst::Kind::GF;
    return r;
  }
  if (head == "triv") {
    lx.expect_sym('(');
    r.kind = RingAst::Kind::Triv;
    r.children.push_back(parse_ring_ast(lx));
    if (!lx.try_sym(',')) lx.expected("\")\" or \",\"");
    r.module = parse_module_ast(lx);
    if (!lx.try_sym(')')) lx.expected("\")\" or \",\"");
    return r;
  }
  if (head == "prod") {
    lx.expect_sym('(');
    r.kind = RingAst::Kind::Prod;
    r.children.push_back(parse_ring_ast(lx));
    if (!lx.try_sym(',')) lx.expected("\",\" (prod needs >= 2 factors)");
    r.children.push_back(parse_ring_ast(lx));
    while (lx.try_sym(',')) r.children.push_back(parse_ring_ast(lx));
    if (!lx.try_sym(')')) lx.expected("\")\" or \",\"");
    return r;
  }
  if (head == "series") {
    lx.expect_sym('(');
    r.kind = RingAst::Kind::Series;
    r.a = lx.expect_int("prime");
    if (!lx.try_sym(',')) lx.expected("\",\"");
    r.b = lx.expect_int("precision");
    lx.expect_sym(')');
    return r;
  }
  throw SyntaxError(r.line, r.col, "\"Z\", \"GF\", \"triv\", \"prod\" or \"series\"",
                    "unknown ring form '" + head + "'");
}

// --- elaboration ---

int64_t mod_norm_i(int64_t x, int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

// the element named "x" in a polynomial-bearing ring
Enc x_element(const Ring& R) {
  const RingDescriptor& d = R.desc();
  if (d.kind == RingDescriptor::Kind::PolyQuotient) {
    if (d.poly.size() >= 3) {
      Enc e = R.zero();
      e[1] = 1;
      return e;
    }
    // degree-1 modulus x + c: x = -c
    Enc e = R.zero();
    e[0] = mod_norm_i(-d.poly[0], d.n);
    return e;
  }
  if (d.kind == RingDescriptor::Kind::SeriesTrunc) {
    Enc e = R.zero();
    if (d.trunc >= 2) e[1] = 1;
    return e;
  }
  fail(ErrorKind::InvalidDescriptor,
       "variable x has no meaning in " + d.to_string());
}

Enc int_element(const Ring& R, int64_t n) {
  Enc acc = R.zero();
  Enc one = R.one();
  bool negate = n < 0;
  uint64_t k = negate ? static_cast<uint64_t>(-n) : static_cast<uint64_t>(n);
  Enc pow = one;
  while (k > 0) {
    if (k & 1) acc = R.add(acc, pow);
    k >>= 1;
    if (k) pow = R.add(pow, pow);
  }
  return negate ? R.neg(acc) : acc;
}

Enc elaborate_in_ring(const Ring& R, const ElemAst& ast);

Enc elaborate_poly(const Ring& R, const ElemAst& ast) {
  const Enc& cs = ast.poly;
  bool needs_x = cs.size() > 1;
  Enc acc = R.zero();
  if (needs_x) {
    Enc X = x_element(R);
    for (size_t k = cs.size(); k-- > 0;) {
      acc = R.mul(acc, X);
      if (cs[k] != 0) acc = R.add(acc, int_element(R, cs[k]));
    }
  } else if (!cs.empty()) {
    acc = int_element(R, cs[0]);
  }
  return acc;
}

// element of the module side E of a trivial extension
Enc elaborate_module_elem(const TrivialExtRing& TR, const ElemAst& ast) {
  const ExtModule& E = TR.ext();
  const Ring& A = *TR.base();
  const ModuleShape& shape = E.shape();
  if (ast.kind == ElemAst::Kind::List) {
    if (static_cast<int64_t>(ast.items.size()) != shape.rank)
      throw SyntaxError(ast.line, ast.col,
                        std::to_string(shape.rank) + " components", "module vector length");
    Enc raw;
    for (const ElemAst& it : ast.items) {
      Enc c = elaborate_in_ring(A, it);
      raw.insert(raw.end(), c.begin(), c.end());
    }
    return E.canonicalize(raw);
  }
  if (shape.rank != 1)
    throw SyntaxError(ast.line, ast.col, "\"[\" (module vector)",
                      "module has rank > 1");
  Enc a = elaborate_in_ring(A, ast);
  return E.canonicalize(a);
}

Enc elaborate_in_ring(const Ring& R, const ElemAst& ast) {
  const RingDescriptor& d = R.desc();
  switch (ast.kind) {
    case ElemAst::Kind::Poly:
      return elaborate_poly(R, ast);
    case ElemAst::Kind::Tuple: {
      if (d.kind == RingDescriptor::Kind::TrivialExt) {
        const auto& TR = dynamic_cast<const TrivialExtRing&>(R);
        if (ast.items.size() != 2)
          throw SyntaxError(ast.line, ast.col, "pair (a,e)", "trivial-extension element");
        Enc a = elaborate_in_ring(*TR.base(), ast.items[0]);
        Enc e = elaborate_module_elem(TR, ast.items[1]);
        return TR.join(a, e);
      }
      if (d.kind == RingDescriptor::Kind::Product) {
        if (ast.items.size() != d.children.size())
          throw SyntaxError(ast.line, ast.col,
                            std::to_string(d.children.size()) + "-tuple", "product element");
        std::vector<RingPtr> comps = R.product_factors();
        Enc out;
        for (size_t i = 0; i < comps.size(); ++i) {
          Enc c = elaborate_in_ring(*comps[i], ast.items[i]);
          out.insert(out.end(), c.begin(), c.end());
        }
        return out;
      }
      throw SyntaxError(ast.line, ast.col, "scalar", "tuple element in a plain ring");
    }
    case ElemAst::Kind::List:
      throw SyntaxError(ast.line, ast.col, "ring element", "vector in scalar position");
  }
  fail(ErrorKind::Internal, "bad element ast");
}

RingDescriptor elaborate_ring(const RingAst& ast) {
  switch (ast.kind) {
    case RingAst::Kind::ZMod:
      return RingDescriptor::zmod(ast.a);
    case RingAst::Kind::GF: {
      int64_t q = ast.a;
      if (q < 2) fail(ErrorKind::InvalidDescriptor, "GF order must be >= 2");
      int64_t p = 2;
      while (q % p != 0) ++p;
      int64_t m = q, k = 0;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      if (m != 1)
        fail(ErrorKind::InvalidDescriptor,
             "GF(" + std::to_string(q) + "): order is not a prime power");
      if (k == 1) return RingDescriptor::gfp(p);
      return RingDescriptor::poly_quotient(p, smallest_irreducible_poly(p, k));
    }
    case RingAst::Kind::GFPoly: {
      int64_t p = ast.a;
      if (p < 2) fail(ErrorKind::InvalidDescriptor, "polynomial base must be prime");
      Enc f = ast.poly;
      for (auto& c : f) c = mod_norm_i(c, p);
      while (!f.empty() && f.back() == 0) f.pop_back();
      if (f.size() < 2)
        fail(ErrorKind::InvalidDescriptor, "modulus must be nonconstant");
      if (f.back() != 1)
        fail(ErrorKind::InvalidDescriptor, "modulus must be monic");
      return RingDescriptor::poly_quotient(p, f);
    }
    case RingAst::Kind::Series:
      return RingDescriptor::series(ast.a, ast.b);
    case RingAst::Kind::Prod: {
      std::vector<RingDescriptor> fs;
      for (const RingAst& c : ast.children) fs.push_back(elaborate_ring(c));
      return RingDescriptor::product(std::move(fs));
    }
    case RingAst::Kind::Triv: {
      RingDescriptor base = elaborate_ring(ast.children[0]);
      RingPtr A = construct_ring(base, Config{});
      ModuleShape shape;
      switch (ast.module.kind) {
        case ModuleAst::Kind::Quot: {
          shape.rank = 1;
          for (const ElemAst& e : ast.module.ideal)
            shape.rels.push_back(elaborate_in_ring(*A, e));
          break;
        }
        case ModuleAst::Kind::Free:
          shape.rank = ast.module.free_rank;
          break;
        case ModuleAst::Kind::Pres: {
          shape.rank = static_cast<int64_t>(ast.module.rows.size());
          size_t cols = ast.module.rows.empty() ? 0 : ast.module.rows[0].size();
          for (const auto& row : ast.module.rows)
            if (row.size() != cols)
              throw SyntaxError(ast.module.line, ast.module.col, "rectangular matrix",
                                "ragged presentation matrix");
          for (size_t j = 0; j < cols; ++j) {
            Enc rel;
            for (size_t i = 0; i < ast.module.rows.size(); ++i) {
              Enc c = elaborate_in_ring(*A, ast.module.rows[i][j]);
              rel.insert(rel.end(), c.begin(), c.end());
            }
            shape.rels.push_back(std::move(rel));
          }
          break;
        }
      }
      return RingDescriptor::trivial_ext(base, std::move(shape));
    }
  }
  fail(ErrorKind::Internal, "bad ring ast");
}

}  // namespace

RingDescriptor parse_ring_descriptor(const std::string& text) {
  Lexer lx(text);
  RingAst ast = parse_ring_ast(lx);
  if (!lx.at_end()) lx.expected("end of input");
  return elaborate_ring(ast);
}

RingPtr parse_ring(const std::string& text, const Config& cfg) {
  return construct_ring(parse_ring_descriptor(text), cfg);
}

RingElement parse_element(const RingPtr& R, const std::string& text) {
  Lexer lx(text);
  ElemAst ast = parse_elem(lx);
  if (!lx.at_end()) lx.expected("end of input");
  return {R, elaborate_in_ring(*R, ast)};
}

std::vector<RingElement> parse_ideal_gens(const RingPtr& R, const std::string& text) {
  Lexer lx(text);
  if (!lx.try_sym('(')) lx.expected("\"(\"");
  std::vector<RingElement> out;
  out.emplace_back(R, elaborate_in_ring(*R, parse_elem(lx)));
  while (lx.try_sym(','))
    out.emplace_back(R, elaborate_in_ring(*R, parse_elem(lx)));
  if (!lx.try_sym(')')) lx.expected("\")\" or \",\"");
  if (!lx.at_end()) lx.expected("end of input");
  return out;
}

ModuleSpec parse_module(const RingPtr& R, const std::string& text) {
  Lexer lx(text);
  ModuleAst ast = parse_module_ast(lx);
  if (!lx.at_end()) lx.expected("end of input");
  switch (ast.kind) {
    case ModuleAst::Kind::Free:
      return ModuleSpec::free_module(R, ast.free_rank);
    case ModuleAst::Kind::Quot: {
      std::vector<RingElement> entries;
      for (const ElemAst& e : ast.ideal)
        entries.emplace_back(R, elaborate_in_ring(*R, e));
      int64_t cols = static_cast<int64_t>(entries.size());
      return ModuleSpec::presented(PresentationMatrix::make(R, 1, cols, std::move(entries)));
    }
    case ModuleAst::Kind::Pres: {
      int64_t rows = static_cast<int64_t>(ast.rows.size());
      size_t cols = ast.rows.empty() ? 0 : ast.rows[0].size();
      for (const auto& row : ast.rows)
        if (row.size() != cols)
          throw SyntaxError(ast.line, ast.col, "rectangular matrix",
                            "ragged presentation matrix");
      std::vector<RingElement> entries;
      for (const auto& row : ast.rows)
        for (const ElemAst& e : row)
          entries.emplace_back(R, elaborate_in_ring(*R, e));
      return ModuleSpec::presented(PresentationMatrix::make(
          R, rows, static_cast<int64_t>(cols), std::move(entries)));
    }
  }
  fail(ErrorKind::Internal, "bad module ast");
}

}  // namespace trivext
