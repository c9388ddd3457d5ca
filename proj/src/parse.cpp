#include "ncmf/parse.hpp"

#include <cctype>

#include "ncmf/error.hpp"

namespace ncmf {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::Symbol, "", line, col};
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Number;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      j = i + 2;
    } else if (std::string_view("+-*/^(),;:{}=[]").find(c) != std::string_view::npos) {
      j = i + 1;
    } else {
      throw Error(ErrorKind::Syntax, "line " + std::to_string(line) + " col " + std::to_string(col) +
                                         ": unexpected character '" + std::string(1, c) + "'");
    }
    t.text = std::string(text.substr(i, j - i));
    out.push_back(std::move(t));
    advance(j - i);
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
  return toks_[k];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(const std::string& sym) {
  if (peek().kind == Token::Kind::End || peek().text != sym) return false;
  next();
  return true;
}

void TokenStream::fail(const std::string& what) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw Error(ErrorKind::Syntax, "line " + std::to_string(t.line) + " col " + std::to_string(t.col) +
                                     ": expected " + what + ", found " + found);
}

void TokenStream::expect(const std::string& sym) {
  if (!accept(sym)) fail("'" + sym + "'");
}

std::string TokenStream::expect_ident() {
  if (peek().kind != Token::Kind::Ident) fail("identifier");
  return next().text;
}

long long TokenStream::expect_int() {
  bool neg = accept("-");
  if (peek().kind != Token::Kind::Number) fail("integer");
  const std::string s = next().text;
  if (s.size() > 15) fail("smaller integer");
  long long v = std::stoll(s);
  return neg ? -v : v;
}

NcPoly TokenStream::parse_expression(const RingPtr& ring, const ExprEnv& env) {
  return parse_sum(ring, env);
}

NcPoly TokenStream::parse_sum(const RingPtr& ring, const ExprEnv& env) {
  NcPoly acc = parse_product(ring, env);
  while (true) {
    if (accept("+"))
      acc = acc + parse_product(ring, env);
    else if (accept("-"))
      acc = acc - parse_product(ring, env);
    else
      return acc;
  }
}

NcPoly TokenStream::parse_product(const RingPtr& ring, const ExprEnv& env) {
  NcPoly acc = parse_unary(ring, env);
  while (true) {
    if (accept("*")) {
      acc = acc * parse_unary(ring, env);
    } else if (peek().text == "/" && peek().kind == Token::Kind::Symbol) {
      Token at = peek();
      next();
      NcPoly den = parse_unary(ring, env);
      if (den.is_zero() || den.max_degree() != 0) {
        throw Error(ErrorKind::Syntax, "line " + std::to_string(at.line) + " col " +
                                           std::to_string(at.col) + ": division by a non-scalar or zero");
      }
      acc = acc.scaled(ring->field().inv(den.constant_term()));
    } else {
      return acc;
    }
  }
}

NcPoly TokenStream::parse_unary(const RingPtr& ring, const ExprEnv& env) {
  if (accept("-")) return -parse_unary(ring, env);
  if (accept("+")) return parse_unary(ring, env);
  return parse_power(ring, env);
}

NcPoly TokenStream::parse_power(const RingPtr& ring, const ExprEnv& env) {
  NcPoly base = parse_atom(ring, env);
  if (!accept("^")) return base;
  Token at = peek();
  long long e = expect_int();
  bool scalar = base.is_zero() || base.max_degree() == 0;
  if (e < 0) {
    if (!scalar || base.is_zero())
      throw Error(ErrorKind::Syntax, "line " + std::to_string(at.line) + " col " + std::to_string(at.col) +
                                         ": negative exponent on a non-scalar");
    return NcPoly::constant(ring, ring->field().pow(base.constant_term(), e));
  }
  if (scalar) return NcPoly::constant(ring, ring->field().pow(base.constant_term(), e));
  if (e > 64) fail("exponent at most 64");
  NcPoly r = NcPoly::from_int(ring, 1);
  for (long long k = 0; k < e; ++k) r = r * base;
  return r;
}

NcPoly TokenStream::parse_atom(const RingPtr& ring, const ExprEnv& env) {
  const Token& t = peek();
  if (t.kind == Token::Kind::Number) {
    std::string s = next().text;
    mpz_class z(s, 10);
    return NcPoly::constant(ring, ring->field().from_rational(mpq_class(z)));
  }
  if (t.kind == Token::Kind::Ident) {
    std::string name = next().text;
    if (auto g = ring->index_of(name)) return NcPoly::generator(ring, *g);
    if (auto it = env.params.find(name); it != env.params.end()) return NcPoly::constant(ring, it->second);
    if (auto it = env.elements.find(name); it != env.elements.end()) return it->second;
    --pos_;
    fail("generator, parameter or element name (unknown '" + name + "')");
  }
  if (accept("(")) {
    NcPoly p = parse_sum(ring, env);
    expect(")");
    return p;
  }
  fail("expression");
}

NcPoly parse_poly(const RingPtr& ring, std::string_view text, const ExprEnv& env) {
  TokenStream ts(tokenize(text));
  NcPoly p = ts.parse_expression(ring, env);
  if (!ts.at_end()) ts.fail("end of expression");
  return p;
}

}  // namespace ncmf
