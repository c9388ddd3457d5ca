#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ncmf/freealg.hpp"

namespace ncmf {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(std::string_view text);

// Names an expression may refer to besides generators.
struct ExprEnv {
  std::map<std::string, Scalar> params;
  std::map<std::string, NcPoly> elements;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool accept(const std::string& sym);
  void expect(const std::string& sym);
  std::string expect_ident();
  long long expect_int();
  [[noreturn]] void fail(const std::string& what) const;

  NcPoly parse_expression(const RingPtr& ring, const ExprEnv& env);

 private:
  NcPoly parse_sum(const RingPtr& ring, const ExprEnv& env);
  NcPoly parse_product(const RingPtr& ring, const ExprEnv& env);
  NcPoly parse_unary(const RingPtr& ring, const ExprEnv& env);
  NcPoly parse_power(const RingPtr& ring, const ExprEnv& env);
  NcPoly parse_atom(const RingPtr& ring, const ExprEnv& env);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Parses a whole string as one polynomial expression.
NcPoly parse_poly(const RingPtr& ring, std::string_view text, const ExprEnv& env = {});

}  // namespace ncmf
