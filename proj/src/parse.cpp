#include "zerocurv/parse.hpp"

#include <cctype>

namespace zerocurv {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(message + " at byte " + std::to_string(offset)),
      kind_(kind),
      offset_(offset) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Syntax: return "syntax";
    case ParseError::Kind::UnknownVariable: return "unknown-variable";
    case ParseError::Kind::NonRationalLiteral: return "non-rational-literal";
    case ParseError::Kind::DegreeCap: return "degree-cap";
  }
  return "unknown";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  Polynomial run() {
    Polynomial result(nvars_);
    skip_ws();
    if (at_end()) fail(ParseError::Kind::Syntax, "empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail(ParseError::Kind::Syntax, "expected '+' or '-'");
      }
      first = false;
      auto [mono, coeff] = term();
      if (sign < 0) coeff = -coeff;
      result.add_term(mono, Scalar(coeff));
      skip_ws();
      if (at_end()) break;
    }
    if (result.degree() > kMaxDegree) {
      fail(ParseError::Kind::DegreeCap,
           "total degree " + std::to_string(result.degree()) + " exceeds cap " +
               std::to_string(kMaxDegree),
           0);
    }
    return result;
  }

 private:
  std::pair<Monomial, Rational> term() {
    Monomial mono;
    Rational coeff(1);
    skip_ws();
    bool need_power = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      coeff = literal();
      skip_ws();
      if (peek() != '*') return {mono, coeff};
      ++pos_;
      need_power = true;
    }
    while (true) {
      skip_ws();
      if (peek() != 'x') {
        if (std::isdigit(static_cast<unsigned char>(peek())) != 0 && need_power) {
          fail(ParseError::Kind::Syntax, "coefficient must come first in a term");
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) != 0) {
          fail(ParseError::Kind::UnknownVariable, "unknown variable");
        }
        fail(ParseError::Kind::Syntax, "expected variable");
      }
      std::size_t var_start = pos_;
      ++pos_;
      std::size_t digits_start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) != 0) ++pos_;
      std::string_view index = text_.substr(digits_start, pos_ - digits_start);
      int var = -1;
      if (index == "1") var = 0;
      if (index == "2") var = 1;
      if (index == "3") var = 2;
      if (var < 0 || var >= nvars_) {
        fail(ParseError::Kind::UnknownVariable,
             "variable '" + std::string(text_.substr(var_start, pos_ - var_start)) +
                 "' is not one of x1..x" + std::to_string(nvars_),
             var_start);
      }
      skip_ws();
      long exponent = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
        if (start == pos_) fail(ParseError::Kind::Syntax, "expected exponent");
        std::string_view digits = text_.substr(start, pos_ - start);
        if (digits.size() > 6) fail(ParseError::Kind::DegreeCap, "exponent too large", start);
        exponent = std::stol(std::string(digits));
        if (peek() == '.' || peek() == '/') {
          fail(ParseError::Kind::Syntax, "exponent must be a non-negative integer");
        }
      }
      if (static_cast<long>(mono[var]) + exponent > 1000000) {
        fail(ParseError::Kind::DegreeCap, "exponent too large", var_start);
      }
      mono[var] += static_cast<int>(exponent);
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return {mono, coeff};
  }

  Rational literal() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
    if (peek() == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
      if (den_start == pos_) fail(ParseError::Kind::Syntax, "expected denominator");
    }
    if (peek() == '.' || peek() == 'e' || peek() == 'E') {
      fail(ParseError::Kind::NonRationalLiteral,
           "only integer or p/q coefficients are accepted", start);
    }
    std::string_view lit = text_.substr(start, pos_ - start);
    try {
      Rational q = parse_rational(lit);
      return q;
    } catch (const std::exception&) {
      fail(ParseError::Kind::NonRationalLiteral, "invalid rational '" + std::string(lit) + "'",
           start);
    }
  }

  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) { fail(kind, msg, pos_); }
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg, std::size_t at) {
    throw ParseError(kind, at, msg);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int nvars) { return Parser(text, nvars).run(); }

}  // namespace zerocurv
