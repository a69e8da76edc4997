#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zerocurv/polynomial.hpp"

namespace zerocurv {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownVariable, NonRationalLiteral, DegreeCap };

  ParseError(Kind kind, std::size_t offset, const std::string& message);

  Kind kind() const { return kind_; }
  /// Byte offset into the input where the problem was detected.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

const char* to_string(ParseError::Kind kind);

/// Parses the polynomial grammar:
///
///   poly  := ['+'|'-'] term (('+'|'-') term)*
///   term  := coeff ('*' power)* | power ('*' power)*
///   coeff := digits ['/' digits]
///   power := ('x1'|'x2'|'x3') ['^' digits]
///
/// Whitespace is ignored. Variables beyond nvars are rejected, as is any
/// result of total degree above kMaxDegree.
Polynomial parse_polynomial(std::string_view text, int nvars = 3);

}  // namespace zerocurv
