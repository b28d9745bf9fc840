#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nfr/rings.hpp"

namespace nfr {

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at offset " + std::to_string(pos)), offset(pos) {}
  std::size_t offset;
};

/// Text form of a polynomial: terms joined by + and -, each a product of
/// scalar tokens (123, 5/7, 2^-8) and symbol powers (A^4, eta(2:12)), e.g.
/// "2^-8*A^4 - 2^-8*B^2".
Polynomial parse_polynomial(std::string_view text);

/// Either a polynomial or a product of parenthesized polynomials,
/// "(A^4 - B^2)*(Delta_8_2_plus)".
Expression parse_expression(std::string_view text);

}  // namespace nfr
