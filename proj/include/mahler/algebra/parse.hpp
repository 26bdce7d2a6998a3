#pragma once

#include "mahler/algebra/poly.hpp"
#include "mahler/algebra/ratfun.hpp"

#include <string_view>

namespace mahler {

/// Parses a polynomial in z:
///
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := 'z' | rational | '(' expr ')' | '-' factor
///   rational := int ('/' uint)?
///
/// Whitespace is ignored; implicit multiplication ("2z") is rejected.
/// Throws ParseError carrying the byte offset of the offending input.
Poly parse_poly(std::string_view text);

/// Same grammar with '/' additionally allowed between factors of a term,
/// producing a reduced rational function.
RatFun parse_ratfun(std::string_view text);

}  // namespace mahler
