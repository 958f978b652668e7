#pragma once

#include <string_view>

#include "ncres/poly.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

/// Parses an arithmetic expression over the variables of `ctx` and returns
/// its full expansion.
///
/// Grammar: integer and rational literals ("3", "1/2" is the quotient 1 by 2),
/// variable names, binary + - *, unary -, ^ with a non-negative integer
/// exponent, parentheses, and division by a nonzero constant subexpression.
/// Throws ParseError carrying the 0-based column of the offending token.
Poly parseExpr(std::string_view text, const VarContext& ctx);

}  // namespace ncres
