#pragma once

#include <string_view>

#include "opgp/orealg/ore_poly.hpp"

namespace opgp {

/// Parses an infix operator expression over the declared generators.
///
/// Grammar: integer literals, identifiers naming ring generators, binary
/// + - * / ^, unary minus and parentheses. Division is only by nonzero
/// constants; exponents are non-negative integer constants and may not be
/// applied to a sum. Products are normal ordered as they are formed, so
/// "Dx*x" in a Weyl ring yields x*Dx + 1.
///
/// Throws ParseError (with the offending offset) on unknown identifiers,
/// malformed syntax, or an exponent on a sum.
OrePoly parse_operator(std::string_view text, const RingPtr& ring);

}  // namespace opgp
