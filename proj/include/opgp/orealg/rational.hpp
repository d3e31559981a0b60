#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace opgp {

using Rational = mpq_class;

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double.
Rational rational_from_double(double v);

}  // namespace opgp
