#include "opgp/orealg/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "opgp/errors.hpp"

namespace opgp {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw NumericError("cannot convert a non-finite value to a rational");
  return Rational(v);
}

}  // namespace opgp
