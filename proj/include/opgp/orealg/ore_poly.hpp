#pragma once

#include <span>
#include <string>
#include <vector>

#include "opgp/orealg/monomial.hpp"
#include "opgp/orealg/rational.hpp"
#include "opgp/orealg/ring.hpp"

namespace opgp {

struct Term {
  Monomial monomial;
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Element of a commutative polynomial ring or Weyl algebra, stored in
/// normal order (base variables left of partials) with terms sorted by
/// decreasing monomial order and no zero coefficients.
class OrePoly {
 public:
  explicit OrePoly(RingPtr ring);

  static OrePoly constant(RingPtr ring, const Rational& c);
  static OrePoly generator(RingPtr ring, std::size_t index);
  static OrePoly monomial(RingPtr ring, Monomial m, const Rational& c = 1);
  /// Sorts, merges like terms, and drops zeros.
  static OrePoly from_terms(RingPtr ring, std::vector<Term> terms);

  [[nodiscard]] const RingPtr& ring() const { return ring_; }
  [[nodiscard]] std::span<const Term> terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Term& leading() const { return terms_.front(); }
  [[nodiscard]] bool is_constant() const;
  /// Coefficient of the empty monomial.
  [[nodiscard]] Rational constant_coeff() const;
  /// True if some term carries a positive partial-derivative exponent.
  [[nodiscard]] bool has_partials() const;
  [[nodiscard]] std::uint64_t degree() const;

  OrePoly operator-() const;
  OrePoly& operator+=(const OrePoly& other);
  OrePoly& operator-=(const OrePoly& other);
  [[nodiscard]] OrePoly scaled(const Rational& c) const;

  friend OrePoly operator+(OrePoly a, const OrePoly& b) { return a += b; }
  friend OrePoly operator-(OrePoly a, const OrePoly& b) { return a -= b; }
  friend OrePoly operator*(const OrePoly& a, const OrePoly& b);
  friend bool operator==(const OrePoly& a, const OrePoly& b);

  /// Canonical text, e.g. "-1*z*Dy + 1*y*Dz"; "0" for zero.
  [[nodiscard]] std::string to_string() const;

 private:
  OrePoly(RingPtr ring, std::vector<Term> sorted_terms);

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Normal-ordered product; throws RingMismatch across rings.
OrePoly mul(const OrePoly& p, const OrePoly& q);

/// c * m * p where m is a normal-ordered monomial (left multiplication).
OrePoly mul_term_left(const Monomial& m, const Rational& c, const OrePoly& p);

/// Product of two normal-ordered monomials, expanded back into normal order.
OrePoly mul_monomials(const RingPtr& ring, const Monomial& a, const Monomial& b);

/// Anti-automorphism fixing x_i and sending D_i to -D_i.
OrePoly theta(const OrePoly& p);

/// Applies the operator `op` to the function `f` (a polynomial in the base
/// variables) by symbolic differentiation and multiplication.
OrePoly apply_operator(const OrePoly& op, const OrePoly& f);

/// Evaluates a partial-free polynomial at a point of R^d.
double evaluate(const OrePoly& f, std::span<const double> point);

/// Substitutes base variable `axis` by `value`; requires a partial-free polynomial.
OrePoly substitute(const OrePoly& f, std::size_t axis, const Rational& value);

}  // namespace opgp
