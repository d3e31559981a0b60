#pragma once

#include <cmath>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "opgp/kernelcalc/polynomial.hpp"

namespace opgp {

/// The quadratic exponent shared by a group of terms.
///
/// Paired: -1/2 sum_a w_a (x1_a - x2_a)^2 over 2d variables ordered
/// x1_1..x1_d, x2_1..x2_d. Centered: -1/2 sum_a w_a (x_a - c_a)^2 over d
/// variables. The weights w_a are inverse squared lengthscales. Flat: the
/// zero exponent over d variables, for plain polynomials.
class GaussianExponent {
 public:
  enum class Kind { Paired, Centered, Flat };

  static GaussianExponent paired(std::size_t d, std::vector<Rational> weights = {});
  static GaussianExponent centered(std::vector<Rational> center, std::vector<Rational> weights = {});
  static GaussianExponent flat(std::size_t d);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_paired() const { return kind_ == Kind::Paired; }
  [[nodiscard]] bool is_flat() const { return kind_ == Kind::Flat; }
  [[nodiscard]] std::size_t dimension() const { return weights_.size(); }
  [[nodiscard]] std::size_t num_vars() const { return is_paired() ? 2 * dimension() : dimension(); }
  [[nodiscard]] const std::vector<Rational>& weights() const { return weights_; }
  [[nodiscard]] const std::vector<Rational>& center() const { return center_; }

  /// Value of the exponent at a point with num_vars() coordinates.
  [[nodiscard]] double value(std::span<const double> point) const;

  /// Same kernel with group 2 fixed at `point`.
  [[nodiscard]] GaussianExponent substituted(const std::vector<Rational>& point) const;

  [[nodiscard]] std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const GaussianExponent& a, const GaussianExponent& b);
  friend std::strong_ordering operator<=>(const GaussianExponent& a, const GaussianExponent& b);

 private:
  GaussianExponent(Kind kind, std::vector<Rational> weights, std::vector<Rational> center);

  Kind kind_;
  std::vector<Rational> weights_;
  std::vector<Rational> center_;
};

template <class C>
struct GaussianTerm {
  GaussianExponent exponent;
  Polynomial<C> poly;
};

/// Finite sum of polynomial * exp(quadratic) terms, one term per distinct
/// exponent, sorted by exponent, zero polynomials dropped.
template <class C>
class BasicGaussianExpr {
 public:
  BasicGaussianExpr() = default;

  static BasicGaussianExpr single(GaussianExponent exponent, Polynomial<C> poly) {
    BasicGaussianExpr e;
    e.add(std::move(exponent), std::move(poly));
    return e;
  }

  [[nodiscard]] const std::vector<GaussianTerm<C>>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  void add(GaussianExponent exponent, Polynomial<C> poly) {
    if (poly.is_zero()) return;
    if (poly.num_vars() != exponent.num_vars()) throw DimensionMismatch("polynomial does not match exponent variables");
    auto it = terms_.begin();
    while (it != terms_.end() && it->exponent < exponent) ++it;
    if (it != terms_.end() && it->exponent == exponent) {
      it->poly += poly;
      if (it->poly.is_zero()) terms_.erase(it);
      return;
    }
    terms_.insert(it, GaussianTerm<C>{std::move(exponent), std::move(poly)});
  }

  BasicGaussianExpr& operator+=(const BasicGaussianExpr& other) {
    for (const auto& t : other.terms_) add(t.exponent, t.poly);
    return *this;
  }
  BasicGaussianExpr& operator-=(const BasicGaussianExpr& other) {
    for (const auto& t : other.terms_) add(t.exponent, t.poly.scaled(C(-1)));
    return *this;
  }
  friend BasicGaussianExpr operator+(BasicGaussianExpr a, const BasicGaussianExpr& b) { return a += b; }
  friend BasicGaussianExpr operator-(BasicGaussianExpr a, const BasicGaussianExpr& b) { return a -= b; }

  [[nodiscard]] BasicGaussianExpr scaled(const C& c) const {
    BasicGaussianExpr r;
    for (const auto& t : terms_) r.add(t.exponent, t.poly.scaled(c));
    return r;
  }

  /// Multiplies every term by variable `var`.
  [[nodiscard]] BasicGaussianExpr times_variable(std::size_t var) const {
    BasicGaussianExpr r;
    for (const auto& t : terms_) r.add(t.exponent, t.poly * Polynomial<C>::variable(t.poly.num_vars(), var));
    return r;
  }

  /// Exact derivative with respect to variable `var` of the term variables.
  [[nodiscard]] BasicGaussianExpr diff(std::size_t var) const {
    BasicGaussianExpr r;
    for (const auto& t : terms_) {
      const auto& ex = t.exponent;
      if (var >= ex.num_vars()) throw DimensionMismatch("diff: unknown variable index");
      const std::size_t d = ex.dimension();
      const std::size_t axis = var % d;
      const C w = to_coeff(ex.weights()[axis]);
      if (ex.is_flat()) {
        r.add(ex, t.poly.derivative(var));
        continue;
      }
      Polynomial<C> chain(t.poly.num_vars());
      if (ex.is_paired()) {
        chain = t.poly.times_difference(axis, d + axis).scaled(var < d ? C(-w) : w);
      } else {
        chain = t.poly.times_linear(axis, to_coeff(ex.center()[axis])).scaled(C(-w));
      }
      r.add(ex, t.poly.derivative(var) + chain);
    }
    return r;
  }

  /// Polynomial times exponential, summed over terms in canonical order.
  [[nodiscard]] double evaluate(std::span<const double> point) const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.poly.evaluate(point) * std::exp(t.exponent.value(point));
    return sum;
  }

  friend bool operator==(const BasicGaussianExpr& a, const BasicGaussianExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].exponent == b.terms_[i].exponent) || !(a.terms_[i].poly == b.terms_[i].poly)) return false;
    }
    return true;
  }

  [[nodiscard]] std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i > 0) out += " + ";
      out += "(" + terms_[i].poly.to_string(names) + ")";
      if (!terms_[i].exponent.is_flat()) out += "*exp(" + terms_[i].exponent.to_string(names) + ")";
    }
    return out;
  }

 private:
  static C to_coeff(const Rational& q) {
    if constexpr (std::is_same_v<C, double>) {
      return q.get_d();
    } else {
      return q;
    }
  }

  std::vector<GaussianTerm<C>> terms_;
};

using GaussianPolyExpr = BasicGaussianExpr<Rational>;
using RealGaussianExpr = BasicGaussianExpr<double>;

RealGaussianExpr to_real(const GaussianPolyExpr& e);

/// Variable names for the term variables: base+"1", base+"2" for paired
/// exponents, the base names for centered ones.
std::vector<std::string> paired_names(const std::vector<std::string>& base);

}  // namespace opgp
