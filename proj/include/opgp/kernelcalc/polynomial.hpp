#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "opgp/errors.hpp"
#include "opgp/orealg/monomial.hpp"
#include "opgp/orealg/rational.hpp"

namespace opgp {

/// Commutative polynomial in a fixed number of variables with coefficients
/// in C (Rational or double). Terms are kept in decreasing grevlex order.
template <class C>
class Polynomial {
 public:
  using TermMap = std::map<Monomial, C, std::greater<>>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const C& c) {
    Polynomial p(num_vars);
    p.add_term(Monomial(num_vars), c);
    return p;
  }

  static Polynomial variable(std::size_t num_vars, std::size_t index) {
    Polynomial p(num_vars);
    Monomial m(num_vars);
    m[index] = 1;
    p.add_term(m, C(1));
    return p;
  }

  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const C& c) {
    if (c == C(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& other) {
    require_vars(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    require_vars(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_vars(b);
    Polynomial r(a.num_vars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }

  [[nodiscard]] Polynomial scaled(const C& c) const {
    Polynomial r(num_vars_);
    if (c == C(0)) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
    return r;
  }

  [[nodiscard]] Polynomial derivative(std::size_t var) const {
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial n = m;
      --n[var];
      r.add_term(n, c * C(m[var]));
    }
    return r;
  }

  /// Multiplies by (var - shift).
  [[nodiscard]] Polynomial times_linear(std::size_t var, const C& shift) const {
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      ++n[var];
      r.add_term(n, c);
      r.add_term(m, -c * shift);
    }
    return r;
  }

  /// Multiplies by (a - b) for two variables.
  [[nodiscard]] Polynomial times_difference(std::size_t a, std::size_t b) const {
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
      Monomial ma = m;
      ++ma[a];
      r.add_term(ma, c);
      Monomial mb = m;
      ++mb[b];
      r.add_term(mb, -c);
    }
    return r;
  }

  [[nodiscard]] double evaluate(std::span<const double> point) const {
    if (point.size() != num_vars_) throw DimensionMismatch("polynomial evaluation: wrong point length");
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
      double v = to_double(c);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        for (std::uint32_t k = 0; k < m[i]; ++k) v *= point[i];
      }
      sum += v;
    }
    return sum;
  }

  /// Replaces variable `var` by the constant `value` (its exponent becomes 0).
  [[nodiscard]] Polynomial substitute(std::size_t var, const C& value) const {
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
      C v = c;
      for (std::uint32_t k = 0; k < m[var]; ++k) v *= value;
      Monomial n = m;
      n[var] = 0;
      r.add_term(n, v);
    }
    return r;
  }

  /// Reindexes variables: new variable i takes old variable map[i]
  /// (map.size() is the new variable count; unmapped old variables must be absent).
  [[nodiscard]] Polynomial remap(const std::vector<std::size_t>& map) const {
    Polynomial r(map.size());
    for (const auto& [m, c] : terms_) {
      Monomial n(map.size());
      for (std::size_t i = 0; i < map.size(); ++i) n[i] = m[map[i]];
      r.add_term(n, c);
    }
    return r;
  }

  [[nodiscard]] std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool negative = c < C(0);
      if (first) {
        out += negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      out += coefficient_string(negative ? C(-c) : c);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (m[i] == 0) continue;
        out += "*" + names.at(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
      }
      first = false;
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  static double to_double(const Rational& c) { return c.get_d(); }
  static double to_double(double c) { return c; }
  static std::string coefficient_string(const Rational& c) { return opgp::to_string(c); }
  static std::string coefficient_string(double c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", c);
    return buf;
  }

  void require_vars(const Polynomial& other) const {
    if (other.num_vars_ != num_vars_) throw DimensionMismatch("polynomials over different variable sets");
  }

  std::size_t num_vars_ = 0;
  TermMap terms_;
};

template <class To, class From>
Polynomial<To> convert(const Polynomial<From>& p) {
  Polynomial<To> r(p.num_vars());
  for (const auto& [m, c] : p.terms()) {
    if constexpr (std::is_same_v<To, double> && std::is_same_v<From, Rational>) {
      r.add_term(m, c.get_d());
    } else {
      r.add_term(m, To(c));
    }
  }
  return r;
}

}  // namespace opgp
