#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace opgp {

/// Exponent vector over all ring generators (x^a D^b in normal order).
///
/// Ordered by graded reverse lexicographic order on the full exponent
/// vector; this order is degree compatible, which keeps leading terms of
/// Weyl products equal to the product of leading terms.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exponents_(num_vars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {}
  Monomial(std::initializer_list<std::uint32_t> exponents) : exponents_(exponents) {}

  [[nodiscard]] std::size_t size() const { return exponents_.size(); }
  [[nodiscard]] std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents_[i]; }
  [[nodiscard]] const std::vector<std::uint32_t>& exponents() const { return exponents_; }

  [[nodiscard]] std::uint64_t degree() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool divides(const Monomial& other) const;
  /// Componentwise exponent subtraction; requires divides(other).
  [[nodiscard]] Monomial quotient_of(const Monomial& other) const;
  [[nodiscard]] Monomial lcm(const Monomial& other) const;
  [[nodiscard]] bool coprime(const Monomial& other) const;
  [[nodiscard]] Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> exponents_;
};

}  // namespace opgp
