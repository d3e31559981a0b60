#include "opgp/orealg/monomial.hpp"

#include <algorithm>
#include <cassert>

namespace opgp {

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exponents_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  assert(divides(other));
  Monomial q(other);
  for (std::size_t i = 0; i < exponents_.size(); ++i) q.exponents_[i] -= exponents_[i];
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial l(*this);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    l.exponents_[i] = std::max(exponents_[i], other.exponents_[i]);
  }
  return l;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] != 0 && other.exponents_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial p(*this);
  for (std::size_t i = 0; i < exponents_.size(); ++i) p.exponents_[i] += other.exponents_[i];
  return p;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da <=> db;
  // Reverse lexicographic tie break: the smaller trailing exponent wins.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace opgp
