#include "opgp/orealg/ore_poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

using TermMap = std::map<Monomial, Rational, std::greater<>>;

void accumulate(TermMap& acc, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

std::vector<Term> to_terms(TermMap&& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.push_back(Term{m, c});
  return out;
}

Rational falling_factorial(std::uint32_t n, std::uint32_t k) {
  Rational r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

Rational binomial(std::uint32_t n, std::uint32_t k) {
  return falling_factorial(n, k) / falling_factorial(k, k);
}

// f differentiated `order` times with respect to base variable `axis`.
std::vector<Term> differentiate(std::span<const Term> terms, std::size_t axis, std::uint32_t order) {
  std::vector<Term> out;
  for (const auto& t : terms) {
    const auto e = t.monomial[axis];
    if (e < order) continue;
    Term d = t;
    d.coeff *= falling_factorial(e, order);
    d.monomial[axis] = e - order;
    out.push_back(std::move(d));
  }
  return out;
}

void require_partial_free(const OrePoly& f, const char* context) {
  if (f.has_partials()) {
    throw std::invalid_argument(std::string(context) + ": argument must be free of partial derivatives");
  }
}

}  // namespace

OrePoly::OrePoly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("OrePoly requires a ring");
}

OrePoly::OrePoly(RingPtr ring, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

OrePoly OrePoly::constant(RingPtr ring, const Rational& c) {
  Monomial one(ring->num_generators());
  return monomial(std::move(ring), std::move(one), c);
}

OrePoly OrePoly::generator(RingPtr ring, std::size_t index) {
  if (index >= ring->num_generators()) throw std::out_of_range("generator index out of range");
  Monomial m(ring->num_generators());
  m[index] = 1;
  return monomial(std::move(ring), std::move(m));
}

OrePoly OrePoly::monomial(RingPtr ring, Monomial m, const Rational& c) {
  if (m.size() != ring->num_generators()) throw DimensionMismatch("monomial length does not match ring");
  OrePoly p(std::move(ring));
  if (c != 0) p.terms_.push_back(Term{std::move(m), c});
  return p;
}

OrePoly OrePoly::from_terms(RingPtr ring, std::vector<Term> terms) {
  TermMap acc;
  for (auto& t : terms) {
    if (t.monomial.size() != ring->num_generators()) {
      throw DimensionMismatch("monomial length does not match ring");
    }
    accumulate(acc, t.monomial, t.coeff);
  }
  return OrePoly(std::move(ring), to_terms(std::move(acc)));
}

bool OrePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational OrePoly::constant_coeff() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

bool OrePoly::has_partials() const {
  if (!ring_->is_weyl()) return false;
  const std::size_t d = ring_->dimension();
  return std::any_of(terms_.begin(), terms_.end(), [d](const Term& t) {
    for (std::size_t i = d; i < 2 * d; ++i) {
      if (t.monomial[i] != 0) return true;
    }
    return false;
  });
}

std::uint64_t OrePoly::degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

OrePoly OrePoly::operator-() const {
  OrePoly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

OrePoly& OrePoly::operator+=(const OrePoly& other) {
  require_same_ring(ring_, other.ring_, "add");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->monomial > b->monomial)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->monomial > a->monomial) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (c != 0) merged.push_back(Term{std::move(a->monomial), std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

OrePoly& OrePoly::operator-=(const OrePoly& other) { return *this += -other; }

OrePoly OrePoly::scaled(const Rational& c) const {
  if (c == 0) return OrePoly(ring_);
  OrePoly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

bool operator==(const OrePoly& a, const OrePoly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

OrePoly operator*(const OrePoly& a, const OrePoly& b) { return mul(a, b); }

std::string OrePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      out << c.get_str();
    } else if (c < 0) {
      out << " - " << Rational(-c).get_str();
    } else {
      out << " + " << c.get_str();
    }
    first = false;
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      out << '*' << ring_->name(i);
      if (e > 1) out << '^' << e;
    }
  }
  return out.str();
}

OrePoly mul_monomials(const RingPtr& ring, const Monomial& a, const Monomial& b) {
  if (!ring->is_weyl()) return OrePoly::monomial(ring, a * b);
  const std::size_t d = ring->dimension();
  // D^beta x^gamma = sum_kappa prod_i C(beta_i, kappa_i) gamma_i!/(gamma_i-kappa_i)! x^(gamma-kappa) D^(beta-kappa)
  std::vector<std::uint32_t> limit(d);
  bool commuting = true;
  for (std::size_t i = 0; i < d; ++i) {
    limit[i] = std::min(a[d + i], b[i]);
    if (limit[i] != 0) commuting = false;
  }
  if (commuting) return OrePoly::monomial(ring, a * b);

  TermMap acc;
  std::vector<std::uint32_t> kappa(d, 0);
  while (true) {
    Rational coeff = 1;
    Monomial m = a * b;
    for (std::size_t i = 0; i < d; ++i) {
      coeff *= binomial(a[d + i], kappa[i]) * falling_factorial(b[i], kappa[i]);
      m[i] -= kappa[i];
      m[d + i] -= kappa[i];
    }
    accumulate(acc, m, coeff);
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (kappa[i] < limit[i]) {
        ++kappa[i];
        break;
      }
      kappa[i] = 0;
    }
    if (i == d) break;
  }
  return OrePoly::from_terms(ring, to_terms(std::move(acc)));
}

OrePoly mul(const OrePoly& p, const OrePoly& q) {
  require_same_ring(p.ring(), q.ring(), "mul");
  const auto& ring = p.ring();
  TermMap acc;
  for (const auto& s : p.terms()) {
    for (const auto& t : q.terms()) {
      const Rational c = s.coeff * t.coeff;
      if (!ring->is_weyl()) {
        accumulate(acc, s.monomial * t.monomial, c);
        continue;
      }
      const OrePoly product = mul_monomials(ring, s.monomial, t.monomial);
      for (const auto& u : product.terms()) {
        accumulate(acc, u.monomial, c * u.coeff);
      }
    }
  }
  return OrePoly::from_terms(ring, to_terms(std::move(acc)));
}

OrePoly mul_term_left(const Monomial& m, const Rational& c, const OrePoly& p) {
  const auto& ring = p.ring();
  if (!ring->is_weyl()) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back(Term{m * t.monomial, c * t.coeff});
    return OrePoly::from_terms(ring, std::move(out));
  }
  TermMap acc;
  for (const auto& t : p.terms()) {
    const Rational ct = c * t.coeff;
    const OrePoly product = mul_monomials(ring, m, t.monomial);
    for (const auto& u : product.terms()) {
      accumulate(acc, u.monomial, ct * u.coeff);
    }
  }
  return OrePoly::from_terms(ring, to_terms(std::move(acc)));
}

OrePoly theta(const OrePoly& p) {
  const auto& ring = p.ring();
  if (!ring->is_weyl()) return p;
  const std::size_t d = ring->dimension();
  OrePoly out(ring);
  for (const auto& t : p.terms()) {
    Monomial partials(ring->num_generators());
    Monomial base(ring->num_generators());
    std::uint64_t order = 0;
    for (std::size_t i = 0; i < d; ++i) {
      base[i] = t.monomial[i];
      partials[d + i] = t.monomial[d + i];
      order += t.monomial[d + i];
    }
    const Rational sign = order % 2 == 0 ? 1 : -1;
    out += mul_monomials(ring, partials, base).scaled(sign * t.coeff);
  }
  return out;
}

OrePoly apply_operator(const OrePoly& op, const OrePoly& f) {
  require_same_ring(op.ring(), f.ring(), "apply_operator");
  require_partial_free(f, "apply_operator");
  const auto& ring = op.ring();
  if (!ring->is_weyl()) return mul(op, f);
  const std::size_t d = ring->dimension();
  TermMap acc;
  for (const auto& t : op.terms()) {
    std::vector<Term> g(f.terms().begin(), f.terms().end());
    for (std::size_t i = 0; i < d && !g.empty(); ++i) {
      if (t.monomial[d + i] != 0) g = differentiate(g, i, t.monomial[d + i]);
    }
    for (auto& u : g) {
      for (std::size_t i = 0; i < d; ++i) u.monomial[i] += t.monomial[i];
      accumulate(acc, u.monomial, t.coeff * u.coeff);
    }
  }
  return OrePoly::from_terms(ring, to_terms(std::move(acc)));
}

double evaluate(const OrePoly& f, std::span<const double> point) {
  require_partial_free(f, "evaluate");
  const std::size_t d = f.ring()->dimension();
  if (point.size() != d) throw DimensionMismatch("evaluate: point length does not match ring dimension");
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::uint32_t k = 0; k < t.monomial[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

OrePoly substitute(const OrePoly& f, std::size_t axis, const Rational& value) {
  require_partial_free(f, "substitute");
  if (axis >= f.ring()->dimension()) throw std::out_of_range("substitute: axis out of range");
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Term u = t;
    for (std::uint32_t k = 0; k < t.monomial[axis]; ++k) u.coeff *= value;
    u.monomial[axis] = 0;
    out.push_back(std::move(u));
  }
  return OrePoly::from_terms(f.ring(), std::move(out));
}

}  // namespace opgp
