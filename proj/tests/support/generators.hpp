#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opgp/orealg/operator_matrix.hpp"

namespace opgp::testing {

using Rng = std::mt19937_64;

inline Rational random_coefficient(Rng& rng, int bound = 5) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  Rational q(n, den(rng));
  q.canonicalize();
  return q;
}

/// Random monomial of total degree <= max_degree over the given generator range.
inline Monomial random_monomial(Rng& rng, std::size_t num_generators, std::size_t first,
                                std::size_t last, unsigned max_degree) {
  Monomial m(num_generators);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(first, last - 1);
  const unsigned total = deg(rng);
  for (unsigned k = 0; k < total; ++k) ++m[pick(rng)];
  return m;
}

/// Up to max_terms terms, total degree <= max_degree, over all generators.
inline OrePoly random_poly(Rng& rng, const RingPtr& ring, unsigned max_terms = 4, unsigned max_degree = 3) {
  std::uniform_int_distribution<unsigned> count(1, max_terms);
  std::vector<Term> terms;
  const unsigned n = count(rng);
  for (unsigned k = 0; k < n; ++k) {
    terms.push_back(Term{random_monomial(rng, ring->num_generators(), 0, ring->num_generators(), max_degree),
                         random_coefficient(rng)});
  }
  return OrePoly::from_terms(ring, std::move(terms));
}

/// Polynomial in the base variables only (a function the operators act on).
inline OrePoly random_function(Rng& rng, const RingPtr& ring, unsigned max_terms = 4, unsigned max_degree = 4) {
  std::uniform_int_distribution<unsigned> count(1, max_terms);
  std::vector<Term> terms;
  const unsigned n = count(rng);
  for (unsigned k = 0; k < n; ++k) {
    terms.push_back(Term{random_monomial(rng, ring->num_generators(), 0, ring->dimension(), max_degree),
                         random_coefficient(rng)});
  }
  return OrePoly::from_terms(ring, std::move(terms));
}

/// Sparse random matrix: each entry is zero with probability 1/3.
inline OperatorMatrix random_matrix(Rng& rng, const RingPtr& ring, std::size_t rows, std::size_t cols,
                                    unsigned max_terms = 2, unsigned max_degree = 2) {
  OperatorMatrix m(ring, rows, cols);
  std::uniform_int_distribution<int> zero(0, 2);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (zero(rng) != 0) m(i, j) = random_poly(rng, ring, max_terms, max_degree);
    }
  }
  return m;
}

}  // namespace opgp::testing
