#pragma once

// Degree-truncated syzygies of a commutative matrix by exact linear algebra
// on the Macaulay coefficient matrix. Independent of the Groebner code.

#include <map>
#include <vector>

#include "opgp/orealg/operator_matrix.hpp"

namespace opgp::testing {

inline void enumerate_monomials(Monomial& m, std::size_t index, unsigned remaining, std::vector<Monomial>& out) {
  if (index == m.size()) {
    out.push_back(m);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    m[index] = e;
    enumerate_monomials(m, index + 1, remaining - e, out);
  }
  m[index] = 0;
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  enumerate_monomials(m, 0, degree, out);
  return out;
}

/// Reduced row echelon nullspace basis of a dense rational matrix.
inline std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> a, std::size_t ncols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t k = col; k < ncols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// All syzygies s (rows with s*m = 0) whose entries have degree <= degree,
/// as a vector-space basis.
inline std::vector<std::vector<OrePoly>> truncated_syzygies(const OperatorMatrix& m, unsigned degree) {
  const auto& ring = m.ring();
  const auto basis_monomials = monomials_up_to(ring->num_generators(), degree);
  const std::size_t nb = basis_monomials.size();
  const std::size_t unknowns = m.rows() * nb;
  // equation index: (column j, monomial of the product)
  std::map<std::pair<std::size_t, Monomial>, std::size_t> equation_index;
  std::vector<std::vector<Rational>> a;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < nb; ++k) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        for (const auto& t : m(i, j).terms()) {
          const auto key = std::make_pair(j, basis_monomials[k] * t.monomial);
          auto [it, inserted] = equation_index.try_emplace(key, a.size());
          if (inserted) a.emplace_back(unknowns, Rational(0));
          a[it->second][i * nb + k] += t.coeff;
        }
      }
    }
  }
  std::vector<std::vector<OrePoly>> out;
  for (const auto& v : rational_nullspace(std::move(a), unknowns)) {
    std::vector<OrePoly> s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < nb; ++k) {
        if (v[i * nb + k] != 0) terms.push_back(Term{basis_monomials[k], v[i * nb + k]});
      }
      s.push_back(OrePoly::from_terms(ring, std::move(terms)));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace opgp::testing
