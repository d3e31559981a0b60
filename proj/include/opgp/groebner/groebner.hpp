#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "opgp/orealg/operator_matrix.hpp"

namespace opgp {

/// Row vector over the ring; one polynomial per component.
using ModuleVector = std::vector<OrePoly>;

/// Leading term under position-over-term: the first nonzero component wins,
/// then grevlex inside it.
struct LeadingTerm {
  std::size_t component;
  Monomial monomial;
  Rational coeff;
};

std::optional<LeadingTerm> leading_term(const ModuleVector& v);

/// Module order comparison of two (component, monomial) positions.
std::strong_ordering compare_positions(std::size_t ca, const Monomial& ma, std::size_t cb,
                                       const Monomial& mb);

bool is_zero(const ModuleVector& v);
ModuleVector zero_vector(const RingPtr& ring, std::size_t rank);

struct BuchbergerOptions {
  std::uint64_t max_pair_reductions = 1'000'000;
};

/// Reduced Groebner basis of a left submodule of R^rank, generators monic
/// and sorted by decreasing leading term.
struct GroebnerBasis {
  RingPtr ring;
  std::size_t rank = 0;
  std::vector<ModuleVector> generators;
  bool reduced = false;

  [[nodiscard]] bool empty() const { return generators.empty(); }
};

GroebnerBasis buchberger(const RingPtr& ring, std::size_t rank, std::vector<ModuleVector> gens,
                         const BuchbergerOptions& options = {});

/// Basis of the module generated by the rows of m.
GroebnerBasis buchberger(const OperatorMatrix& m, const BuchbergerOptions& options = {});

struct Division {
  std::vector<OrePoly> quotients;  // one per basis generator
  ModuleVector remainder;
};

/// Full left division: v = sum_i quotients[i] * generators[i] + remainder,
/// with no term of remainder divisible by a leading term of the basis.
Division divide(const ModuleVector& v, const GroebnerBasis& gb);

ModuleVector normal_form(const ModuleVector& v, const GroebnerBasis& gb);

/// lc(g)*t_f*f - lc(f)*t_g*g over the lcm of the leading monomials; nullopt
/// when the leading components differ.
std::optional<ModuleVector> s_vector(const ModuleVector& f, const ModuleVector& g);

/// Buchberger criterion: every S-vector reduces to zero.
bool is_groebner_basis(const GroebnerBasis& gb);

/// Left nullspace: rows s with s*m = 0 generating all such rows. A matrix
/// whose rows are free yields zero rows.
OperatorMatrix syzygy_module(const OperatorMatrix& m);

/// Columns b with m*b = 0 generating all such columns.
OperatorMatrix right_nullspace(const OperatorMatrix& m);

/// Normal forms of the rows of m1 that do not reduce to zero modulo the row
/// module of m2. Empty iff rows(m1) is contained in rows(m2).
OperatorMatrix reduce_matrix(const OperatorMatrix& m1, const OperatorMatrix& m2);

bool row_module_equal(const OperatorMatrix& m1, const OperatorMatrix& m2);
bool column_module_equal(const OperatorMatrix& m1, const OperatorMatrix& m2);

}  // namespace opgp
