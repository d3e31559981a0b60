#pragma once

#include <vector>

#include <json.hpp>

#include "opgp/groebner/groebner.hpp"

namespace opgp {

struct ParametrizationResult {
  OperatorMatrix B;       // right nullspace of A
  OperatorMatrix Aprime;  // left nullspace of B
  bool controllable = false;
  OperatorMatrix witness;  // rows of Aprime outside the row module of A
};

/// B = right_nullspace(A), A' = syzygy_module(B); controllable iff A and A'
/// generate the same row module.
ParametrizationResult parametrize(const OperatorMatrix& a);

/// Block diagonal matrix whose i-th block is the row of generators for the
/// i-th function. Generators must be free of partials.
OperatorMatrix boundary_param(const RingPtr& ring, const std::vector<std::vector<OrePoly>>& generators);

/// Single function: the row [f_1 ... f_k].
OperatorMatrix boundary_param(const RingPtr& ring, const std::vector<OrePoly>& generators);

struct IntersectionResult {
  OperatorMatrix C;   // right nullspace of [B1 B2]
  OperatorMatrix C1;  // first cols(B1) rows of C
  OperatorMatrix C2;
  OperatorMatrix P;   // B1*C1 == -B2*C2
  OperatorMatrix normalized_P;
  OperatorMatrix extra_relations;  // syzygies of C beyond the rows of [B1 B2]
};

/// Parametrizes the intersection of the images of B1 and B2. Throws
/// std::logic_error if the two products disagree.
IntersectionResult intersect(const OperatorMatrix& b1, const OperatorMatrix& b2);

/// Same column module, canonical generators: the reduced Groebner basis of
/// the column module when it is no larger than the set of nonzero columns,
/// otherwise the nonzero columns. Each column is scaled to integer
/// coefficients with content 1 and a positive leading coefficient.
OperatorMatrix normalize_columns(const OperatorMatrix& p);

struct VerificationReport {
  bool product_zero = false;
  OperatorMatrix a_residue;       // reduce_matrix(A, A')
  OperatorMatrix aprime_residue;  // reduce_matrix(A', A)

  [[nodiscard]] bool controllable() const { return a_residue.rows() == 0 && aprime_residue.rows() == 0; }
  [[nodiscard]] bool passed() const { return product_zero && controllable(); }
};

VerificationReport verify_parametrization(const OperatorMatrix& a, const OperatorMatrix& b);

nlohmann::json matrix_to_json(const OperatorMatrix& m);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const ParametrizationResult& result);
nlohmann::json to_json(const IntersectionResult& result);

}  // namespace opgp
