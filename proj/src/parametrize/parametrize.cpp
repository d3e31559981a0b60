#include "opgp/parametrize/parametrize.hpp"

#include <numeric>
#include <stdexcept>

#include "opgp/errors.hpp"

namespace opgp {

ParametrizationResult parametrize(const OperatorMatrix& a) {
  OperatorMatrix b = right_nullspace(a);
  OperatorMatrix aprime = syzygy_module(b);
  OperatorMatrix witness = reduce_matrix(aprime, a);
  const bool controllable = witness.rows() == 0 && reduce_matrix(a, aprime).rows() == 0;
  return ParametrizationResult{std::move(b), std::move(aprime), controllable, std::move(witness)};
}

OperatorMatrix boundary_param(const RingPtr& ring, const std::vector<std::vector<OrePoly>>& generators) {
  std::size_t cols = 0;
  for (const auto& row : generators) {
    for (const auto& g : row) {
      require_same_ring(ring, g.ring(), "boundary_param");
      if (g.has_partials()) {
        throw std::invalid_argument("boundary_param: generator " + g.to_string() + " contains a partial derivative");
      }
    }
    cols += row.size();
  }
  OperatorMatrix m(ring, generators.size(), cols);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t k = 0; k < generators[i].size(); ++k) m(i, offset + k) = generators[i][k];
    offset += generators[i].size();
  }
  return m;
}

OperatorMatrix boundary_param(const RingPtr& ring, const std::vector<OrePoly>& generators) {
  return boundary_param(ring, std::vector<std::vector<OrePoly>>{generators});
}

IntersectionResult intersect(const OperatorMatrix& b1, const OperatorMatrix& b2) {
  require_same_ring(b1.ring(), b2.ring(), "intersect");
  if (b1.rows() != b2.rows()) throw DimensionMismatch("intersect: row counts differ");
  const OperatorMatrix b = hstack(b1, b2);
  OperatorMatrix c = right_nullspace(b);
  OperatorMatrix c1 = c.block(0, b1.cols(), 0, c.cols());
  OperatorMatrix c2 = c.block(b1.cols(), b2.cols(), 0, c.cols());
  OperatorMatrix p = mat_mul(b1, c1);
  if (p != -mat_mul(b2, c2)) throw std::logic_error("intersect: B1*C1 != -B2*C2");
  OperatorMatrix extra = reduce_matrix(syzygy_module(c), b);
  OperatorMatrix normalized = normalize_columns(p);
  return IntersectionResult{std::move(c), std::move(c1), std::move(c2), std::move(p), std::move(normalized),
                            std::move(extra)};
}

namespace {

std::vector<OrePoly> primitive_column(std::vector<OrePoly> col) {
  const auto lead = leading_term(col);
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& e : col) {
    for (const auto& t : e.terms()) {
      den = lcm(den, mpz_class(t.coeff.get_den()));
      num = gcd(num, mpz_class(t.coeff.get_num()));
    }
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (lead->coeff < 0) scale = -scale;
  for (auto& e : col) e = e.scaled(scale);
  return col;
}

}  // namespace

OperatorMatrix normalize_columns(const OperatorMatrix& p) {
  std::vector<std::vector<OrePoly>> columns;
  for (std::size_t j = 0; j < p.cols(); ++j) {
    std::vector<OrePoly> col = p.column(j);
    if (!is_zero(col)) columns.push_back(std::move(col));
  }
  // The reduced basis of the column module is canonical; use it unless it
  // needs more generators than the columns themselves.
  const GroebnerBasis gb = buchberger(involution(p));
  if (gb.generators.size() <= columns.size()) {
    columns.clear();
    for (const auto& g : gb.generators) {
      std::vector<OrePoly> col;
      for (const auto& e : g) col.push_back(theta(e));
      columns.push_back(std::move(col));
    }
  }
  OperatorMatrix out(p.ring(), p.rows(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto col = primitive_column(columns[j]);
    for (std::size_t i = 0; i < p.rows(); ++i) out(i, j) = col[i];
  }
  return out;
}

VerificationReport verify_parametrization(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "verify_parametrization");
  if (a.cols() != b.rows()) throw DimensionMismatch("verify_parametrization: A and B are not conformable");
  const OperatorMatrix aprime = syzygy_module(b);
  return VerificationReport{mat_mul(a, b).is_zero(), reduce_matrix(a, aprime), reduce_matrix(aprime, a)};
}

nlohmann::json matrix_to_json(const OperatorMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

nlohmann::json to_json(const VerificationReport& report) {
  return {{"product_zero", report.product_zero},
          {"A_mod_Aprime", matrix_to_json(report.a_residue)},
          {"Aprime_mod_A", matrix_to_json(report.aprime_residue)},
          {"controllable", report.controllable()},
          {"passed", report.passed()}};
}

nlohmann::json to_json(const ParametrizationResult& result) {
  return {{"B", matrix_to_json(result.B)},
          {"Aprime", matrix_to_json(result.Aprime)},
          {"controllable", result.controllable},
          {"witness", matrix_to_json(result.witness)}};
}

nlohmann::json to_json(const IntersectionResult& result) {
  return {{"C", matrix_to_json(result.C)},
          {"P", matrix_to_json(result.P)},
          {"normalized_P", matrix_to_json(result.normalized_P)},
          {"extra_relations", matrix_to_json(result.extra_relations)}};
}

}  // namespace opgp
