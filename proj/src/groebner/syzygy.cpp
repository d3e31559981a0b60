#include "opgp/errors.hpp"
#include "opgp/groebner/groebner.hpp"

namespace opgp {

OperatorMatrix syzygy_module(const OperatorMatrix& m) {
  const auto& ring = m.ring();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // Rows of [M | I] under position-over-term: basis elements with a
  // vanishing M-part generate the syzygies.
  std::vector<ModuleVector> augmented;
  augmented.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    ModuleVector v = m.row(i);
    v.resize(cols + rows, OrePoly(ring));
    v[cols + i] = OrePoly::constant(ring, 1);
    augmented.push_back(std::move(v));
  }
  const GroebnerBasis gb = buchberger(ring, cols + rows, std::move(augmented));
  std::vector<std::vector<OrePoly>> syzygies;
  for (const auto& g : gb.generators) {
    bool in_kernel = true;
    for (std::size_t k = 0; k < cols && in_kernel; ++k) in_kernel = g[k].is_zero();
    if (in_kernel) syzygies.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(cols), g.end());
  }
  return OperatorMatrix::from_rows(ring, rows, syzygies);
}

OperatorMatrix right_nullspace(const OperatorMatrix& m) { return involution(syzygy_module(involution(m))); }

OperatorMatrix reduce_matrix(const OperatorMatrix& m1, const OperatorMatrix& m2) {
  require_same_ring(m1.ring(), m2.ring(), "reduce_matrix");
  if (m1.cols() != m2.cols()) throw DimensionMismatch("reduce_matrix: column counts differ");
  const GroebnerBasis gb = buchberger(m2);
  std::vector<std::vector<OrePoly>> residues;
  for (std::size_t i = 0; i < m1.rows(); ++i) {
    ModuleVector r = normal_form(m1.row(i), gb);
    if (!is_zero(r)) residues.push_back(std::move(r));
  }
  return OperatorMatrix::from_rows(m1.ring(), m1.cols(), residues);
}

bool row_module_equal(const OperatorMatrix& m1, const OperatorMatrix& m2) {
  return reduce_matrix(m1, m2).rows() == 0 && reduce_matrix(m2, m1).rows() == 0;
}

bool column_module_equal(const OperatorMatrix& m1, const OperatorMatrix& m2) {
  if (m1.rows() != m2.rows()) throw DimensionMismatch("column_module_equal: row counts differ");
  return row_module_equal(involution(m1), involution(m2));
}

}  // namespace opgp
