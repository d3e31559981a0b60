#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opgp/orealg/ore_poly.hpp"

namespace opgp {

/// Rectangular matrix over a ring of operators. Zero rows or columns are
/// allowed (an empty nullspace is a matrix with no columns).
class OperatorMatrix {
 public:
  OperatorMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  static OperatorMatrix identity(RingPtr ring, std::size_t n);
  static OperatorMatrix from_rows(RingPtr ring, std::size_t cols,
                                  const std::vector<std::vector<OrePoly>>& rows);
  /// Parses every entry with parse_operator.
  static OperatorMatrix parse(RingPtr ring, const std::vector<std::vector<std::string>>& rows);

  [[nodiscard]] const RingPtr& ring() const { return ring_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  [[nodiscard]] const OrePoly& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  OrePoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  [[nodiscard]] std::vector<OrePoly> row(std::size_t i) const;
  [[nodiscard]] std::vector<OrePoly> column(std::size_t j) const;
  [[nodiscard]] OperatorMatrix transpose() const;
  [[nodiscard]] OperatorMatrix block(std::size_t row0, std::size_t nrows, std::size_t col0,
                                     std::size_t ncols) const;
  [[nodiscard]] OperatorMatrix select_columns(const std::vector<std::size_t>& columns) const;
  [[nodiscard]] bool is_zero() const;

  OperatorMatrix operator-() const;
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b);

  /// "[[e11, e12], [e21, e22]]" with canonical entries.
  [[nodiscard]] std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<OrePoly> entries_;
};

/// Entry (i,k) = sum_j M(i,j) * N(j,k), factors kept in order.
OperatorMatrix mat_mul(const OperatorMatrix& m, const OperatorMatrix& n);

/// theta(M)^T; self-inverse and reverses products.
OperatorMatrix involution(const OperatorMatrix& m);

/// [M N] side by side.
OperatorMatrix hstack(const OperatorMatrix& m, const OperatorMatrix& n);
/// [M; N] stacked.
OperatorMatrix vstack(const OperatorMatrix& m, const OperatorMatrix& n);

}  // namespace opgp
