#include "opgp/orealg/operator_matrix.hpp"

#include <sstream>

#include "opgp/errors.hpp"
#include "opgp/orealg/parser.hpp"

namespace opgp {

OperatorMatrix::OperatorMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, OrePoly(ring_)) {}

OperatorMatrix OperatorMatrix::identity(RingPtr ring, std::size_t n) {
  OperatorMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = OrePoly::constant(ring, 1);
  return m;
}

OperatorMatrix OperatorMatrix::from_rows(RingPtr ring, std::size_t cols,
                                         const std::vector<std::vector<OrePoly>>& rows) {
  OperatorMatrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("from_rows: ragged row");
    for (std::size_t j = 0; j < cols; ++j) {
      require_same_ring(ring, rows[i][j].ring(), "from_rows");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

OperatorMatrix OperatorMatrix::parse(RingPtr ring, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  OperatorMatrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("parse: ragged row");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_operator(rows[i][j], ring);
  }
  return m;
}

std::vector<OrePoly> OperatorMatrix::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<OrePoly> OperatorMatrix::column(std::size_t j) const {
  std::vector<OrePoly> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

OperatorMatrix OperatorMatrix::transpose() const {
  OperatorMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

OperatorMatrix OperatorMatrix::block(std::size_t row0, std::size_t nrows, std::size_t col0,
                                     std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw DimensionMismatch("block out of range");
  OperatorMatrix b(ring_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
  }
  return b;
}

OperatorMatrix OperatorMatrix::select_columns(const std::vector<std::size_t>& columns) const {
  OperatorMatrix s(ring_, rows_, columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= cols_) throw DimensionMismatch("select_columns: index out of range");
    for (std::size_t i = 0; i < rows_; ++i) s(i, k) = (*this)(i, columns[k]);
  }
  return s;
}

bool OperatorMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

OperatorMatrix OperatorMatrix::operator-() const {
  OperatorMatrix n(*this);
  for (auto& e : n.entries_) e = -e;
  return n;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix add");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix add: shapes differ");
  OperatorMatrix s(a);
  for (std::size_t k = 0; k < s.entries_.size(); ++k) s.entries_[k] += b.entries_[k];
  return s;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) { return a + (-b); }

bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
  return same_ring(a.ring_, b.ring_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.entries_ == b.entries_;
}

std::string OperatorMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0) out << ", ";
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out << ", ";
      out << (*this)(i, j).to_string();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

OperatorMatrix mat_mul(const OperatorMatrix& m, const OperatorMatrix& n) {
  require_same_ring(m.ring(), n.ring(), "mat_mul");
  if (m.cols() != n.rows()) {
    throw DimensionMismatch("mat_mul: inner dimensions " + std::to_string(m.cols()) + " and " +
                            std::to_string(n.rows()) + " differ");
  }
  OperatorMatrix p(m.ring(), m.rows(), n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& a = m(i, j);
      if (a.is_zero()) continue;
      for (std::size_t k = 0; k < n.cols(); ++k) {
        if (!n(j, k).is_zero()) p(i, k) += mul(a, n(j, k));
      }
    }
  }
  return p;
}

OperatorMatrix involution(const OperatorMatrix& m) {
  OperatorMatrix t(m.ring(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = theta(m(i, j));
  }
  return t;
}

OperatorMatrix hstack(const OperatorMatrix& m, const OperatorMatrix& n) {
  require_same_ring(m.ring(), n.ring(), "hstack");
  if (m.rows() != n.rows()) throw DimensionMismatch("hstack: row counts differ");
  OperatorMatrix s(m.ring(), m.rows(), m.cols() + n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = m(i, j);
    for (std::size_t j = 0; j < n.cols(); ++j) s(i, m.cols() + j) = n(i, j);
  }
  return s;
}

OperatorMatrix vstack(const OperatorMatrix& m, const OperatorMatrix& n) {
  require_same_ring(m.ring(), n.ring(), "vstack");
  if (m.cols() != n.cols()) throw DimensionMismatch("vstack: column counts differ");
  OperatorMatrix s(m.ring(), m.rows() + n.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) s(i, j) = m(i, j);
    for (std::size_t i = 0; i < n.rows(); ++i) s(m.rows() + i, j) = n(i, j);
  }
  return s;
}

}  // namespace opgp
