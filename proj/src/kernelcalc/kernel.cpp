#include "opgp/kernelcalc/kernel.hpp"

#include <map>
#include <stdexcept>

#include "opgp/errors.hpp"

namespace opgp {

KernelMatrix::KernelMatrix(std::vector<std::string> base_names, std::size_t rows, std::size_t cols)
    : base_names_(std::move(base_names)), rows_(rows), cols_(cols), entries_(rows * cols) {
  if (base_names_.empty()) throw std::invalid_argument("kernel dimension must be at least 1");
}

KernelMatrix KernelMatrix::transpose() const {
  KernelMatrix t(base_names_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<GaussianPolyExpr> KernelMatrix::column(std::size_t j) const {
  std::vector<GaussianPolyExpr> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

bool operator==(const KernelMatrix& a, const KernelMatrix& b) {
  return a.base_names_ == b.base_names_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

KernelMatrix base_kernel(std::vector<std::string> base_names, std::size_t multiplicity, std::vector<Rational> weights) {
  const std::size_t d = base_names.size();
  KernelMatrix k(std::move(base_names), multiplicity, multiplicity);
  const auto exponent = GaussianExponent::paired(d, std::move(weights));
  for (std::size_t i = 0; i < multiplicity; ++i) {
    k(i, i) = GaussianPolyExpr::single(exponent, Polynomial<Rational>::constant(2 * d, Rational(1)));
  }
  return k;
}

KernelMatrix base_kernel(std::size_t d, std::size_t multiplicity) {
  std::vector<std::string> names;
  for (std::size_t a = 0; a < d; ++a) names.push_back("x" + std::to_string(a + 1) + "_");
  return base_kernel(std::move(names), multiplicity);
}

namespace {

template <class C>
C coefficient(const Rational& q) {
  if constexpr (std::is_same_v<C, double>) {
    return q.get_d();
  } else {
    return q;
  }
}

void require_dimension(const OrePoly& op, std::size_t d) {
  if (op.ring()->dimension() != d) throw DimensionMismatch("operator ring dimension does not match the kernel");
}

}  // namespace

template <class C>
BasicGaussianExpr<C> apply_operator(const OrePoly& op, const BasicGaussianExpr<C>& e, Group group) {
  if (op.is_zero() || e.is_zero()) return {};
  const auto& ring = op.ring();
  const std::size_t d = ring->dimension();
  const auto& first_exponent = e.terms().front().exponent;
  require_dimension(op, first_exponent.dimension());
  std::size_t offset = 0;
  if (group == Group::Second) {
    if (!first_exponent.is_paired()) throw std::invalid_argument("apply_operator: centered expressions have one group");
    offset = d;
  }
  std::map<std::vector<std::uint32_t>, BasicGaussianExpr<C>> derivatives;
  derivatives.emplace(std::vector<std::uint32_t>(d, 0), e);
  // D^b e, built from a lower-order derivative.
  auto derivative = [&](auto&& self, const std::vector<std::uint32_t>& b) -> const BasicGaussianExpr<C>& {
    if (auto it = derivatives.find(b); it != derivatives.end()) return it->second;
    std::size_t axis = 0;
    while (b[axis] == 0) ++axis;
    auto lower = b;
    --lower[axis];
    BasicGaussianExpr<C> value = self(self, lower).diff(offset + axis);
    return derivatives.emplace(b, std::move(value)).first->second;
  };
  BasicGaussianExpr<C> result;
  for (const auto& t : op.terms()) {
    std::vector<std::uint32_t> b(d, 0);
    if (ring->is_weyl()) {
      for (std::size_t a = 0; a < d; ++a) b[a] = t.monomial[d + a];
    }
    BasicGaussianExpr<C> term = derivative(derivative, b);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::uint32_t k = 0; k < t.monomial[a]; ++k) term = term.times_variable(offset + a);
    }
    result += term.scaled(coefficient<C>(t.coeff));
  }
  return result;
}

template GaussianPolyExpr apply_operator(const OrePoly&, const GaussianPolyExpr&, Group);
template RealGaussianExpr apply_operator(const OrePoly&, const RealGaussianExpr&, Group);

KernelMatrix apply_left(const OperatorMatrix& a, const KernelMatrix& k) {
  if (a.cols() != k.rows()) throw DimensionMismatch("apply_left: operator columns do not match kernel rows");
  if (a.ring()->dimension() != k.dimension()) throw DimensionMismatch("apply_left: ring dimension does not match kernel");
  KernelMatrix out(k.base_names(), a.rows(), k.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      GaussianPolyExpr sum;
      for (std::size_t u = 0; u < a.cols(); ++u) sum += apply_operator(a(i, u), k(u, j), Group::First);
      out(i, j) = std::move(sum);
    }
  }
  return out;
}

KernelMatrix two_sided(const OperatorMatrix& left, const OperatorMatrix& right, const KernelMatrix& k) {
  if (left.cols() != k.rows() || right.cols() != k.cols()) {
    throw DimensionMismatch("two_sided: operator columns do not match kernel size");
  }
  if (left.ring()->dimension() != k.dimension() || right.ring()->dimension() != k.dimension()) {
    throw DimensionMismatch("two_sided: ring dimension does not match kernel");
  }
  const KernelMatrix t = apply_left(left, k);
  KernelMatrix out(k.base_names(), left.rows(), right.rows());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < right.rows(); ++j) {
      GaussianPolyExpr sum;
      for (std::size_t v = 0; v < right.cols(); ++v) sum += apply_operator(right(j, v), t(i, v), Group::Second);
      out(i, j) = std::move(sum);
    }
  }
  return out;
}

KernelMatrix push_kernel(const OperatorMatrix& b, const KernelMatrix& k) { return two_sided(b, b, k); }

KernelMatrix substitute_group2(const KernelMatrix& k, std::span<const double> point) {
  const std::size_t d = k.dimension();
  if (point.size() != d) throw DimensionMismatch("substitute_group2: point length does not match dimension");
  std::vector<Rational> center;
  for (double v : point) center.push_back(rational_from_double(v));
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < d; ++a) keep.push_back(a);
  KernelMatrix out(k.base_names(), k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      GaussianPolyExpr e;
      for (const auto& t : k(i, j).terms()) {
        Polynomial<Rational> p = t.poly;
        for (std::size_t a = 0; a < d; ++a) p = p.substitute(d + a, center[a]);
        e.add(t.exponent.substituted(center), p.remap(keep));
      }
      out(i, j) = std::move(e);
    }
  }
  return out;
}

KernelMatrix swap_groups(const KernelMatrix& k) {
  const std::size_t d = k.dimension();
  std::vector<std::size_t> swap;
  for (std::size_t a = 0; a < d; ++a) swap.push_back(d + a);
  for (std::size_t a = 0; a < d; ++a) swap.push_back(a);
  KernelMatrix out(k.base_names(), k.cols(), k.rows());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      GaussianPolyExpr e;
      for (const auto& t : k(i, j).terms()) {
        if (!t.exponent.is_paired()) throw std::invalid_argument("swap_groups: entry is not in paired form");
        e.add(t.exponent, t.poly.remap(swap));
      }
      out(j, i) = std::move(e);
    }
  }
  return out;
}

bool is_swap_symmetric(const KernelMatrix& k) { return swap_groups(k) == k; }

double evaluate(const GaussianPolyExpr& e, std::span<const double> point) {
  const double v = e.evaluate(point);
  if (!std::isfinite(v)) throw NumericError("evaluate: non-finite result");
  return v;
}

Eigen::MatrixXd evaluate_pair(const KernelMatrix& k, std::span<const double> x1, std::span<const double> x2) {
  const std::size_t d = k.dimension();
  if (x1.size() != d || x2.size() != d) throw DimensionMismatch("evaluate_pair: point length does not match dimension");
  std::vector<double> point(x1.begin(), x1.end());
  point.insert(point.end(), x2.begin(), x2.end());
  Eigen::MatrixXd out(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) out(i, j) = evaluate(k(i, j), point);
  }
  return out;
}

Eigen::MatrixXd evaluate_at(const KernelMatrix& k, std::span<const double> x) {
  if (x.size() != k.dimension()) throw DimensionMismatch("evaluate_at: point length does not match dimension");
  Eigen::MatrixXd out(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) out(i, j) = evaluate(k(i, j), x);
  }
  return out;
}

template <class C>
std::vector<BasicGaussianExpr<C>> apply_operator_point(const OperatorMatrix& a, const std::vector<BasicGaussianExpr<C>>& m) {
  if (a.cols() != m.size()) throw DimensionMismatch("apply_operator_point: operator columns do not match column length");
  std::vector<BasicGaussianExpr<C>> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t u = 0; u < a.cols(); ++u) out[i] += apply_operator(a(i, u), m[u], Group::First);
  }
  return out;
}

template std::vector<GaussianPolyExpr> apply_operator_point(const OperatorMatrix&, const std::vector<GaussianPolyExpr>&);
template std::vector<RealGaussianExpr> apply_operator_point(const OperatorMatrix&, const std::vector<RealGaussianExpr>&);

std::string to_string(const KernelMatrix& k) {
  const auto paired = paired_names(k.base_names());
  std::string out = "[";
  for (std::size_t i = 0; i < k.rows(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < k.cols(); ++j) {
      if (j > 0) out += ", ";
      const auto& e = k(i, j);
      const bool is_paired = !e.is_zero() && e.terms().front().exponent.is_paired();
      out += e.to_string(is_paired ? paired : k.base_names());
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace opgp
