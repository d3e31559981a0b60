#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "opgp/kernelcalc/gaussian_expr.hpp"
#include "opgp/orealg/operator_matrix.hpp"

namespace opgp {

/// Matrix of Gaussian-polynomial expressions over d base variables. Kernel
/// entries use the paired exponent; after substitute_group2 they are centered.
class KernelMatrix {
 public:
  KernelMatrix(std::vector<std::string> base_names, std::size_t rows, std::size_t cols);

  [[nodiscard]] std::size_t dimension() const { return base_names_.size(); }
  [[nodiscard]] const std::vector<std::string>& base_names() const { return base_names_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  [[nodiscard]] const GaussianPolyExpr& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  GaussianPolyExpr& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  [[nodiscard]] KernelMatrix transpose() const;
  [[nodiscard]] std::vector<GaussianPolyExpr> column(std::size_t j) const;

  friend bool operator==(const KernelMatrix& a, const KernelMatrix& b);

 private:
  std::vector<std::string> base_names_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GaussianPolyExpr> entries_;
};

/// m x m diagonal matrix of exp(-1/2 sum_a w_a (x1_a - x2_a)^2).
KernelMatrix base_kernel(std::vector<std::string> base_names, std::size_t multiplicity,
                         std::vector<Rational> weights = {});

/// Convenience form with names x1.. only used for display.
KernelMatrix base_kernel(std::size_t d, std::size_t multiplicity);

/// Which argument an operator acts on. Centered expressions only have First.
enum class Group { First, Second };

/// Applies a differential operator (or polynomial multiplier) to one
/// argument group: x_a multiplies, D_a differentiates.
template <class C>
BasicGaussianExpr<C> apply_operator(const OrePoly& op, const BasicGaussianExpr<C>& e, Group group);

/// result(i,j) = sum_{u,v} L(i,u)<1> R(j,v)<2> K(u,v).
KernelMatrix two_sided(const OperatorMatrix& left, const OperatorMatrix& right, const KernelMatrix& k);

/// B k B'^T.
KernelMatrix push_kernel(const OperatorMatrix& b, const KernelMatrix& k);

/// Operator applied on group 1 only: result(i,j) = sum_u A(i,u)<1> K(u,j).
KernelMatrix apply_left(const OperatorMatrix& a, const KernelMatrix& k);

/// Fixes group 2 at `point`; the point is converted exactly to rationals.
KernelMatrix substitute_group2(const KernelMatrix& k, std::span<const double> point);

/// Swaps the argument groups of every entry and transposes.
KernelMatrix swap_groups(const KernelMatrix& k);
bool is_swap_symmetric(const KernelMatrix& k);

double evaluate(const GaussianPolyExpr& e, std::span<const double> point);

/// Kernel value matrix at (x1, x2).
Eigen::MatrixXd evaluate_pair(const KernelMatrix& k, std::span<const double> x1, std::span<const double> x2);

/// Centered matrix evaluated at x.
Eigen::MatrixXd evaluate_at(const KernelMatrix& k, std::span<const double> x);

/// A applied to a column of centered expressions.
template <class C>
std::vector<BasicGaussianExpr<C>> apply_operator_point(const OperatorMatrix& a, const std::vector<BasicGaussianExpr<C>>& m);

std::string to_string(const KernelMatrix& k);

nlohmann::json to_json(const KernelMatrix& k);
KernelMatrix kernel_from_json(const nlohmann::json& j);

}  // namespace opgp
