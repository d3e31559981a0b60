#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "opgp/kernelcalc/kernel.hpp"
#include "opgp/orealg/operator_matrix.hpp"

namespace opgp {

/// A datum (functional f)(point) = value. Without a functional the
/// observed quantity is the full output vector.
struct Observation {
  std::vector<double> point;
  std::vector<double> value;
  std::optional<OperatorMatrix> functional;
};

/// Polynomial column as Gaussian expressions with a vanishing exponent, so
/// operators act on it like on any other entry.
std::vector<GaussianPolyExpr> polynomial_column(const std::vector<OrePoly>& polys);
std::vector<GaussianPolyExpr> zero_column(std::size_t length);

/// Block (i,j) = F_i<1> F_j<2> k at (x_i, x_j).
Eigen::MatrixXd gram(const KernelMatrix& k, const RingPtr& ring, const std::vector<Observation>& obs);

class GPModel {
 public:
  [[nodiscard]] const KernelMatrix& kernel() const { return kernel_; }
  [[nodiscard]] const RingPtr& ring() const { return ring_; }
  [[nodiscard]] const std::vector<GaussianPolyExpr>& mean() const { return mean_; }
  [[nodiscard]] const std::vector<Observation>& observations() const { return observations_; }
  [[nodiscard]] double epsilon() const { return epsilon_; }
  [[nodiscard]] const Eigen::MatrixXd& gram() const { return gram_; }
  [[nodiscard]] const Eigen::VectorXd& alpha() const { return alpha_; }
  [[nodiscard]] std::size_t dimension() const { return kernel_.dimension(); }
  [[nodiscard]] std::size_t outputs() const { return kernel_.rows(); }

  /// mu + sum_i alpha_i k(x, X)_i. Every alpha_i enters as the exact
  /// rational value of its double, so the column is exact.
  [[nodiscard]] const std::vector<GaussianPolyExpr>& posterior_mean() const { return posterior_; }
  /// posterior_mean - mu.
  [[nodiscard]] std::vector<GaussianPolyExpr> homogeneous_part() const;

  [[nodiscard]] Eigen::VectorXd predict_mean(std::span<const double> x) const;
  [[nodiscard]] Eigen::MatrixXd predict_cov(std::span<const double> x, std::span<const double> x2) const;
  /// Numeric mean from the textbook formula, independent of the symbolic column.
  [[nodiscard]] Eigen::VectorXd predict_mean_numeric(std::span<const double> x) const;

  friend GPModel fit(const KernelMatrix&, const RingPtr&, std::vector<GaussianPolyExpr>, std::vector<Observation>, double);

 private:
  GPModel(KernelMatrix k, RingPtr ring) : kernel_(std::move(k)), ring_(std::move(ring)) {}
  [[nodiscard]] Eigen::MatrixXd cross(std::span<const double> x) const;

  KernelMatrix kernel_;
  RingPtr ring_;
  std::vector<GaussianPolyExpr> mean_;
  std::vector<Observation> observations_;
  double epsilon_ = 0.0;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  std::vector<KernelMatrix> cross_;
  std::vector<GaussianPolyExpr> posterior_;
};

/// alpha = (y - F mu(X)) (K + eps^2 I)^{-1}. An empty mean means zero.
GPModel fit(const KernelMatrix& k, const RingPtr& ring, std::vector<GaussianPolyExpr> mean,
            std::vector<Observation> observations, double epsilon = 1e-5);

/// Each term rewritten as c * exp(sum w_a c_a x_a - 1/2 sum w_a x_a^2) with the
/// constant exp(-1/2 sum w_a c_a^2) folded into the coefficients.
std::string expanded_string(const GaussianPolyExpr& e, const std::vector<std::string>& names);
std::vector<double> expanded_coefficients(const GaussianPolyExpr& e);
/// Smallest |coefficient| over the Gaussian terms of a column, in expanded form.
double normalized_coefficient(const std::vector<GaussianPolyExpr>& column);

/// Replaces base variable `var` by `value` exactly in every entry.
std::vector<GaussianPolyExpr> restrict_to(const std::vector<GaussianPolyExpr>& column, std::size_t var,
                                          const Rational& value);

nlohmann::json to_json(const Observation& o);
nlohmann::json to_json(const GPModel& m);

}  // namespace opgp
