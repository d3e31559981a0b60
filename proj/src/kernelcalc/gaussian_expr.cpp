#include "opgp/kernelcalc/gaussian_expr.hpp"

#include <cmath>
#include <stdexcept>

namespace opgp {

GaussianExponent::GaussianExponent(Kind kind, std::vector<Rational> weights, std::vector<Rational> center)
    : kind_(kind), weights_(std::move(weights)), center_(std::move(center)) {
  if (weights_.empty()) throw std::invalid_argument("Gaussian exponent needs dimension >= 1");
  for (const auto& w : weights_) {
    if (kind_ != Kind::Flat && w <= 0) throw std::invalid_argument("Gaussian exponent weights must be positive");
  }
}

GaussianExponent GaussianExponent::paired(std::size_t d, std::vector<Rational> weights) {
  if (weights.empty()) weights.assign(d, Rational(1));
  if (weights.size() != d) throw DimensionMismatch("paired exponent: weight count does not match dimension");
  return GaussianExponent(Kind::Paired, std::move(weights), {});
}

GaussianExponent GaussianExponent::centered(std::vector<Rational> center, std::vector<Rational> weights) {
  if (weights.empty()) weights.assign(center.size(), Rational(1));
  if (weights.size() != center.size()) throw DimensionMismatch("centered exponent: weight count does not match center");
  return GaussianExponent(Kind::Centered, std::move(weights), std::move(center));
}

GaussianExponent GaussianExponent::flat(std::size_t d) {
  return GaussianExponent(Kind::Flat, std::vector<Rational>(d, Rational(0)), std::vector<Rational>(d, Rational(0)));
}

double GaussianExponent::value(std::span<const double> point) const {
  if (point.size() != num_vars()) throw DimensionMismatch("exponent evaluation: wrong point length");
  if (is_flat()) return 0.0;
  const std::size_t d = dimension();
  double sum = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    const double diff = is_paired() ? point[a] - point[d + a] : point[a] - center_[a].get_d();
    sum += weights_[a].get_d() * diff * diff;
  }
  return -0.5 * sum;
}

GaussianExponent GaussianExponent::substituted(const std::vector<Rational>& point) const {
  if (!is_paired()) throw std::logic_error("substituted: exponent is already centered");
  if (point.size() != dimension()) throw DimensionMismatch("substituted: point length does not match dimension");
  return centered(point, weights_);
}

std::string GaussianExponent::to_string(const std::vector<std::string>& names) const {
  std::string out;
  const std::size_t d = dimension();
  if (is_flat()) return "0";
  for (std::size_t a = 0; a < d; ++a) {
    if (a > 0) out += " ";
    out += "-" + opgp::to_string(weights_[a] / 2) + "*(" + names.at(a);
    if (is_paired()) {
      out += " - " + names.at(d + a);
    } else if (center_[a] != 0) {
      out += (center_[a] < 0 ? " + " : " - ") + opgp::to_string(abs(center_[a]));
    }
    out += ")^2";
  }
  return out;
}

bool operator==(const GaussianExponent& a, const GaussianExponent& b) {
  return a.kind_ == b.kind_ && a.weights_ == b.weights_ && a.center_ == b.center_;
}

namespace {

std::strong_ordering compare(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c <=> 0;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering operator<=>(const GaussianExponent& a, const GaussianExponent& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (auto c = compare(a.center_, b.center_); c != 0) return c;
  return compare(a.weights_, b.weights_);
}

RealGaussianExpr to_real(const GaussianPolyExpr& e) {
  RealGaussianExpr r;
  for (const auto& t : e.terms()) r.add(t.exponent, convert<double>(t.poly));
  return r;
}

std::vector<std::string> paired_names(const std::vector<std::string>& base) {
  std::vector<std::string> names;
  for (const auto& b : base) names.push_back(b + "1");
  for (const auto& b : base) names.push_back(b + "2");
  return names;
}

}  // namespace opgp
