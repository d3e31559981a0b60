#pragma once

// Regression setups of the worked sessions and their displayed results.

#include <cmath>

#include "opgp/gpr/gpr.hpp"
#include "opgp/orealg/parser.hpp"
#include "support/reference_matrices.hpp"

namespace opgp::testing {

inline GPModel fit_pushed(const OperatorMatrix& b, std::vector<GaussianPolyExpr> mean, std::vector<Observation> obs,
                          double epsilon) {
  const auto& ring = b.ring();
  const KernelMatrix k = push_kernel(b, base_kernel(ring->base_names(), b.cols()));
  return fit(k, ring, std::move(mean), std::move(obs), epsilon);
}

inline std::vector<GaussianPolyExpr> mean_of(const RingPtr& ring, const std::vector<std::string>& entries) {
  std::vector<OrePoly> polys;
  for (const auto& e : entries) polys.push_back(parse_operator(e, ring));
  return polynomial_column(polys);
}

/// Tangent, divergence-free field on the sphere observed at (+-1,0,0).
inline GPModel sphere_model(const OperatorMatrix& b, double epsilon = 1e-5) {
  return fit_pushed(b, {}, {{{1, 0, 0}, {0, 0, 1}, {}}, {{-1, 0, 0}, {0, 0, 1}, {}}}, epsilon);
}

/// Homogeneous equator model: f(0,0,1) = (1,0,0).
inline GPModel equator_model(const OperatorMatrix& p, double epsilon = 1e-5) {
  return fit_pushed(p, {}, {{{0, 0, 1}, {1, 0, 0}, {}}}, epsilon);
}

/// Same with boundary mean (0,-z,y).
inline GPModel equator_mean_model(const OperatorMatrix& p, double epsilon = 1e-5) {
  return fit_pushed(p, mean_of(p.ring(), {"0", "-z", "y"}), {{{0, 0, 1}, {1, 0, 0}, {}}}, epsilon);
}

/// Flow through the unit square with mean (1,0), conditioned on (0,1) at the centre.
inline GPModel square_model(const OperatorMatrix& p, double epsilon = 1e-5) {
  return fit_pushed(p, mean_of(p.ring(), {"1", "0"}), {{{0.5, 0.5}, {0, 1}, {}}}, epsilon);
}

/// Values and first derivatives at 0 and 1 of a one-dimensional process.
inline std::vector<Observation> ode_observations(const RingPtr& r) {
  const auto id = OperatorMatrix::parse(r, {{"1"}});
  const auto dx = OperatorMatrix::parse(r, {{"Dx"}});
  return {{{0.0}, {0.0}, id}, {{0.0}, {1.0}, dx}, {{1.0}, {0.0}, id}, {{1.0}, {0.0}, dx}};
}

/// Displayed closed form of the posterior covariance for ode_observations.
inline double ode_posterior_cov(double x, double y) {
  using std::exp;
  const double k = exp(-0.5 * (x - y) * (x - y));
  const double denom = exp(-2.0) - 3 * exp(-1.0) + 1;
  const double bracket = (x * y - x - y + 2) * exp(x + y - 1) + (x * y + 1) +
                         (-2 * x * y + x + y - 1) * (exp(x + y - 2) + exp(-1.0)) + (x * y - y + 1) * exp(y - 2) +
                         (x * y - x + 1) * exp(x - 2) + (y - x - 2) * exp(y - 1) + (x - y - 2) * exp(x - 1);
  return k - exp(-0.5 * x * x - 0.5 * y * y) / denom * bracket;
}

/// The Gaussian term of an entry with the given center; zero polynomial if absent.
inline Polynomial<Rational> term_at(const GaussianPolyExpr& e, const std::vector<Rational>& center) {
  for (const auto& t : e.terms()) {
    if (t.exponent.kind() == GaussianExponent::Kind::Centered && t.exponent.center() == center) return t.poly;
  }
  return Polynomial<Rational>(center.size());
}

inline Polynomial<Rational> flat_part(const GaussianPolyExpr& e, std::size_t d) {
  for (const auto& t : e.terms()) {
    if (t.exponent.is_flat()) return t.poly;
  }
  return Polynomial<Rational>(d);
}

inline Polynomial<Rational> poly(const RingPtr& ring, const std::string& text) {
  return flat_part(mean_of(ring, {text})[0], ring->dimension());
}

/// Scale c with folded == c * expected, or NaN when the supports or ratios differ.
inline double common_ratio(const Polynomial<double>& folded, const Polynomial<Rational>& expected, double rel = 1e-9) {
  if (folded.terms().size() != expected.terms().size() || expected.is_zero()) return std::nan("");
  double ratio = std::nan("");
  for (const auto& [m, c] : expected.terms()) {
    const auto it = folded.terms().find(m);
    if (it == folded.terms().end()) return std::nan("");
    const double r = it->second / c.get_d();
    if (std::isnan(ratio)) {
      ratio = r;
    } else if (std::abs(r - ratio) > rel * std::abs(ratio)) {
      return std::nan("");
    }
  }
  return ratio;
}

/// Gaussian term at `center`, with exp(-1/2 |center|^2) folded into the coefficients.
inline Polynomial<double> folded_term(const GaussianPolyExpr& e, const std::vector<Rational>& center) {
  Rational s = 0;
  for (const auto& c : center) s += c * c;
  return convert<double>(term_at(e, center)).scaled(std::exp(-0.5 * s.get_d()));
}

}  // namespace opgp::testing
