#include "opgp/gpr/gpr.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

OperatorMatrix functional_of(const Observation& o, const RingPtr& ring, std::size_t outputs) {
  return o.functional ? *o.functional : OperatorMatrix::identity(ring, outputs);
}

void validate(const Observation& o, const OperatorMatrix& f, std::size_t d, std::size_t outputs) {
  if (o.point.size() != d) throw DimensionMismatch("observation point length does not match dimension");
  if (f.cols() != outputs) throw DimensionMismatch("observation functional columns do not match kernel size");
  if (o.value.size() != f.rows()) throw DimensionMismatch("observation value length does not match observed components");
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericError(std::string(what) + ": non-finite value");
  return v;
}

}  // namespace

std::vector<GaussianPolyExpr> polynomial_column(const std::vector<OrePoly>& polys) {
  std::vector<GaussianPolyExpr> out;
  for (const auto& p : polys) {
    const auto& ring = p.ring();
    const std::size_t d = ring->dimension();
    Polynomial<Rational> q(d);
    for (const auto& t : p.terms()) {
      Monomial m(d);
      for (std::size_t a = 0; a < d; ++a) m[a] = t.monomial[a];
      if (ring->is_weyl()) {
        for (std::size_t a = 0; a < d; ++a) {
          if (t.monomial[d + a] != 0) throw std::invalid_argument("mean function contains a derivative: " + p.to_string());
        }
      }
      q.add_term(m, t.coeff);
    }
    out.push_back(GaussianPolyExpr::single(GaussianExponent::flat(d), std::move(q)));
  }
  return out;
}

std::vector<GaussianPolyExpr> zero_column(std::size_t length) {
  return std::vector<GaussianPolyExpr>(length);
}

Eigen::MatrixXd gram(const KernelMatrix& k, const RingPtr& ring, const std::vector<Observation>& obs) {
  if (obs.empty()) throw std::invalid_argument("gram: no observations");
  std::vector<OperatorMatrix> fs;
  std::vector<std::size_t> offsets;
  std::size_t n = 0;
  for (const auto& o : obs) {
    fs.push_back(functional_of(o, ring, k.rows()));
    validate(o, fs.back(), k.dimension(), k.rows());
    offsets.push_back(n);
    n += fs.back().rows();
  }
  std::map<std::pair<std::string, std::string>, KernelMatrix> blocks;
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = 0; j < obs.size(); ++j) {
      const auto key = std::make_pair(fs[i].to_string(), fs[j].to_string());
      auto it = blocks.find(key);
      if (it == blocks.end()) it = blocks.emplace(key, two_sided(fs[i], fs[j], k)).first;
      g.block(offsets[i], offsets[j], fs[i].rows(), fs[j].rows()) = evaluate_pair(it->second, obs[i].point, obs[j].point);
    }
  }
  if (!g.allFinite()) throw NumericError("gram: non-finite entry");
  return g;
}

GPModel fit(const KernelMatrix& k, const RingPtr& ring, std::vector<GaussianPolyExpr> mean,
            std::vector<Observation> observations, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("fit: jitter must be a nonnegative number");
  if (ring->dimension() != k.dimension()) throw DimensionMismatch("fit: ring dimension does not match kernel");
  const std::size_t outputs = k.rows();
  if (mean.empty()) mean = zero_column(outputs);
  if (mean.size() != outputs) throw DimensionMismatch("fit: mean length does not match kernel size");

  GPModel m(k, ring);
  m.mean_ = std::move(mean);
  m.observations_ = std::move(observations);
  m.epsilon_ = epsilon;
  m.gram_ = gram(k, ring, m.observations_);
  const auto n = m.gram_.rows();
  if ((m.gram_ - m.gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw NumericError("fit: Gram matrix is not symmetric");

  Eigen::VectorXd residual(n);
  Eigen::Index row = 0;
  for (const auto& o : m.observations_) {
    const auto f = functional_of(o, ring, outputs);
    const auto fmu = apply_operator_point(f, m.mean_);
    for (std::size_t r = 0; r < f.rows(); ++r) residual(row++) = o.value[r] - checked(evaluate(fmu[r], o.point), "mean");
  }

  const Eigen::MatrixXd jittered = m.gram_ + epsilon * epsilon * Eigen::MatrixXd::Identity(n, n);
  m.llt_.compute(jittered);
  if (m.llt_.info() != Eigen::Success) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(jittered);
    throw NumericError(fmt::format("fit: Cholesky factorization failed (smallest pivot {:.6g}); increase the jitter",
                                   ldlt.vectorD().minCoeff()));
  }
  m.alpha_ = m.llt_.solve(residual);
  if (!m.alpha_.allFinite()) throw NumericError("fit: non-finite coefficients");

  m.posterior_ = m.mean_;
  row = 0;
  for (const auto& o : m.observations_) {
    const auto f = functional_of(o, ring, outputs);
    m.cross_.push_back(two_sided(OperatorMatrix::identity(ring, outputs), f, k));
    const KernelMatrix at = substitute_group2(m.cross_.back(), o.point);
    for (std::size_t r = 0; r < f.rows(); ++r, ++row) {
      const Rational w = rational_from_double(m.alpha_(row));
      for (std::size_t c = 0; c < outputs; ++c) m.posterior_[c] += at(c, r).scaled(w);
    }
  }
  return m;
}

std::vector<GaussianPolyExpr> GPModel::homogeneous_part() const {
  std::vector<GaussianPolyExpr> out = posterior_;
  for (std::size_t c = 0; c < out.size(); ++c) out[c] -= mean_[c];
  return out;
}

Eigen::VectorXd GPModel::predict_mean(std::span<const double> x) const {
  if (x.size() != dimension()) throw DimensionMismatch("predict_mean: point length does not match dimension");
  Eigen::VectorXd out(outputs());
  for (std::size_t c = 0; c < outputs(); ++c) out(c) = evaluate(posterior_[c], x);
  return out;
}

Eigen::MatrixXd GPModel::cross(std::span<const double> x) const {
  Eigen::MatrixXd out(outputs(), gram_.rows());
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    const Eigen::MatrixXd block = evaluate_pair(cross_[i], x, observations_[i].point);
    out.middleCols(col, block.cols()) = block;
    col += block.cols();
  }
  return out;
}

Eigen::VectorXd GPModel::predict_mean_numeric(std::span<const double> x) const {
  if (x.size() != dimension()) throw DimensionMismatch("predict_mean: point length does not match dimension");
  Eigen::VectorXd mu(outputs());
  for (std::size_t c = 0; c < outputs(); ++c) mu(c) = evaluate(mean_[c], x);
  return mu + cross(x) * alpha_;
}

Eigen::MatrixXd GPModel::predict_cov(std::span<const double> x, std::span<const double> x2) const {
  if (x.size() != dimension() || x2.size() != dimension()) {
    throw DimensionMismatch("predict_cov: point length does not match dimension");
  }
  const Eigen::MatrixXd kx2 = cross(x2);
  Eigen::MatrixXd out = evaluate_pair(kernel_, x, x2) - cross(x) * llt_.solve(kx2.transpose());
  if (!out.allFinite()) throw NumericError("predict_cov: non-finite value");
  return out;
}

namespace {

double constant_factor(const GaussianExponent& ex) {
  if (ex.kind() != GaussianExponent::Kind::Centered) return 1.0;
  Rational s = 0;
  for (std::size_t a = 0; a < ex.dimension(); ++a) s += ex.weights()[a] * ex.center()[a] * ex.center()[a];
  return std::exp(-0.5 * s.get_d());
}

Polynomial<double> expanded_exponent(const GaussianExponent& ex) {
  const std::size_t d = ex.dimension();
  const std::size_t n = ex.num_vars();
  Polynomial<double> p(n);
  for (std::size_t a = 0; a < d; ++a) {
    const double w = ex.weights()[a].get_d();
    Monomial sq(n);
    if (ex.is_paired()) {
      Monomial other(n), mixed(n);
      sq[a] = 2;
      other[d + a] = 2;
      mixed[a] = 1;
      mixed[d + a] = 1;
      p.add_term(sq, -0.5 * w);
      p.add_term(other, -0.5 * w);
      p.add_term(mixed, w);
    } else {
      Monomial lin(n);
      sq[a] = 2;
      lin[a] = 1;
      p.add_term(sq, -0.5 * w);
      p.add_term(lin, w * ex.center()[a].get_d());
    }
  }
  return p;
}

}  // namespace

std::string expanded_string(const GaussianPolyExpr& e, const std::vector<std::string>& names) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& t : e.terms()) {
    if (!out.empty()) out += " + ";
    const auto& ex = t.exponent;
    const auto& vars = ex.is_paired() ? paired_names(names) : names;
    out += "(" + convert<double>(t.poly).scaled(constant_factor(ex)).to_string(vars) + ")";
    if (!ex.is_flat()) out += "*exp(" + expanded_exponent(ex).to_string(vars) + ")";
  }
  return out;
}

std::vector<double> expanded_coefficients(const GaussianPolyExpr& e) {
  std::vector<double> out;
  for (const auto& t : e.terms()) {
    if (t.exponent.is_flat()) continue;
    const double f = constant_factor(t.exponent);
    for (const auto& [m, c] : t.poly.terms()) out.push_back(c.get_d() * f);
  }
  return out;
}

double normalized_coefficient(const std::vector<GaussianPolyExpr>& column) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : column) {
    for (double c : expanded_coefficients(e)) best = std::min(best, std::abs(c));
  }
  if (!std::isfinite(best)) throw std::invalid_argument("normalized_coefficient: no Gaussian terms");
  return best;
}

std::vector<GaussianPolyExpr> restrict_to(const std::vector<GaussianPolyExpr>& column, std::size_t var,
                                          const Rational& value) {
  std::vector<GaussianPolyExpr> out;
  for (const auto& e : column) {
    GaussianPolyExpr r;
    for (const auto& t : e.terms()) {
      if (t.exponent.is_paired()) throw std::invalid_argument("restrict_to: entry is not a function of one point");
      if (var >= t.exponent.dimension()) throw DimensionMismatch("restrict_to: unknown variable index");
      r.add(t.exponent, t.poly.substitute(var, value));
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const Observation& o) {
  nlohmann::json j{{"point", o.point}, {"value", o.value}};
  if (o.functional) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < o.functional->rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < o.functional->cols(); ++c) row.push_back((*o.functional)(i, c).to_string());
      rows.push_back(row);
    }
    j["functional"] = rows;
  }
  return j;
}

nlohmann::json to_json(const GPModel& m) {
  const auto& names = m.kernel().base_names();
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : m.observations()) obs.push_back(to_json(o));
  nlohmann::json mean = nlohmann::json::array();
  nlohmann::json posterior = nlohmann::json::array();
  nlohmann::json expanded = nlohmann::json::array();
  for (const auto& e : m.mean()) mean.push_back(e.to_string(names));
  for (const auto& e : m.posterior_mean()) {
    posterior.push_back(e.to_string(names));
    expanded.push_back(expanded_string(e, names));
  }
  std::vector<double> alpha(m.alpha().data(), m.alpha().data() + m.alpha().size());
  std::vector<std::vector<double>> gram;
  for (Eigen::Index i = 0; i < m.gram().rows(); ++i) {
    gram.emplace_back();
    for (Eigen::Index j = 0; j < m.gram().cols(); ++j) gram.back().push_back(m.gram()(i, j));
  }
  return {{"kernel", to_json(m.kernel())},
          {"epsilon", m.epsilon()},
          {"observations", obs},
          {"mean", mean},
          {"gram", gram},
          {"alpha", alpha},
          {"posterior_mean", posterior},
          {"posterior_mean_expanded", expanded}};
}

}  // namespace opgp
