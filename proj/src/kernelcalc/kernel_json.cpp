#include <stdexcept>

#include "opgp/kernelcalc/kernel.hpp"

namespace opgp {

namespace {

using nlohmann::json;

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(parse_rational(s.get<std::string>()));
  return out;
}

json expr_to_json(const GaussianPolyExpr& e) {
  json out = json::array();
  for (const auto& t : e.terms()) {
    json term;
    term["kind"] = t.exponent.is_paired() ? "paired" : t.exponent.is_flat() ? "flat" : "centered";
    term["weights"] = rationals(t.exponent.weights());
    if (t.exponent.kind() == GaussianExponent::Kind::Centered) term["center"] = rationals(t.exponent.center());
    json monomials = json::array();
    for (const auto& [m, c] : t.poly.terms()) {
      std::vector<std::uint32_t> exps;
      for (std::size_t i = 0; i < t.poly.num_vars(); ++i) exps.push_back(m[i]);
      monomials.push_back({{"exponents", exps}, {"coeff", to_string(c)}});
    }
    term["poly"] = monomials;
    out.push_back(std::move(term));
  }
  return out;
}

GaussianPolyExpr expr_from_json(const json& j, std::size_t d) {
  GaussianPolyExpr e;
  for (const auto& term : j) {
    const std::string kind = term.at("kind").get<std::string>();
    auto weights = rationals_from(term.at("weights"));
    if (weights.size() != d) throw std::invalid_argument("kernel JSON: weight count does not match dimension");
    GaussianExponent ex = kind == "paired" ? GaussianExponent::paired(d, weights)
                        : kind == "flat" ? GaussianExponent::flat(d)
                        : kind == "centered" ? GaussianExponent::centered(rationals_from(term.at("center")), weights)
                                             : throw std::invalid_argument("kernel JSON: unknown exponent kind " + kind);
    Polynomial<Rational> p(ex.num_vars());
    for (const auto& mono : term.at("poly")) {
      const auto exps = mono.at("exponents").get<std::vector<std::uint32_t>>();
      if (exps.size() != ex.num_vars()) throw std::invalid_argument("kernel JSON: monomial length mismatch");
      Monomial m(exps.size());
      for (std::size_t i = 0; i < exps.size(); ++i) m[i] = exps[i];
      p.add_term(m, parse_rational(mono.at("coeff").get<std::string>()));
    }
    e.add(std::move(ex), std::move(p));
  }
  return e;
}

}  // namespace

nlohmann::json to_json(const KernelMatrix& k) {
  json entries = json::array();
  for (std::size_t i = 0; i < k.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k.cols(); ++j) row.push_back(expr_to_json(k(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"variables", k.base_names()}, {"rows", k.rows()}, {"cols", k.cols()}, {"entries", entries},
          {"display", to_string(k)}};
}

KernelMatrix kernel_from_json(const nlohmann::json& j) {
  KernelMatrix k(j.at("variables").get<std::vector<std::string>>(), j.at("rows").get<std::size_t>(),
                 j.at("cols").get<std::size_t>());
  const auto& entries = j.at("entries");
  if (entries.size() != k.rows()) throw std::invalid_argument("kernel JSON: row count mismatch");
  for (std::size_t i = 0; i < k.rows(); ++i) {
    if (entries[i].size() != k.cols()) throw std::invalid_argument("kernel JSON: column count mismatch");
    for (std::size_t jj = 0; jj < k.cols(); ++jj) k(i, jj) = expr_from_json(entries[i][jj], k.dimension());
  }
  return k;
}

}  // namespace opgp
