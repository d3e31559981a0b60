#include "opgp/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "opgp/cli/quiver.hpp"
#include "opgp/cli/toml_lite.hpp"
#include "opgp/gpr/grid.hpp"
#include "opgp/orealg/parser.hpp"
#include "opgp/parametrize/parametrize.hpp"

namespace opgp {

namespace {

using Json = nlohmann::ordered_json;

enum class Kind { Matrix, Vector, Kernel, Model };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Matrix: return "matrix";
    case Kind::Vector: return "vector";
    case Kind::Kernel: return "kernel";
    case Kind::Model: return "model";
  }
  return "?";
}

std::string stage_label(const Json& stage, std::size_t index) {
  return fmt::format("#{} {}", index + 1, stage.value("op", std::string("?")));
}

const Json& field(const Json& t, const std::string& key, const std::string& context) {
  if (!t.is_object() || !t.contains(key)) throw InputError(context + ": missing field '" + key + "'");
  return t.at(key);
}

std::string string_field(const Json& t, const std::string& key, const std::string& context) {
  const Json& v = field(t, key, context);
  if (!v.is_string()) throw InputError(context + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string string_or(const Json& t, const std::string& key, const std::string& fallback, const std::string& context) {
  return t.contains(key) ? string_field(t, key, context) : fallback;
}

double to_number(const Json& v, const std::string& context) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>()).get_d();
    } catch (const std::exception&) {
    }
  }
  throw InputError(context + ": expected a number");
}

Rational to_rational(const Json& v, const std::string& context) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) return rational_from_double(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError(context + ": expected a number or rational string");
}

double number_or(const Json& t, const std::string& key, double fallback, const std::string& context) {
  return t.contains(key) ? to_number(t.at(key), context + " field '" + key + "'") : fallback;
}

std::vector<double> numbers(const Json& v, const std::string& context) {
  if (!v.is_array()) throw InputError(context + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(to_number(x, context));
  return out;
}

std::vector<std::string> strings(const Json& v, const std::string& context) {
  if (!v.is_array()) throw InputError(context + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw InputError(context + ": expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> string_rows(const Json& v, const std::string& context) {
  if (!v.is_array()) throw InputError(context + ": expected an array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : v) rows.push_back(strings(r, context));
  return rows;
}

OperatorMatrix parse_matrix(const RingPtr& ring, const Json& rows, const std::string& context) {
  const auto text = string_rows(rows, context);
  if (text.empty()) throw InputError(context + ": empty matrix");
  const std::size_t cols = text.front().size();
  for (const auto& r : text) {
    if (r.size() != cols) throw InputError(context + ": rows have different lengths");
  }
  OperatorMatrix m(ring, text.size(), cols);
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        m(i, j) = parse_operator(text[i][j], ring);
      } catch (const ParseError& e) {
        throw InputError(fmt::format("{} entry ({},{}): {}", context, i + 1, j + 1, e.what()));
      }
    }
  }
  return m;
}

std::vector<OrePoly> parse_polys(const RingPtr& ring, const Json& v, const std::string& context) {
  std::vector<OrePoly> out;
  for (const auto& s : strings(v, context)) {
    try {
      out.push_back(parse_operator(s, ring));
    } catch (const ParseError& e) {
      throw InputError(context + ": " + e.what());
    }
  }
  return out;
}

// Name checking ---------------------------------------------------------

class Names {
 public:
  void declare(const std::string& name, Kind k) { kinds_[name] = k; }
  void require(const std::string& name, Kind k, const std::string& context) const {
    const auto it = kinds_.find(name);
    if (it == kinds_.end()) throw InputError(fmt::format("{}: unknown {} '{}'", context, kind_name(k), name));
    if (it->second != k) {
      throw InputError(fmt::format("{}: '{}' is a {}, expected a {}", context, name, kind_name(it->second), kind_name(k)));
    }
  }

 private:
  std::map<std::string, Kind> kinds_;
};

void check_stage_names(const Json& st, std::size_t index, Names& names, const std::string& source) {
  const std::string ctx = source + ": stage " + stage_label(st, index);
  const std::string op = string_field(st, "op", ctx);
  auto input = [&](const std::string& key, Kind k) { names.require(string_field(st, key, ctx), k, ctx); };
  auto output = [&](const std::string& key, const std::string& fallback, Kind k) {
    names.declare(string_or(st, key, fallback, ctx), k);
  };
  if (op == "parametrize") {
    input("input", Kind::Matrix);
    output("output", "B", Kind::Matrix);
    if (st.contains("aprime")) output("aprime", "", Kind::Matrix);
  } else if (op == "boundary") {
    field(st, "generators", ctx);
    output("output", "B", Kind::Matrix);
  } else if (op == "intersect" || op == "multiply") {
    const auto in = strings(field(st, "inputs", ctx), ctx);
    if (in.size() != 2) throw InputError(ctx + ": 'inputs' needs two matrix names");
    for (const auto& n : in) names.require(n, Kind::Matrix, ctx);
    output("output", "P", Kind::Matrix);
    for (const char* extra : {"c", "extra", "raw"}) {
      if (st.contains(extra)) output(extra, "", Kind::Matrix);
    }
  } else if (op == "reorder") {
    input("input", Kind::Matrix);
    field(st, "columns", ctx);
    output("output", "", Kind::Matrix);
  } else if (op == "kernel") {
    input("input", Kind::Matrix);
    output("output", "K", Kind::Kernel);
  } else if (op == "fit") {
    input("kernel", Kind::Kernel);
    if (st.contains("mean")) input("mean", Kind::Vector);
    if (st.contains("functionals")) {
      for (const auto& f : strings(st.at("functionals"), ctx)) {
        if (!f.empty()) names.require(f, Kind::Matrix, ctx);
      }
    }
    field(st, "points", ctx);
    field(st, "values", ctx);
    output("output", "gp", Kind::Model);
  } else if (op == "grid") {
    input("model", Kind::Model);
  } else if (op != "check") {
    throw InputError(ctx + ": unknown stage op '" + op + "'");
  }
}

void check_check_names(const Json& c, std::size_t index, const Names& names, const std::string& source) {
  const std::string ctx = fmt::format("{}: check #{}", source, index + 1);
  const std::string kind = string_field(c, "kind", ctx);
  for (const char* key : {"a", "b", "matrix", "operator"}) {
    if (c.contains(key)) names.require(string_field(c, key, ctx), Kind::Matrix, ctx);
  }
  if (c.contains("model")) names.require(string_field(c, "model", ctx), Kind::Model, ctx);
  if (c.contains("kernel")) names.require(string_field(c, "kernel", ctx), Kind::Kernel, ctx);
  static const std::set<std::string> known{
      "product_zero", "column_module_equal", "row_module_equal", "columns_up_to_sign", "controllable", "columns",
      "kernel_symmetric", "kernel_annihilated", "coefficient", "term", "flat_part", "constraint", "boundary",
      "interpolates", "gram", "covariance", "mean_value"};
  if (!known.contains(kind)) throw InputError(ctx + ": unknown check kind '" + kind + "'");
}

// Running ---------------------------------------------------------------

struct State {
  const Scenario& scenario;
  const RunOptions& options;
  RunReport report;
  std::map<std::string, OperatorMatrix> matrices;
  std::map<std::string, std::vector<GaussianPolyExpr>> vectors;
  std::map<std::string, KernelMatrix> kernels;
  std::map<std::string, GPModel> models;

  void log(const std::string& line) const {
    if (options.log) *options.log << line << '\n';
  }

  void write(const std::string& file, const std::string& content) {
    if (!options.out_dir) return;
    const auto path = *options.out_dir / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    report.artifacts.push_back(path);
  }

  void store_matrix(const std::string& name, OperatorMatrix m) {
    write(name + ".txt", m.to_string() + "\n");
    matrices.insert_or_assign(name, std::move(m));
  }

  const OperatorMatrix& matrix(const std::string& name) const { return matrices.at(name); }
};

OperatorMatrix with_columns(const OperatorMatrix& m, const std::vector<std::size_t>& cols, const std::vector<int>& signs) {
  OperatorMatrix out(m.ring(), m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= m.cols()) throw Error(fmt::format("column {} out of range", cols[j] + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = signs[j] < 0 ? -m(i, cols[j]) : m(i, cols[j]);
  }
  return out;
}

std::vector<Observation> observations_of(const State& s, const Json& st, const std::string& ctx) {
  const Json& pts = field(st, "points", ctx);
  const Json& vals = field(st, "values", ctx);
  if (!pts.is_array() || !vals.is_array() || pts.size() != vals.size()) {
    throw InputError(ctx + ": 'points' and 'values' must be arrays of equal length");
  }
  std::vector<std::string> fs(pts.size());
  if (st.contains("functionals")) {
    fs = strings(st.at("functionals"), ctx);
    if (fs.size() != pts.size()) throw InputError(ctx + ": 'functionals' must match 'points'");
  }
  std::vector<Observation> obs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Observation o{numbers(pts[i], ctx), numbers(vals[i], ctx), std::nullopt};
    if (!fs[i].empty()) o.functional = s.matrix(fs[i]);
    obs.push_back(std::move(o));
  }
  return obs;
}

void run_stage(State& s, const Json& st, std::size_t index);

// Checks

Polynomial<Rational> flat_part(const GaussianPolyExpr& e, std::size_t d) {
  for (const auto& t : e.terms()) {
    if (t.exponent.is_flat()) return t.poly;
  }
  return Polynomial<Rational>(d);
}

bool all_zero(const std::vector<GaussianPolyExpr>& col) {
  for (const auto& e : col) {
    if (!e.is_zero()) return false;
  }
  return true;
}

CheckResult run_check(State& s, const Json& c, std::size_t index) {
  const std::string ctx = fmt::format("check #{}", index + 1);
  const std::string kind = string_field(c, "kind", ctx);
  CheckResult r{string_or(c, "name", fmt::format("{} {}", kind, index + 1), ctx), false, ""};
  const auto& ring = s.scenario.ring;
  const double tol = number_or(c, "tol", 1e-8, ctx);
  auto mat = [&](const char* key) -> const OperatorMatrix& { return s.matrix(string_field(c, key, ctx)); };
  auto model = [&]() -> const GPModel& { return s.models.at(string_field(c, "model", ctx)); };
  auto component = [&](const GPModel& m) {
    const auto k = static_cast<std::size_t>(number_or(c, "component", 1, ctx));
    if (k < 1 || k > m.outputs()) throw InputError(ctx + ": component out of range");
    return k - 1;
  };

  if (kind == "product_zero") {
    r.passed = mat_mul(mat("a"), mat("b")).is_zero();
  } else if (kind == "column_module_equal") {
    r.passed = column_module_equal(mat("a"), mat("b"));
  } else if (kind == "row_module_equal") {
    r.passed = row_module_equal(mat("a"), mat("b"));
  } else if (kind == "columns_up_to_sign") {
    const auto &a = mat("a"), &b = mat("b");
    r.passed = a.rows() == b.rows() && a.cols() == b.cols();
    for (std::size_t j = 0; r.passed && j < a.cols(); ++j) {
      bool same = true, negated = true;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        same = same && a(i, j) == b(i, j);
        negated = negated && a(i, j) == -b(i, j);
      }
      r.passed = same || negated;
    }
  } else if (kind == "controllable") {
    const auto report = verify_parametrization(mat("a"), mat("b"));
    r.passed = report.passed();
    r.detail = fmt::format("AB=0: {}, residues {}x{} and {}x{}", report.product_zero, report.a_residue.rows(),
                           report.a_residue.cols(), report.aprime_residue.rows(), report.aprime_residue.cols());
  } else if (kind == "columns") {
    const auto n = mat("matrix").cols();
    r.passed = static_cast<double>(n) == to_number(field(c, "expected", ctx), ctx);
    r.detail = fmt::format("{} columns", n);
  } else if (kind == "kernel_symmetric") {
    r.passed = is_swap_symmetric(s.kernels.at(string_field(c, "kernel", ctx)));
  } else if (kind == "kernel_annihilated") {
    const KernelMatrix ak = apply_left(mat("operator"), s.kernels.at(string_field(c, "kernel", ctx)));
    r.passed = true;
    for (std::size_t i = 0; i < ak.rows(); ++i) {
      for (std::size_t j = 0; j < ak.cols(); ++j) r.passed = r.passed && ak(i, j).is_zero();
    }
  } else if (kind == "coefficient") {
    const double v = normalized_coefficient(model().posterior_mean());
    const double expected = to_number(field(c, "expected", ctx), ctx);
    r.passed = std::abs(v - expected) <= number_or(c, "tol", 5e-4, ctx);
    r.detail = fmt::format("{:.6f} (expected {})", v, expected);
  } else if (kind == "term") {
    const GPModel& m = model();
    const auto& e = m.posterior_mean()[component(m)];
    std::vector<Rational> center;
    for (const auto& x : field(c, "center", ctx)) center.push_back(to_rational(x, ctx));
    const auto expected = polynomial_column(parse_polys(ring, Json::array({field(c, "expected", ctx)}), ctx));
    const auto& want = expected[0].is_zero() ? Polynomial<Rational>(m.dimension()) : expected[0].terms().front().poly;
    Polynomial<Rational> got(m.dimension());
    for (const auto& t : e.terms()) {
      if (t.exponent.kind() == GaussianExponent::Kind::Centered && t.exponent.center() == center) got = t.poly;
    }
    double factor = 1.0;
    if (c.value("fold", true)) {
      Rational sq = 0;
      for (const auto& x : center) sq += x * x;
      factor = std::exp(-0.5 * sq.get_d());
    }
    double ratio = std::nan("");
    bool same_shape = got.terms().size() == want.terms().size() && !want.is_zero();
    for (const auto& [mono, coef] : want.terms()) {
      const auto it = got.terms().find(mono);
      if (it == got.terms().end()) {
        same_shape = false;
        break;
      }
      const double q = it->second.get_d() * factor / coef.get_d();
      if (std::isnan(ratio)) ratio = q;
      same_shape = same_shape && std::abs(q - ratio) <= 1e-9 * std::abs(ratio);
    }
    const double expected_ratio = number_or(c, "ratio", 1.0, ctx);
    r.passed = same_shape && std::abs(ratio - expected_ratio) <= number_or(c, "tol", 5e-4, ctx);
    r.detail = same_shape ? fmt::format("ratio {:.6f}", ratio) : "different monomial structure";
  } else if (kind == "flat_part") {
    const GPModel& m = model();
    const auto expected = polynomial_column(parse_polys(ring, Json::array({field(c, "expected", ctx)}), ctx));
    const auto want = flat_part(expected[0], m.dimension());
    r.passed = flat_part(m.posterior_mean()[component(m)], m.dimension()) == want;
  } else if (kind == "constraint") {
    const GPModel& m = model();
    if (c.value("inhomogeneous", false)) {
      const auto lhs = apply_operator_point(mat("operator"), m.posterior_mean());
      const auto rhs = apply_operator_point(mat("operator"), m.mean());
      r.passed = lhs == rhs;
    } else {
      r.passed = all_zero(apply_operator_point(mat("operator"), m.homogeneous_part()));
    }
  } else if (kind == "boundary") {
    const GPModel& m = model();
    const auto var_name = string_field(c, "variable", ctx);
    const auto var = ring->index_of(var_name);
    if (!var || *var >= ring->dimension()) throw InputError(ctx + ": unknown variable '" + var_name + "'");
    const Rational value = to_rational(field(c, "value", ctx), ctx);
    auto column = m.posterior_mean();
    if (c.contains("operator")) column = apply_operator_point(mat("operator"), column);
    const auto expected_text = strings(field(c, "expected", ctx), ctx);
    if (expected_text.size() != column.size()) throw InputError(ctx + ": 'expected' length does not match the mean");
    const auto got = restrict_to(column, *var, value);
    r.passed = true;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (expected_text[i] == "*") continue;
      const auto want = restrict_to(polynomial_column(parse_polys(ring, Json::array({expected_text[i]}), ctx)), *var, value);
      if (!(got[i] == want[0])) {
        r.passed = false;
        r.detail += fmt::format("component {} differs; ", i + 1);
      }
    }
  } else if (kind == "interpolates") {
    const GPModel& m = model();
    double worst = 0.0;
    for (const auto& o : m.observations()) {
      const auto f = o.functional ? *o.functional : OperatorMatrix::identity(ring, m.outputs());
      const auto fm = apply_operator_point(f, m.posterior_mean());
      for (std::size_t i = 0; i < fm.size(); ++i) worst = std::max(worst, std::abs(evaluate(fm[i], o.point) - o.value[i]));
    }
    r.passed = worst <= number_or(c, "tol", 1e-6, ctx);
    r.detail = fmt::format("max residual {:.3g}", worst);
  } else if (kind == "gram") {
    const auto& g = model().gram();
    const Json& want = field(c, "expected", ctx);
    r.passed = want.is_array() && want.size() == static_cast<std::size_t>(g.rows());
    double worst = 0.0;
    for (Eigen::Index i = 0; r.passed && i < g.rows(); ++i) {
      const auto row = numbers(want[static_cast<std::size_t>(i)], ctx);
      r.passed = row.size() == static_cast<std::size_t>(g.cols());
      for (Eigen::Index j = 0; r.passed && j < g.cols(); ++j) worst = std::max(worst, std::abs(g(i, j) - row[static_cast<std::size_t>(j)]));
    }
    r.passed = r.passed && worst <= number_or(c, "tol", 1e-12, ctx);
    r.detail = fmt::format("max deviation {:.3g}", worst);
  } else if (kind == "covariance") {
    const auto x = numbers(field(c, "x", ctx), ctx);
    const auto y = numbers(field(c, "y", ctx), ctx);
    const auto entry = c.contains("entry") ? numbers(c.at("entry"), ctx) : std::vector<double>{1, 1};
    const Eigen::MatrixXd cov = model().predict_cov(x, y);
    const double v = cov(static_cast<Eigen::Index>(entry.at(0)) - 1, static_cast<Eigen::Index>(entry.at(1)) - 1);
    const double expected = to_number(field(c, "expected", ctx), ctx);
    r.passed = std::abs(v - expected) <= tol;
    r.detail = fmt::format("{:.12g} (expected {:.12g})", v, expected);
  } else if (kind == "mean_value") {
    const auto x = numbers(field(c, "point", ctx), ctx);
    const auto expected = numbers(field(c, "expected", ctx), ctx);
    const Eigen::VectorXd v = model().predict_mean(x);
    r.passed = expected.size() == static_cast<std::size_t>(v.size());
    double worst = 0.0;
    for (std::size_t i = 0; r.passed && i < expected.size(); ++i) worst = std::max(worst, std::abs(v(static_cast<Eigen::Index>(i)) - expected[i]));
    r.passed = r.passed && worst <= number_or(c, "tol", 1e-4, ctx);
    r.detail = fmt::format("max deviation {:.3g}", worst);
  }
  return r;
}

void run_stage(State& s, const Json& st, std::size_t index) {
  const std::string label = stage_label(st, index);
  const std::string op = st.at("op").get<std::string>();
  const auto& ring = s.scenario.ring;
  const std::string ctx = "stage " + label;
  if (op == "parametrize") {
    const auto result = parametrize(s.matrix(st.at("input").get<std::string>()));
    const std::string out = string_or(st, "output", "B", ctx);
    s.log(fmt::format("[{}] {} = {} (controllable: {})", label, out, result.B.to_string(), result.controllable));
    s.write(out + "_parametrization.json", to_json(result).dump(2) + "\n");
    if (st.contains("aprime")) s.store_matrix(st.at("aprime").get<std::string>(), result.Aprime);
    s.store_matrix(out, result.B);
  } else if (op == "boundary") {
    const Json& g = st.at("generators");
    std::vector<std::vector<OrePoly>> rows;
    for (const auto& row : g) rows.push_back(parse_polys(ring, row, ctx));
    const auto b = boundary_param(ring, rows);
    const std::string out = string_or(st, "output", "B", ctx);
    s.log(fmt::format("[{}] {} = {}", label, out, b.to_string()));
    s.store_matrix(out, b);
  } else if (op == "intersect") {
    const auto in = strings(st.at("inputs"), ctx);
    const auto result = intersect(s.matrix(in[0]), s.matrix(in[1]));
    const std::string out = string_or(st, "output", "P", ctx);
    s.log(fmt::format("[{}] {} = {}", label, out, result.normalized_P.to_string()));
    s.log(fmt::format("[{}] extra relations: {}", label, result.extra_relations.to_string()));
    s.write(out + "_intersection.json", to_json(result).dump(2) + "\n");
    if (st.contains("c")) s.store_matrix(st.at("c").get<std::string>(), result.C);
    if (st.contains("extra")) s.store_matrix(st.at("extra").get<std::string>(), result.extra_relations);
    if (st.contains("raw")) s.store_matrix(st.at("raw").get<std::string>(), result.P);
    s.store_matrix(out, result.normalized_P);
  } else if (op == "multiply") {
    const auto in = strings(st.at("inputs"), ctx);
    const std::string out = string_or(st, "output", "P", ctx);
    auto m = mat_mul(s.matrix(in[0]), s.matrix(in[1]));
    s.log(fmt::format("[{}] {} = {}", label, out, m.to_string()));
    s.store_matrix(out, std::move(m));
  } else if (op == "reorder") {
    const auto& m = s.matrix(st.at("input").get<std::string>());
    std::vector<std::size_t> cols;
    for (double v : numbers(st.at("columns"), ctx)) {
      if (v < 1 || v != std::floor(v)) throw InputError(ctx + ": columns are 1-based integers");
      cols.push_back(static_cast<std::size_t>(v) - 1);
    }
    std::vector<int> signs(cols.size(), 1);
    if (st.contains("signs")) {
      const auto sg = numbers(st.at("signs"), ctx);
      if (sg.size() != cols.size()) throw InputError(ctx + ": 'signs' must match 'columns'");
      for (std::size_t j = 0; j < sg.size(); ++j) signs[j] = sg[j] < 0 ? -1 : 1;
    }
    const std::string out = string_or(st, "output", "", ctx);
    auto r = with_columns(m, cols, signs);
    s.log(fmt::format("[{}] {} = {}", label, out, r.to_string()));
    s.store_matrix(out, std::move(r));
  } else if (op == "kernel") {
    const auto& b = s.matrix(st.at("input").get<std::string>());
    std::vector<Rational> weights;
    if (st.contains("lengthscales")) {
      for (double l : numbers(st.at("lengthscales"), ctx)) {
        if (!(l > 0)) throw InputError(ctx + ": lengthscales must be positive");
        const Rational q = rational_from_double(l);
        weights.push_back(1 / (q * q));
      }
    }
    KernelMatrix k = push_kernel(b, base_kernel(ring->base_names(), b.cols(), weights));
    const std::string out = string_or(st, "output", "K", ctx);
    s.log(fmt::format("[{}] {}: {}x{} kernel", label, out, k.rows(), k.cols()));
    s.write(out + ".json", to_json(k).dump(2) + "\n");
    s.kernels.insert_or_assign(out, std::move(k));
  } else if (op == "fit") {
    const auto& k = s.kernels.at(st.at("kernel").get<std::string>());
    std::vector<GaussianPolyExpr> mean;
    if (st.contains("mean")) mean = s.vectors.at(st.at("mean").get<std::string>());
    const double eps = number_or(st, "epsilon", 1e-5, ctx);
    GPModel m = fit(k, ring, mean, observations_of(s, st, ctx), eps);
    const std::string out = string_or(st, "output", "gp", ctx);
    std::string text;
    for (const auto& e : m.posterior_mean()) text += expanded_string(e, ring->base_names()) + "\n";
    s.log(fmt::format("[{}] {}: normalized coefficient {:.4f}", label, out,
                      all_zero(m.homogeneous_part()) ? 0.0 : normalized_coefficient(m.homogeneous_part())));
    for (const auto& e : m.posterior_mean()) s.log("    " + expanded_string(e, ring->base_names()));
    s.write(out + ".json", to_json(m).dump(2) + "\n");
    s.write(out + "_mean.txt", text);
    s.models.insert_or_assign(out, std::move(m));
  } else if (op == "grid") {
    const std::string name = st.at("model").get<std::string>();
    const GPModel& m = s.models.at(name);
    GridSpec spec;
    if (st.contains("sphere")) {
      const auto v = numbers(st.at("sphere"), ctx);
      if (v.size() < 2) throw InputError(ctx + ": 'sphere' needs [lat, lon]");
      spec = SphereGrid{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), v.size() > 2 ? v[2] : 1.0};
    } else {
      BoxGrid box;
      for (const auto& a : field(st, "axes", ctx)) {
        const auto v = numbers(a, ctx);
        if (v.size() != 3) throw InputError(ctx + ": each axis is [min, max, count]");
        box.axes.push_back({v[0], v[1], static_cast<std::size_t>(v[2])});
      }
      spec = box;
    }
    const Table t = export_grid(m, spec, st.value("sd", false));
    const std::string file = string_or(st, "file", name + "_grid.csv", ctx);
    s.log(fmt::format("[{}] {}: {} rows", label, file, t.rows.size()));
    s.write(file, to_csv(t));
    if (st.value("svg", false)) {
      QuiverOptions q;
      q.scale = number_or(st, "scale", 0.0, ctx);
      const std::string axis = string_or(st, "project", "z", ctx);
      if (axis.size() != 1) throw InputError(ctx + ": 'project' is one of x, y, z");
      q.project = axis[0];
      for (const auto& o : m.observations()) q.marks.push_back(o.point);
      const std::string svg_name = file.ends_with(".csv") ? file.substr(0, file.size() - 4) + ".svg" : file + ".svg";
      s.write(svg_name, quiver_svg(t, q));
    }
  } else if (op == "check") {
    for (std::size_t i = 0; i < s.scenario.checks.size(); ++i) {
      CheckResult r = run_check(s, s.scenario.checks[i], i);
      s.log(fmt::format("[{}] {} {}{}", label, r.passed ? "PASS" : "FAIL", r.name, r.detail.empty() ? "" : ": " + r.detail));
      s.report.checks.push_back(std::move(r));
    }
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  const Json root = parse_toml(text, source);
  Scenario s;
  s.source = source;
  s.name = root.value("name", std::string("scenario"));
  const Json& ring = field(root, "ring", source);
  const auto vars = strings(field(ring, "variables", source + ": [ring]"), source + ": [ring] variables");
  const std::string kind = string_or(ring, "kind", "weyl", source + ": [ring]");
  try {
    if (kind == "weyl") {
      s.ring = RingSpec::weyl(vars);
    } else if (kind == "commutative") {
      s.ring = RingSpec::commutative(vars);
    } else {
      throw InputError(source + ": [ring] kind must be 'weyl' or 'commutative'");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": [ring] " + e.what());
  }
  s.matrices = root.value("matrices", Json::object());
  s.vectors = root.value("vectors", Json::object());
  if (root.contains("stage")) {
    for (const auto& st : root.at("stage")) s.stages.push_back(st);
  }
  if (root.contains("check")) {
    for (const auto& c : root.at("check")) s.checks.push_back(c);
  }

  Names names;
  for (const auto& [name, rows] : s.matrices.items()) {
    parse_matrix(s.ring, rows, source + ": matrix " + name);
    names.declare(name, Kind::Matrix);
  }
  for (const auto& [name, entries] : s.vectors.items()) {
    parse_polys(s.ring, entries, source + ": vector " + name);
    names.declare(name, Kind::Vector);
  }
  bool checks_validated = false;
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    check_stage_names(s.stages[i], i, names, source);
    if (s.stages[i].at("op") == "check" && !checks_validated) {
      for (std::size_t j = 0; j < s.checks.size(); ++j) check_check_names(s.checks[j], j, names, source);
      checks_validated = true;
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.filename().string());
}

bool RunReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

RunReport run_scenario(const Scenario& s, const RunOptions& options) {
  State state{s, options, {}, {}, {}, {}, {}};
  if (options.out_dir && !s.stages.empty()) std::filesystem::create_directories(*options.out_dir);
  for (const auto& [name, rows] : s.matrices.items()) state.matrices.insert_or_assign(name, parse_matrix(s.ring, rows, name));
  for (const auto& [name, entries] : s.vectors.items()) {
    state.vectors.insert_or_assign(name, polynomial_column(parse_polys(s.ring, entries, name)));
  }
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    try {
      run_stage(state, s.stages[i], i);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(stage_label(s.stages[i], i), e.what());
    }
  }
  if (!state.report.checks.empty()) state.write("checks.txt", format_report(state.report));
  return state.report;
}

std::string format_report(const RunReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += fmt::format("{} {}{}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : ": " + c.detail);
  }
  return out;
}

}  // namespace opgp
