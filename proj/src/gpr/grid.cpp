#include "opgp/gpr/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

double axis_value(const AxisRange& a, std::size_t i) {
  if (a.count == 1) return a.min;
  return a.min + (a.max - a.min) * static_cast<double>(i) / static_cast<double>(a.count - 1);
}

}  // namespace

std::vector<std::vector<double>> grid_points(const GridSpec& spec, std::size_t d) {
  std::vector<std::vector<double>> points;
  if (const auto* box = std::get_if<BoxGrid>(&spec)) {
    if (box->axes.size() != d) throw DimensionMismatch("grid: axis count does not match dimension");
    std::size_t total = 1;
    for (const auto& a : box->axes) total *= a.count;
    if (total == 0) throw std::invalid_argument("grid: empty grid");
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::vector<double> p(d);
      std::size_t rest = flat;
      for (std::size_t a = d; a-- > 0;) {
        p[a] = axis_value(box->axes[a], rest % box->axes[a].count);
        rest /= box->axes[a].count;
      }
      points.push_back(std::move(p));
    }
  } else {
    const auto& s = std::get<SphereGrid>(spec);
    if (d != 3) throw DimensionMismatch("grid: sphere grids need dimension 3");
    if (s.lat == 0 || s.lon == 0) throw std::invalid_argument("grid: empty grid");
    for (std::size_t i = 0; i < s.lat; ++i) {
      const double theta = std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(s.lat);
      for (std::size_t j = 0; j < s.lon; ++j) {
        const double phi = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(s.lon);
        points.push_back({s.radius * std::sin(theta) * std::cos(phi), s.radius * std::sin(theta) * std::sin(phi),
                          s.radius * std::cos(theta)});
      }
    }
  }
  return points;
}

Table export_grid(const GPModel& model, const GridSpec& spec, bool with_sd) {
  const std::size_t d = model.dimension();
  const std::size_t l = model.outputs();
  Table t;
  for (std::size_t a = 0; a < d; ++a) t.header.push_back("x" + std::to_string(a + 1));
  for (std::size_t c = 0; c < l; ++c) t.header.push_back("f" + std::to_string(c + 1));
  if (with_sd) {
    for (std::size_t c = 0; c < l; ++c) t.header.push_back("sd" + std::to_string(c + 1));
  }
  for (const auto& p : grid_points(spec, d)) {
    std::vector<double> row = p;
    const Eigen::VectorXd mean = model.predict_mean(p);
    row.insert(row.end(), mean.data(), mean.data() + mean.size());
    if (with_sd) {
      const Eigen::MatrixXd cov = model.predict_cov(p, p);
      for (std::size_t c = 0; c < l; ++c) row.push_back(std::sqrt(std::max(0.0, cov(c, c))));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += fmt::format("{:.12g}", row[i] == 0.0 ? 0.0 : row[i]);
    }
    out += "\n";
  }
  return out;
}

Table table_from_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw InputError(fmt::format("CSV line {}: expected {} fields, found {}", line_no, t.header.size(), cells.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != c.size()) throw InputError(fmt::format("CSV line {}: malformed number '{}'", line_no, c));
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw InputError("CSV: missing header");
  return t;
}

}  // namespace opgp
