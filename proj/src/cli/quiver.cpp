#include "opgp/cli/quiver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 640;
constexpr double kMargin = 50;

std::size_t column_of(const Table& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) throw InputError("quiver: missing column '" + name + "'");
  return static_cast<std::size_t>(it - t.header.begin());
}

}  // namespace

std::string quiver_svg(const Table& t, const QuiverOptions& options) {
  std::size_t d = 0;
  while (std::find(t.header.begin(), t.header.end(), "x" + std::to_string(d + 1)) != t.header.end()) ++d;
  if (d != 2 && d != 3) throw InputError(fmt::format("quiver: unsupported dimension {}", d));
  std::size_t a = 0, b = 1;
  if (d == 3) {
    switch (options.project) {
      case 'x': a = 1; b = 2; break;
      case 'y': a = 0; b = 2; break;
      case 'z': a = 0; b = 1; break;
      default: throw InputError(fmt::format("quiver: unknown projection axis '{}'", options.project));
    }
  }
  const std::size_t xa = column_of(t, "x" + std::to_string(a + 1)), xb = column_of(t, "x" + std::to_string(b + 1));
  const std::size_t fa = column_of(t, "f" + std::to_string(a + 1)), fb = column_of(t, "f" + std::to_string(b + 1));

  double umin = 0, umax = 1, vmin = 0, vmax = 1, fmax = 0, radius = 0;
  bool first = true;
  auto include = [&](double u, double v) {
    if (first) {
      umin = umax = u;
      vmin = vmax = v;
      first = false;
    }
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  };
  for (const auto& row : t.rows) {
    include(row[xa], row[xb]);
    fmax = std::max(fmax, std::hypot(row[fa], row[fb]));
    if (d == 3) {
      double r2 = 0;
      for (std::size_t i = 0; i < 3; ++i) r2 += row[column_of(t, "x" + std::to_string(i + 1))] * row[column_of(t, "x" + std::to_string(i + 1))];
      radius = std::max(radius, std::sqrt(r2));
    }
  }
  for (const auto& m : options.marks) {
    if (m.size() != d) throw InputError("quiver: marked point has the wrong dimension");
    include(m[a], m[b]);
  }
  if (d == 3 && radius > 0) {
    include(-radius, -radius);
    include(radius, radius);
  }
  if (umax - umin <= 0) { umin -= 0.5; umax += 0.5; }
  if (vmax - vmin <= 0) { vmin -= 0.5; vmax += 0.5; }
  const double pad = 0.05 * std::max(umax - umin, vmax - vmin);
  umin -= pad; umax += pad; vmin -= pad; vmax += pad;

  double scale = options.scale;
  if (scale <= 0) {
    const double spacing = std::max(umax - umin, vmax - vmin) / std::max(1.0, std::sqrt(static_cast<double>(t.rows.size())));
    scale = fmax > 0 ? 0.9 * spacing / fmax : 1.0;
  }
  const double s = std::min((kWidth - 2 * kMargin) / (umax - umin), (kHeight - 2 * kMargin) / (vmax - vmin));
  auto px = [&](double u) { return kMargin + (u - umin) * s; };
  auto py = [&](double v) { return kHeight - kMargin - (v - vmin) * s; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", kWidth, kHeight);
  out += "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#1f4e9c\"/></marker></defs>\n";
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<rect class=\"axes\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                     px(umin), py(vmax), px(umax) - px(umin), py(vmin) - py(vmax));
  const std::string axis_names = d == 2 ? "xy" : std::string{char('x' + a), char('x' + b)};
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\">{:.3g}</text>\n", px(umin), py(vmin) + 16, umin);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"end\">{:.3g}</text>\n", px(umax), py(vmin) + 16, umax);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"end\">{:.3g}</text>\n", px(umin) - 4, py(vmin), vmin);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"end\">{:.3g}</text>\n", px(umin) - 4, py(vmax) + 12, vmax);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"14\">{}</text>\n", (px(umin) + px(umax)) / 2, kHeight - 12, axis_names[0]);
  out += fmt::format("<text x=\"12\" y=\"{:.2f}\" font-size=\"14\">{}</text>\n", (py(vmin) + py(vmax)) / 2, axis_names[1]);
  if (d == 3 && radius > 0) {
    out += fmt::format("<circle class=\"ring\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n",
                       px(0), py(0), radius * s);
  }
  for (const auto& row : t.rows) {
    const double u = row[xa], v = row[xb];
    const double du = scale * row[fa], dv = scale * row[fb];
    if (std::hypot(du, dv) * s < 0.5) {
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1\" fill=\"#1f4e9c\"/>\n", px(u), py(v));
      continue;
    }
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#1f4e9c\" marker-end=\"url(#head)\"/>\n",
                       px(u), py(v), px(u + du), py(v + dv));
  }
  for (const auto& m : options.marks) {
    out += fmt::format("<circle class=\"mark\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"#d62728\"/>\n", px(m[a]), py(m[b]));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace opgp
