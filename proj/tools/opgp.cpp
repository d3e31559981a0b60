#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opgp/cli/quiver.hpp"
#include "opgp/cli/scenario.hpp"

namespace {

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(cell, &used));
    if (used != cell.size()) throw opgp::InputError("malformed point '" + text + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained Gaussian process toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario and write its artifacts");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Artifact directory (default: the scenario name)");

  auto* check = app.add_subcommand("check", "Run a scenario's stages and assertions without writing artifacts");
  check->add_option("scenario", scenario_path, "Scenario file")->required();

  std::string csv_path;
  std::string svg_path;
  double scale = 0.0;
  std::string project = "z";
  std::vector<std::string> marks;
  auto* quiver = app.add_subcommand("quiver", "Render a grid CSV as an SVG quiver plot");
  quiver->add_option("csv", csv_path, "Grid CSV")->required();
  quiver->add_option("--scale", scale, "Arrow scale (0: automatic)");
  quiver->add_option("--project", project, "Axis dropped for 3-d data")->check(CLI::IsMember({"x", "y", "z"}));
  quiver->add_option("--mark", marks, "Highlighted point, comma separated");
  quiver->add_option("-o,--output", svg_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run || *check) {
      const opgp::Scenario s = opgp::load_scenario(scenario_path);
      opgp::RunOptions options;
      options.log = &std::cout;
      if (*run) options.out_dir = out_dir.empty() ? std::filesystem::path(s.name) : std::filesystem::path(out_dir);
      const opgp::RunReport report = opgp::run_scenario(s, options);
      if (!report.checks.empty()) {
        std::size_t failed = 0;
        for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
        std::cout << report.checks.size() - failed << "/" << report.checks.size() << " checks passed\n";
      }
      return report.passed() ? 0 : 1;
    }
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw opgp::InputError("cannot read " + csv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    opgp::QuiverOptions options;
    options.scale = scale;
    options.project = project[0];
    for (const auto& m : marks) options.marks.push_back(parse_point(m));
    const std::string svg = opgp::quiver_svg(opgp::table_from_csv(buf.str()), options);
    if (svg_path.empty()) {
      std::cout << svg;
    } else {
      std::ofstream out(svg_path, std::ios::binary);
      if (!out) throw opgp::InputError("cannot write " + svg_path);
      out << svg;
    }
    return 0;
  } catch (const opgp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const opgp::StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
