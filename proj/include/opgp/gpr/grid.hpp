#pragma once

#include <string>
#include <variant>
#include <vector>

#include "opgp/gpr/gpr.hpp"

namespace opgp {

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 1;
};

/// Rectangular grid, last axis varying fastest.
struct BoxGrid {
  std::vector<AxisRange> axes;
};

/// theta_i = pi (i + 1/2) / lat, phi_j = 2 pi j / lon, on the sphere of the given radius.
struct SphereGrid {
  std::size_t lat = 10;
  std::size_t lon = 20;
  double radius = 1.0;
};

using GridSpec = std::variant<BoxGrid, SphereGrid>;

std::vector<std::vector<double>> grid_points(const GridSpec& spec, std::size_t d);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Rows: coordinates, mean components, optional standard deviations.
Table export_grid(const GPModel& model, const GridSpec& spec, bool with_sd = false);

std::string to_csv(const Table& t);
Table table_from_csv(const std::string& text);

}  // namespace opgp
