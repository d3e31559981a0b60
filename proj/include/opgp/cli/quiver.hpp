#pragma once

#include <string>
#include <vector>

#include "opgp/gpr/grid.hpp"

namespace opgp {

struct QuiverOptions {
  /// Arrow = scale * f in data units; 0 picks a scale from the grid spacing.
  double scale = 0.0;
  /// For three-dimensional data: the axis dropped by the orthographic projection.
  char project = 'z';
  /// Highlighted points, in data coordinates.
  std::vector<std::vector<double>> marks;
};

/// Quiver plot of a grid table (header x1..xd, f1..fd[, sd..]), d in {2, 3}.
std::string quiver_svg(const Table& t, const QuiverOptions& options = {});

}  // namespace opgp
