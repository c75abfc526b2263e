#include "bratu/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace bratu {

double Trajectory::max_residual() const {
  double worst = 0.0;
  for (const auto& sample : samples) {
    for (double r : sample.residuals) worst = std::max(worst, r);
  }
  return worst;
}

double Trajectory::max_residual(std::string_view name) const {
  const auto it = std::find(residual_names.begin(), residual_names.end(), name);
  if (it == residual_names.end()) {
    throw PreconditionError("trajectory has no residual column '" + std::string(name) + "'");
  }
  const auto column = static_cast<std::size_t>(it - residual_names.begin());
  double worst = 0.0;
  for (const auto& sample : samples) worst = std::max(worst, sample.residuals.at(column));
  return worst;
}

std::vector<double> uniform_grid(double s0, double s1, std::size_t points) {
  if (points < 2) throw PreconditionError("uniform_grid: need at least 2 points");
  std::vector<double> grid(points);
  const double step = (s1 - s0) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = s0 + step * static_cast<double>(i);
  grid.back() = s1;
  return grid;
}

double uniform_spacing(std::span<const double> grid, std::size_t min_points) {
  if (grid.size() < min_points) {
    throw PreconditionError("grid too coarse: need at least " + std::to_string(min_points) +
                            " points, got " + std::to_string(grid.size()));
  }
  const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  if (!(std::abs(step) > 0.0)) throw PreconditionError("grid has zero spacing");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-9 * std::abs(step) + 1e-15) {
      throw PreconditionError("grid is not uniformly spaced");
    }
  }
  return step;
}

}  // namespace bratu
