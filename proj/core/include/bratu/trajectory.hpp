#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bratu/matcore.hpp"

namespace bratu {

struct TrajectorySample {
  double s = 0.0;
  Matrix h;
  std::vector<double> residuals;  // aligned with Trajectory::residual_names
};

/// Sampled values of h(s) together with named residual columns.
struct Trajectory {
  std::vector<std::string> residual_names;
  std::vector<TrajectorySample> samples;

  /// Max over all residual columns and samples; 0 for an empty trajectory.
  double max_residual() const;
  /// Max of one named column. Throws PreconditionError for unknown names.
  double max_residual(std::string_view name) const;
};

/// `points` equally spaced values from s0 to s1 inclusive (points >= 2).
std::vector<double> uniform_grid(double s0, double s1, std::size_t points);

/// Spacing of a uniform grid; throws PreconditionError if the grid has fewer
/// than `min_points` points or is not equally spaced to 1e-9 relative.
double uniform_spacing(std::span<const double> grid, std::size_t min_points);

}  // namespace bratu
