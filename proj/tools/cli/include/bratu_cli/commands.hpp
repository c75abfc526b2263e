#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <bratu/trajectory.hpp>

#include "bratu_cli/instance.hpp"

namespace bratu::cli {

enum ExitCode : int { exit_pass = 0, exit_numerical = 1, exit_usage = 2 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

enum class Normalization { tilde, delta };

struct SolveOptions {
  double s_max = 1.0;
  int steps = 100;
  Normalization normalization = Normalization::tilde;
};

/// Samples h on the grid [0, s_max] with steps + 1 points and the residual
/// columns for the instance type and normalization.
Trajectory solve_trajectory(const Instance& inst, const SolveOptions& opts);

std::string format_csv(const Instance& inst, const SolveOptions& opts, const Trajectory& traj);
std::string format_json(const Instance& inst, const SolveOptions& opts, const Trajectory& traj);

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;  // set when the check threw
};

/// Suites: all, gauss, lagrangian, domain, series, oracle. Throws InputError
/// for an unknown suite or for "series" on a ci instance.
std::vector<Check> verify_suite(const Instance& inst, const std::string& suite, std::uint64_t seed = 0);

std::string format_report(const Instance& inst, const std::string& suite, const std::vector<Check>& checks);

/// Coefficient dump for a bdi instance; evaluation at s is included when
/// `at` is set.
std::string series_report(const Instance& inst, int order, const std::vector<double>& at);

}  // namespace bratu::cli
