#include "bratu/variational.hpp"

#include <algorithm>
#include <string>

#include "bratu/parallel.hpp"

namespace bratu {

Matrix twist_generator(const GaussJetBDI& jet) {
  return jet.n1 * jet.dn1.transpose() + jet.dn2.transpose();
}

LagrangianBreakdown lagrangian_breakdown(const GeneratorBDI& gen, double s) {
  const auto jet = gauss_jet(gen, s);
  const Matrix q = jet.dg * inverse(jet.g);
  const Matrix p = jet.dh * jet.h_inv;

  LagrangianBreakdown out;
  out.m = twist_generator(jet);
  out.total = 0.5 * (q * q).trace();
  out.kinetic_h = (p * p).trace();
  out.cross = 2.0 * (jet.h * jet.dn1 * jet.dn1.transpose()).trace();
  out.twist = (jet.h * out.m.transpose() * jet.h * out.m).trace();
  return out;
}

namespace {

enum class Pattern { lower, strictly_lower };

void require_block_pattern(const Matrix& x, Index n, Index r, Pattern pattern, const char* what) {
  const Index size = 2 * n + r;
  if (x.rows() != size || x.cols() != size) {
    throw DimensionError(std::string(what) + ": expected size 2n + r");
  }
  const Index offsets[3] = {0, n, n + r};
  const Index sizes[3] = {n, r, n};
  for (int bi = 0; bi < 3; ++bi) {
    for (int bj = 0; bj < 3; ++bj) {
      const bool must_vanish = pattern == Pattern::lower ? bj > bi : bj >= bi;
      if (!must_vanish) continue;
      if (x.block(offsets[bi], offsets[bj], sizes[bi], sizes[bj]).cwiseAbs().sum() != 0.0) {
        throw ValidationError(std::string(what) + ": wrong block pattern");
      }
    }
  }
}

// Five-point first-derivative stencils on a uniform grid: central in the
// interior, one-sided at the two points nearest each end.
Matrix grid_derivative(const std::vector<Matrix>& f, std::size_t i, double step) {
  const std::size_t last = f.size() - 1;
  if (i >= 2 && i + 2 <= last) {
    return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * step);
  }
  if (i == 0) {
    return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * step);
  }
  if (i == 1) {
    return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * step);
  }
  if (i == last) {
    return (25.0 * f[last] - 48.0 * f[last - 1] + 36.0 * f[last - 2] - 16.0 * f[last - 3] +
            3.0 * f[last - 4]) /
           (12.0 * step);
  }
  return (3.0 * f[last] + 10.0 * f[last - 1] - 18.0 * f[last - 2] + 6.0 * f[last - 3] -
          f[last - 4]) /
         (12.0 * step);
}

}  // namespace

double trace_orthogonality(const Matrix& x1, const Matrix& x2, Index n, Index r) {
  require_block_pattern(x1, n, r, Pattern::lower, "trace_orthogonality(X1)");
  require_block_pattern(x2, n, r, Pattern::strictly_lower, "trace_orthogonality(X2)");
  return (x1 * x2).trace();
}

double geodesic_residual(const GeneratorBDI& gen, std::span<const double> grid) {
  const double step = uniform_spacing(grid, 5);
  const Matrix big = gen.embed();
  std::vector<Matrix> log_derivative(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Matrix g = exp_trajectory(gen, grid[i]).matrix();
    log_derivative[i] = (big * g) * inverse(g);
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, max_abs(grid_derivative(log_derivative, i, step)));
  }
  return worst;
}

double ElResiduals::max() const {
  double worst = 0.0;
  for (const auto* v : {&h_equation, &n1_equation, &n2_equation}) {
    for (double x : *v) worst = std::max(worst, x);
  }
  return worst;
}

ElResiduals el_system_residuals(const GeneratorBDI& gen, std::span<const double> grid) {
  ElResiduals out;
  out.s.assign(grid.begin(), grid.end());
  out.h_equation.resize(grid.size());
  out.n1_equation.resize(grid.size());
  out.n2_equation.resize(grid.size());
  const Matrix& a = gen.a();
  const Matrix& c = gen.c();
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto jet = gauss_jet(gen, grid[i]);
    const Matrix m = twist_generator(jet);
    const Matrix lhs = log_derivative_rate(jet.h_inv, jet.dh, jet.ddh);
    const Matrix rhs = jet.h * jet.dn1 * jet.dn1.transpose() - c * jet.h_inv * c * jet.h_inv;
    out.h_equation[i] = max_abs(lhs - rhs);
    out.n1_equation[i] = max_abs(jet.h * jet.dn1 + c * jet.n1 - a);
    out.n2_equation[i] = max_abs(jet.h * m.transpose() * jet.h - c);
  });
  return out;
}

ConservedQuantities conserved_quantities(const GeneratorBDI& gen, std::span<const double> grid) {
  if (grid.empty()) throw PreconditionError("conserved_quantities: empty grid");
  std::vector<Matrix> c_values(grid.size());
  std::vector<Matrix> a_values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto jet = gauss_jet(gen, grid[i]);
    c_values[i] = jet.h * twist_generator(jet).transpose() * jet.h;
    a_values[i] = jet.h * jet.dn1 + c_values[i] * jet.n1;
  });

  ConservedQuantities out{c_values.front(), a_values.front(), 0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.drift = std::max({out.drift, max_abs(c_values[i] - out.c_tilde),
                          max_abs(a_values[i] - out.a_tilde)});
    out.deviation = std::max({out.deviation, max_abs(c_values[i] - gen.c()),
                              max_abs(a_values[i] - gen.a())});
  }
  return out;
}

}  // namespace bratu
