#pragma once

// Lagrangian calculus along Omega(J)-valued curves: the trace decomposition of
// 1/2 tr((G'G^-1)^2) under G = N A N^T, trace orthogonality of block
// triangular matrices, the geodesic equation (G'G^-1)' = 0, the reduced
// Euler-Lagrange system
//
//     (h'h^-1)' = h n1' n1'^T - c h^-1 c h^-1
//     h n1' + c n1 = a
//     h m^T h = c
//
// and its conserved matrices. Here m is the (3,1) block of N^-1 N',
// m = n1 n1'^T + n2'^T, which is skew-symmetric.

#include <span>
#include <vector>

#include "bratu/bdi_geometry.hpp"

namespace bratu {

struct LagrangianBreakdown {
  double total = 0.0;      // 1/2 tr((G'G^-1)^2)
  double kinetic_h = 0.0;  // tr((h'h^-1)^2)
  double cross = 0.0;      // 2 tr(h n1' n1'^T)
  double twist = 0.0;      // tr(h m^T h m)
  Matrix m;

  double identity_gap() const { return total - (kinetic_h + cross + twist); }
};

/// Evaluates every term at G = exp(sB) with analytic derivatives. `total` is
/// computed from G'G^-1 (not from B) so the decomposition is a real check.
LagrangianBreakdown lagrangian_breakdown(const GeneratorBDI& gen, double s);

/// m = n1 n1'^T + n2'^T from a gauss jet.
Matrix twist_generator(const GaussJetBDI& jet);

/// tr(X1 X2) for X1 block lower triangular and X2 strictly block lower
/// triangular with block sizes (n, r, n). Every summand is a product with a
/// structural zero, so the result is exactly 0 for finite input. Throws
/// ValidationError if a block that must vanish holds a nonzero entry.
double trace_orthogonality(const Matrix& x1, const Matrix& x2, Index n, Index r);

/// Max over a uniform grid (>= 5 points) of ||d/ds (G'G^-1)||, where G' = BG
/// and the outer derivative uses 5-point finite-difference stencils.
double geodesic_residual(const GeneratorBDI& gen, std::span<const double> grid);

struct ElResiduals {
  std::vector<double> s;
  std::vector<double> h_equation;
  std::vector<double> n1_equation;
  std::vector<double> n2_equation;

  double max() const;
};

/// Residuals of the three reduced Euler-Lagrange equations along exp(sB).
ElResiduals el_system_residuals(const GeneratorBDI& gen, std::span<const double> grid);

struct ConservedQuantities {
  Matrix c_tilde;  // h m^T h at the first grid point
  Matrix a_tilde;  // h n1' + c~ n1 at the first grid point
  double drift = 0.0;      // max deviation from the first-point values
  double deviation = 0.0;  // max deviation from the generator blocks (a, c)
};

/// c~ = h m^T h and a~ = h n1' + c~ n1 along exp(sB); both must be constant
/// and equal to (c, a).
ConservedQuantities conserved_quantities(const GeneratorBDI& gen, std::span<const double> grid);

}  // namespace bratu
