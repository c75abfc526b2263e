#pragma once

// Independent verification machinery. Nothing here calls expm or the
// block-Gauss code, so results can be compared against those pathways.

#include <functional>

#include "bratu/matcore.hpp"
#include "bratu/trajectory.hpp"

namespace bratu::oracle {

struct Span {
  double begin = 0.0;
  double end = 1.0;
};

/// State of the first-order reduction h' = P h.
struct OdeState {
  Matrix h;
  Matrix p;
};

/// Classical fixed-step RK4 for h' = P h, P' = (a a^T) h^-1 from h(begin) = h0,
/// P(begin) = p0. Every accepted step must keep h SPD; otherwise throws
/// IntegrationError carrying the last valid s. The returned trajectory has one
/// sample per step (including the start) and no residual columns.
Trajectory integrate_bratu_bdi(const Matrix& h0, const Matrix& p0, const Matrix& a, Span span,
                               double step);

/// Same integrator for P' = (c h^-1)^2, c symmetric.
Trajectory integrate_bratu_ci(const Matrix& h0, const Matrix& p0, const Matrix& c, Span span,
                              double step);

/// Taylor-series exponential: halve M until ||M||_1 <= 1/2, sum `terms` terms,
/// square back.
Matrix series_expm(const Matrix& m, int terms = 30);

/// Derivative of order 1 or 2 of a matrix-valued function. Five-point central
/// stencils at steps step, step/2, ... (levels values) are combined in a
/// Richardson table that removes the h^4, h^6, ... error terms.
Matrix num_diff(const std::function<Matrix(double)>& f, double s, int order, double step = 0.1,
                int levels = 4);

}  // namespace bratu::oracle
