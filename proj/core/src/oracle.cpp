#include "bratu/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace bratu::oracle {

namespace {

using Rate = std::function<Matrix(const Matrix& h)>;

Trajectory integrate(const Matrix& h0, const Matrix& p0, const Rate& p_rate, Span span,
                     double step, const char* what) {
  require_square(h0, what);
  if (p0.rows() != h0.rows() || p0.cols() != h0.cols()) {
    throw DimensionError(std::string(what) + ": P0 must match h0");
  }
  if (!(step > 0.0)) throw PreconditionError(std::string(what) + ": step must be positive");
  if (!chol_is_spd(0.5 * (h0 + h0.transpose())).spd) {
    throw PreconditionError(std::string(what) + ": h0 must be SPD");
  }

  const double length = span.end - span.begin;
  const auto steps = static_cast<long>(std::llround(std::abs(length) / step));
  const double dt = steps == 0 ? 0.0 : length / static_cast<double>(steps);

  auto rhs = [&](const OdeState& x) { return OdeState{x.p * x.h, p_rate(x.h)}; };
  auto axpy = [](const OdeState& x, double t, const OdeState& k) {
    return OdeState{x.h + t * k.h, x.p + t * k.p};
  };

  Trajectory out;
  out.samples.reserve(static_cast<std::size_t>(steps) + 1);
  OdeState x{h0, p0};
  out.samples.push_back({span.begin, x.h, {}});
  for (long i = 0; i < steps; ++i) {
    const double s = span.begin + dt * static_cast<double>(i);
    const OdeState k1 = rhs(x);
    const OdeState k2 = rhs(axpy(x, 0.5 * dt, k1));
    const OdeState k3 = rhs(axpy(x, 0.5 * dt, k2));
    const OdeState k4 = rhs(axpy(x, dt, k3));
    OdeState next{x.h + dt / 6.0 * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h),
                  x.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
    next.h = symmetric_part(next.h);
    if (!next.h.allFinite() || !chol_is_spd(next.h).spd) {
      throw IntegrationError(std::string(what) + ": h lost positive definiteness", s);
    }
    x = std::move(next);
    out.samples.push_back({span.begin + dt * static_cast<double>(i + 1), x.h, {}});
  }
  return out;
}

}  // namespace

Trajectory integrate_bratu_bdi(const Matrix& h0, const Matrix& p0, const Matrix& a, Span span,
                               double step) {
  if (a.rows() != h0.rows()) throw DimensionError("integrate_bratu_bdi: a must have n rows");
  const Matrix aat = a * a.transpose();
  return integrate(
      h0, p0, [&](const Matrix& h) { return Matrix(aat * h.llt().solve(Matrix::Identity(h.rows(), h.cols()))); },
      span, step, "integrate_bratu_bdi");
}

Trajectory integrate_bratu_ci(const Matrix& h0, const Matrix& p0, const Matrix& c, Span span,
                              double step) {
  if (c.rows() != h0.rows() || c.cols() != h0.cols()) {
    throw DimensionError("integrate_bratu_ci: c must match h0");
  }
  return integrate(
      h0, p0,
      [&](const Matrix& h) {
        const Matrix ch = c * h.llt().solve(Matrix::Identity(h.rows(), h.cols()));
        return Matrix(ch * ch);
      },
      span, step, "integrate_bratu_ci");
}

Matrix series_expm(const Matrix& m, int terms) {
  require_square(m, "series_expm");
  const Index n = m.rows();
  int halvings = 0;
  double norm = n == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm *= 0.5;
    ++halvings;
  }
  const Matrix x = m / std::ldexp(1.0, halvings);
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= terms; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < halvings; ++i) sum = sum * sum;
  return sum;
}

Matrix num_diff(const std::function<Matrix(double)>& f, double s, int order, double step,
                int levels) {
  if (order != 1 && order != 2) throw PreconditionError("num_diff: order must be 1 or 2");
  if (levels < 1 || !(step > 0.0)) throw PreconditionError("num_diff: bad step or levels");

  const Matrix center = order == 2 ? f(s) : Matrix();
  auto stencil = [&](double d) -> Matrix {
    const Matrix fm2 = f(s - 2.0 * d);
    const Matrix fm1 = f(s - d);
    const Matrix fp1 = f(s + d);
    const Matrix fp2 = f(s + 2.0 * d);
    if (order == 1) return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * d);
    return (-fm2 + 16.0 * fm1 - 30.0 * center + 16.0 * fp1 - fp2) / (12.0 * d * d);
  };

  std::vector<Matrix> table;
  table.reserve(static_cast<std::size_t>(levels));
  for (int i = 0; i < levels; ++i) table.push_back(stencil(std::ldexp(step, -i)));
  double weight = 16.0;  // leading error term is O(d^4)
  for (int k = 1; k < levels; ++k) {
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
      table[i] = (weight * table[i + 1] - table[i]) / (weight - 1.0);
    }
    table.pop_back();
    weight *= 4.0;
  }
  return table.front();
}

}  // namespace bratu::oracle
