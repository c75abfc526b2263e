#include "bratu/bdi_geometry.hpp"

#include <algorithm>
#include <string>

#include "bratu/parallel.hpp"

namespace bratu {

Matrix omega_involution(Index n, Index r) {
  Matrix j = Matrix::Zero(2 * n + r, 2 * n + r);
  j.block(0, n + r, n, n).setIdentity();
  j.block(n, n, r, r).setIdentity();
  j.block(n + r, 0, n, n).setIdentity();
  return j;
}

GeneratorBDI GeneratorBDI::make(const Matrix& b, const Matrix& a, const Matrix& c) {
  const Index n = b.rows();
  if (b.cols() != n || c.rows() != n || c.cols() != n || a.rows() != n) {
    throw DimensionError("GeneratorBDI: expected b, c n x n and a n x r with matching n");
  }
  require_finite(b, "GeneratorBDI.b");
  require_finite(a, "GeneratorBDI.a");
  require_finite(c, "GeneratorBDI.c");
  if (max_abs(b - b.transpose()) > 1e-13 * std::max(1.0, max_abs(b))) {
    throw ValidationError("GeneratorBDI: b is not symmetric");
  }
  if (max_abs(c + c.transpose()) > 1e-13 * std::max(1.0, max_abs(c))) {
    throw ValidationError("GeneratorBDI: c is not skew-symmetric");
  }
  return GeneratorBDI(0.5 * (b + b.transpose()), a, 0.5 * (c - c.transpose()));
}

GeneratorBDI GeneratorBDI::zero(Index n, Index r) {
  return GeneratorBDI(Matrix::Zero(n, n), Matrix::Zero(n, r), Matrix::Zero(n, n));
}

Matrix GeneratorBDI::embed() const {
  const Index n = this->n();
  const Index r = this->r();
  Matrix big = Matrix::Zero(2 * n + r, 2 * n + r);
  big.block(0, 0, n, n) = b_;
  big.block(0, n, n, r) = a_;
  big.block(0, n + r, n, n) = c_;
  big.block(n, 0, r, n) = a_.transpose();
  big.block(n, n + r, r, n) = -a_.transpose();
  big.block(n + r, 0, n, n) = c_.transpose();
  big.block(n + r, n, n, r) = -a_;
  big.block(n + r, n + r, n, n) = -b_;
  return big;
}

GeneratorBDI GeneratorBDI::scaled(double t) const { return GeneratorBDI(t * b_, t * a_, t * c_); }

OmegaPointBDI OmegaPointBDI::make(Index n, Index r, const Matrix& g) {
  if (g.rows() != 2 * n + r || g.cols() != 2 * n + r) {
    throw DimensionError("OmegaPointBDI: expected size 2n + r = " + std::to_string(2 * n + r));
  }
  SpdMatrix spd = SpdMatrix::from(g);
  const Matrix inv = spd.inverse();
  const Matrix j = omega_involution(n, r);
  if (max_abs(j * spd.matrix() * j - inv) > 1e-10 * max_abs(inv)) {
    throw ValidationError("OmegaPointBDI: J G J != G^-1");
  }
  return OmegaPointBDI(n, r, std::move(spd));
}

GaussFactorsBDI GaussFactorsBDI::make(const Matrix& h, const Matrix& n1, const Matrix& n2) {
  const Index n = h.rows();
  if (n1.rows() != n || n2.rows() != n || n2.cols() != n) {
    throw DimensionError("GaussFactorsBDI: expected h, n2 n x n and n1 n x r");
  }
  const Matrix outer = n1 * n1.transpose();
  if (max_abs(n2 + n2.transpose() + outer) > 1e-10 * std::max(1.0, max_abs(outer))) {
    throw ValidationError("GaussFactorsBDI: n2 + n2^T != -n1 n1^T");
  }
  return GaussFactorsBDI(SpdMatrix::from(h), n1, n2);
}

Matrix GaussFactorsBDI::unipotent() const {
  const Index n = this->n();
  const Index r = this->r();
  Matrix big = Matrix::Identity(2 * n + r, 2 * n + r);
  big.block(n, 0, r, n) = n1_.transpose();
  big.block(n + r, 0, n, n) = n2_.transpose();
  big.block(n + r, n, n, r) = -n1_;
  return big;
}

Matrix GaussFactorsBDI::diagonal() const {
  const Index n = this->n();
  const Index r = this->r();
  Matrix big = Matrix::Zero(2 * n + r, 2 * n + r);
  big.block(0, 0, n, n) = h_.matrix();
  big.block(n, n, r, r).setIdentity();
  big.block(n + r, n + r, n, n) = h_.inverse();
  return big;
}

OmegaPointBDI exp_trajectory(const GeneratorBDI& gen, double s) {
  const Matrix g = expm(s * gen.embed());
  return OmegaPointBDI::make(gen.n(), gen.r(), 0.5 * (g + g.transpose()));
}

GaussFactorsBDI block_gauss(const OmegaPointBDI& point) {
  const Index n = point.n();
  const Index r = point.r();
  const Matrix& g = point.matrix();
  const Matrix h = g.block(0, 0, n, n);
  if (!chol_is_spd(h).spd) {
    throw ConsistencyError("block_gauss: leading block of G is not positive definite");
  }
  const auto llt = h.llt();
  const Matrix n1 = llt.solve(g.block(0, n, n, r));
  const Matrix n2 = llt.solve(g.block(0, n + r, n, n));
  auto factors = GaussFactorsBDI::make(h, n1, n2);
  const Matrix rebuilt = factors.unipotent() * factors.diagonal() * factors.unipotent().transpose();
  if (max_abs(rebuilt - g) > 1e-11 * std::max(1.0, max_abs(g))) {
    throw ConsistencyError("block_gauss: N A N^T does not reproduce G");
  }
  return factors;
}

OmegaPointBDI gauss_compose(const GaussFactorsBDI& f) {
  const Matrix nmat = f.unipotent();
  const Matrix g = nmat * f.diagonal() * nmat.transpose();
  return OmegaPointBDI::make(f.n(), f.r(), 0.5 * (g + g.transpose()));
}

GaussJetBDI gauss_jet(const GeneratorBDI& gen, double s) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix big = gen.embed();
  GaussJetBDI jet;
  jet.g = exp_trajectory(gen, s).matrix();
  jet.dg = big * jet.g;
  const Matrix ddg = big * jet.dg;

  jet.h = jet.g.block(0, 0, n, n);
  const auto llt = jet.h.llt();
  jet.h_inv = llt.solve(Matrix::Identity(n, n));
  jet.n1 = llt.solve(jet.g.block(0, n, n, r));
  jet.n2 = llt.solve(jet.g.block(0, n + r, n, n));

  jet.dh = jet.dg.block(0, 0, n, n);
  jet.ddh = ddg.block(0, 0, n, n);
  jet.dn1 = llt.solve(jet.dg.block(0, n, n, r) - jet.dh * jet.n1);
  jet.dn2 = llt.solve(jet.dg.block(0, n + r, n, n) - jet.dh * jet.n2);
  return jet;
}

Matrix log_derivative_rate(const Matrix& h_inv, const Matrix& dh, const Matrix& ddh) {
  const Matrix p = dh * h_inv;
  return ddh * h_inv - p * p;
}

Trajectory bratu_solution(const GeneratorBDI& gen, std::span<const double> grid) {
  if (!gen.twist_free()) {
    throw PreconditionError(
        "bratu_solution: requires c = 0; use el_system_residuals for the general system");
  }
  Trajectory out;
  out.residual_names = {"bratu"};
  out.samples.resize(grid.size());
  const Matrix aat = gen.a() * gen.a().transpose();
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto jet = gauss_jet(gen, grid[i]);
    const Matrix lhs = log_derivative_rate(jet.h_inv, jet.dh, jet.ddh);
    out.samples[i] = {grid[i], jet.h, {max_abs(lhs - aat * jet.h_inv)}};
  });
  return out;
}

}  // namespace bratu
