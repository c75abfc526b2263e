#include "bratu/ci.hpp"

#include <algorithm>
#include <string>

#include "bratu/oracle.hpp"
#include "bratu/parallel.hpp"

namespace bratu {

namespace {

constexpr double kMaxNormalizerCondition = 1e12;
const Complex kI{0.0, 1.0};

}  // namespace

Matrix symplectic_form(Index n) {
  Matrix k = Matrix::Zero(2 * n, 2 * n);
  k.topRightCorner(n, n).setIdentity();
  k.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return k;
}

CMatrix ci_hermitian_form(Index n) { return kI * symplectic_form(n).cast<Complex>(); }

GeneratorCI GeneratorCI::make(const Matrix& b, const Matrix& c) {
  const Index n = b.rows();
  if (b.cols() != n || c.rows() != n || c.cols() != n) {
    throw DimensionError("GeneratorCI: b and c must both be n x n");
  }
  require_finite(b, "GeneratorCI.b");
  require_finite(c, "GeneratorCI.c");
  if (max_abs(b - b.transpose()) > 1e-13 * std::max(1.0, max_abs(b))) {
    throw ValidationError("GeneratorCI: b is not symmetric");
  }
  if (max_abs(c - c.transpose()) > 1e-13 * std::max(1.0, max_abs(c))) {
    throw ValidationError("GeneratorCI: c is not symmetric");
  }
  return GeneratorCI(0.5 * (b + b.transpose()), 0.5 * (c + c.transpose()));
}

GeneratorCI GeneratorCI::zero(Index n) { return GeneratorCI(Matrix::Zero(n, n), Matrix::Zero(n, n)); }

Matrix GeneratorCI::embed() const {
  const Index n = this->n();
  Matrix big(2 * n, 2 * n);
  big << b_, c_, c_, -b_;
  return big;
}

GeneratorCI GeneratorCI::scaled(double t) const { return GeneratorCI(t * b_, t * c_); }

OmegaPointCI OmegaPointCI::make(const Matrix& g) {
  if (g.rows() % 2 != 0) throw DimensionError("OmegaPointCI: size must be even");
  SpdMatrix spd = SpdMatrix::from(g);
  const Matrix k = symplectic_form(g.rows() / 2);
  const double scale = std::max(1.0, max_abs(spd.matrix()));
  if (max_abs(spd.matrix() * k * spd.matrix().transpose() - k) > 1e-10 * scale * scale) {
    throw ValidationError("OmegaPointCI: G K G^T != K");
  }
  return OmegaPointCI(std::move(spd));
}

GaussFactorsCI GaussFactorsCI::make(const Matrix& h, const Matrix& n1) {
  if (n1.rows() != h.rows() || n1.cols() != h.cols()) {
    throw DimensionError("GaussFactorsCI: n1 must match h");
  }
  if (max_abs(n1 - n1.transpose()) > 1e-10 * std::max(1.0, max_abs(n1))) {
    throw ValidationError("GaussFactorsCI: n1 is not symmetric");
  }
  return GaussFactorsCI(SpdMatrix::from(h), n1);
}

Matrix GaussFactorsCI::unipotent() const {
  const Index n = this->n();
  Matrix big = Matrix::Identity(2 * n, 2 * n);
  big.bottomLeftCorner(n, n) = n1_;
  return big;
}

Matrix GaussFactorsCI::diagonal() const {
  const Index n = this->n();
  Matrix big = Matrix::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = h_.matrix();
  big.bottomRightCorner(n, n) = h_.inverse();
  return big;
}

OmegaPointCI exp_trajectory_ci(const GeneratorCI& gen, double s) {
  const Matrix g = expm(s * gen.embed());
  return OmegaPointCI::make(0.5 * (g + g.transpose()));
}

GaussFactorsCI block_gauss_ci(const OmegaPointCI& point) {
  const Index n = point.n();
  const Matrix& g = point.matrix();
  const Matrix h = g.topLeftCorner(n, n);
  if (!chol_is_spd(h).spd) {
    throw ConsistencyError("block_gauss_ci: leading block of G is not positive definite");
  }
  // n1 = G21 h^-1 = (h^-1 G12)^T
  const Matrix n1 = h.llt().solve(g.topRightCorner(n, n)).transpose();
  auto factors = GaussFactorsCI::make(h, n1);
  const Matrix rebuilt = factors.unipotent() * factors.diagonal() * factors.unipotent().transpose();
  if (max_abs(rebuilt - g) > 1e-11 * std::max(1.0, max_abs(g))) {
    throw ConsistencyError("block_gauss_ci: N A N^T does not reproduce G");
  }
  return factors;
}

OmegaPointCI gauss_compose_ci(const GaussFactorsCI& f) {
  const Matrix nmat = f.unipotent();
  const Matrix g = nmat * f.diagonal() * nmat.transpose();
  return OmegaPointCI::make(0.5 * (g + g.transpose()));
}

GaussJetCI gauss_jet_ci(const GeneratorCI& gen, double s) {
  const Index n = gen.n();
  const Matrix big = gen.embed();
  GaussJetCI jet;
  jet.g = exp_trajectory_ci(gen, s).matrix();
  jet.dg = big * jet.g;
  const Matrix ddg = big * jet.dg;
  jet.h = jet.g.topLeftCorner(n, n);
  jet.h_inv = jet.h.llt().solve(Matrix::Identity(n, n));
  jet.n1 = jet.g.bottomLeftCorner(n, n) * jet.h_inv;
  jet.dh = jet.dg.topLeftCorner(n, n);
  jet.ddh = ddg.topLeftCorner(n, n);
  jet.dn1 = (jet.dg.bottomLeftCorner(n, n) - jet.n1 * jet.dh) * jet.h_inv;
  return jet;
}

Trajectory bratu_ci_solution(const GeneratorCI& gen, std::span<const double> grid) {
  Trajectory out;
  out.residual_names = {"ci"};
  out.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto jet = gauss_jet_ci(gen, grid[i]);
    const Matrix lhs = log_derivative_rate(jet.h_inv, jet.dh, jet.ddh);
    const Matrix ch = gen.c() * jet.h_inv;
    out.samples[i] = {grid[i], jet.h, {max_abs(lhs - ch * ch)}};
  });
  return out;
}

LagrangianCI lagrangian_ci_identity(const GeneratorCI& gen, double s) {
  const auto jet = gauss_jet_ci(gen, s);
  const Matrix q = jet.dg * inverse(jet.g);
  const Matrix p = jet.dh * jet.h_inv;
  LagrangianCI out;
  out.total = 0.5 * (q * q).trace();
  out.kinetic_h = (p * p).trace();
  out.cross = (jet.h * jet.dn1.transpose() * jet.h * jet.dn1).trace();
  return out;
}

DomainPointCI::DomainPointCI(CMatrix raw, Index n) : raw_(std::move(raw)), n_(n) {
  if (raw_.rows() != 2 * n || raw_.cols() != n) {
    throw DimensionError("DomainPointCI: expected a 2n x n representative");
  }
  if (!raw_.allFinite()) throw ValidationError("DomainPointCI: non-finite entry");
  if (n > 0) {
    Eigen::JacobiSVD<CMatrix> dec(raw_);
    const auto& sv = dec.singularValues();
    if (!(sv(n - 1) > 1e-10 * sv(0))) {
      throw ValidationError("DomainPointCI: representative is not of full column rank");
    }
  }
  const CMatrix lower = raw_.bottomRows(n);
  if (condition_number(lower) <= kMaxNormalizerCondition) {
    normalized_ = raw_ * inverse(lower);
    canonical_ = true;
  }
}

DomainPointCI DomainPointCI::make(const CMatrix& u, Index n) { return DomainPointCI(u, n); }

CiMembership ci_membership(const DomainPointCI& u) {
  if (!u.canonical()) throw DomainError("ci_membership: lower block is singular");
  const Index n = u.n();
  const CMatrix& x = u.normalized();
  const CMatrix form = x.adjoint() * ci_hermitian_form(n) * x;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (form + form.adjoint()));
  CiMembership out;
  out.hermitian_min_eigenvalue = n == 0 ? 0.0 : es.eigenvalues().minCoeff();
  out.lagrangian_gap = max_abs(x.transpose() * symplectic_form(n).cast<Complex>() * x);
  out.in_domain = out.hermitian_min_eigenvalue > 0.0 && out.lagrangian_gap <= 1e-10;
  return out;
}

CMatrix ci_basepoint(Index n) {
  CMatrix u(2 * n, n);
  u.topRows(n) = kI * Matrix::Identity(n, n).cast<Complex>();
  u.bottomRows(n) = CMatrix::Identity(n, n);
  return u;
}

CMatrix ci_shilov_point(Index n) {
  CMatrix w = CMatrix::Zero(2 * n, n);
  w.bottomRows(n).setIdentity();
  return w;
}

CMatrix delta_ci(const DomainPointCI& u1, const DomainPointCI& u2) {
  if (u1.n() != u2.n()) throw DimensionError("delta_ci: points have different n");
  const Index n = u1.n();
  auto normalize = [n](const CMatrix& u) {
    const CMatrix gamma = u.bottomRows(n);
    if (condition_number(gamma) > kMaxNormalizerCondition) {
      throw DomainError("delta_ci: point at infinity relative to the boundary point");
    }
    return CMatrix(u * inverse(gamma));
  };
  return normalize(u1.representative()).adjoint() * ci_hermitian_form(n) *
         normalize(u2.representative());
}

DomainPointCI f_map_ci(const OmegaPointCI& g) {
  const Index n = g.n();
  CMatrix u(2 * n, n);
  u.topRows(n) = kI * CMatrix::Identity(n, n) - g.matrix().bottomLeftCorner(n, n).cast<Complex>();
  u.bottomRows(n) = g.matrix().topLeftCorner(n, n).cast<Complex>();
  return DomainPointCI::make(u, n);
}

SpdMatrix pi_map_ci(const OmegaPointCI& g) {
  return SpdMatrix::from(g.matrix().topLeftCorner(g.n(), g.n()));
}

OmegaPointCI act_ci(const Matrix& g, const OmegaPointCI& point) {
  const Matrix g_inv = inverse(g);
  const Matrix moved = g_inv.transpose() * point.matrix() * g_inv;
  return OmegaPointCI::make(0.5 * (moved + moved.transpose()));
}

DomainPointCI act_ci(const Matrix& g, const DomainPointCI& u) {
  return DomainPointCI::make(g.cast<Complex>() * u.representative(), u.n());
}

double symplectic_group_gap(const Matrix& g) {
  if (g.rows() % 2 != 0) throw DimensionError("symplectic_group_gap: size must be even");
  const Matrix k = symplectic_form(g.rows() / 2);
  return max_abs(g * k * g.transpose() - k);
}

CMatrix prop_ci_h(const GeneratorCI& gen, double s) {
  const Index n = gen.n();
  const CMatrix moved = expm(s * gen.embed()).cast<Complex>() * ci_basepoint(n);
  const auto u = DomainPointCI::make(moved, n);
  const CMatrix k = delta_ci(u, u);
  return inverse(CMatrix(0.5 * (k + k.adjoint())));
}

Trajectory prop_ci_solution(const GeneratorCI& gen, std::span<const double> grid) {
  const Index n = gen.n();
  const Matrix big = gen.embed();
  auto h_of = [&](double s) { return Matrix(prop_ci_h(gen, s).real()); };

  Trajectory out;
  out.residual_names = {"ci_fd", "half_tilde", "imag"};
  out.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double s = grid[i];
    const CMatrix full = prop_ci_h(gen, s);
    const Matrix h = full.real();
    const Matrix h_inv = inverse(h);
    const Matrix dh = oracle::num_diff(h_of, s, 1);
    const Matrix ddh = oracle::num_diff(h_of, s, 2);
    const Matrix ch = gen.c() * h_inv;
    const Matrix lhs = log_derivative_rate(h_inv, dh, ddh);
    const Matrix tilde = expm(-2.0 * s * big).topLeftCorner(n, n);
    out.samples[i] = {s, h, {max_abs(lhs - ch * ch), max_abs(h - 0.5 * tilde), max_abs(full.imag())}};
  });
  return out;
}

}  // namespace bratu
