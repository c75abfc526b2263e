#include "bratu/bdi_domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bratu/oracle.hpp"
#include "bratu/parallel.hpp"

namespace bratu {

namespace {

constexpr double kMaxNormalizerCondition = 1e12;

void require_realization(const DomainPoint& u, Realization kind, const char* what) {
  if (u.realization() != kind) {
    throw PreconditionError(std::string(what) + ": point is in the wrong realization");
  }
}

void require_same_shape(const DomainPoint& u1, const DomainPoint& u2, const char* what) {
  if (u1.n() != u2.n() || u1.r() != u2.r()) {
    throw DimensionError(std::string(what) + ": points have different (n, r)");
  }
}

// U * (W^T U)^-1 with a DomainError when W^T U is singular.
Matrix normalize_by(const Matrix& u, const Matrix& gamma, const char* what) {
  if (condition_number(gamma) > kMaxNormalizerCondition) {
    throw DomainError(std::string(what) + ": point at infinity relative to the boundary point");
  }
  return u * inverse(gamma);
}

}  // namespace

Matrix domain_form(Index n, Index r) { return -omega_involution(n, r); }

Matrix bounded_form(Index n, Index r) {
  Matrix l = -Matrix::Identity(2 * n + r, 2 * n + r);
  l.topLeftCorner(n, n).setIdentity();
  return l;
}

Matrix cayley_matrix(Index n, Index r) {
  const double k = 1.0 / std::sqrt(2.0);
  Matrix a = Matrix::Zero(2 * n + r, 2 * n + r);
  a.block(0, 0, n, n) = k * Matrix::Identity(n, n);
  a.block(0, n + r, n, n) = -k * Matrix::Identity(n, n);
  a.block(n, n, r, r).setIdentity();
  a.block(n + r, 0, n, n) = k * Matrix::Identity(n, n);
  a.block(n + r, n + r, n, n) = k * Matrix::Identity(n, n);
  return a;
}

Matrix siegel_basepoint(Index n, Index r) {
  Matrix u = Matrix::Zero(2 * n + r, n);
  u.topRows(n) = -Matrix::Identity(n, n);
  u.bottomRows(n).setIdentity();
  return u;
}

Matrix shilov_point(Index n, Index r) {
  Matrix w = Matrix::Zero(2 * n + r, n);
  w.bottomRows(n).setIdentity();
  return w;
}

Matrix bounded_basepoint(Index n, Index r) {
  Matrix v = Matrix::Zero(2 * n + r, n);
  v.topRows(n) = -std::sqrt(2.0) * Matrix::Identity(n, n);
  return v;
}

Matrix bounded_shilov_point(Index n, Index r) { return cayley_matrix(n, r) * shilov_point(n, r); }

DomainPoint::DomainPoint(Matrix raw, Index n, Index r, Realization kind)
    : raw_(std::move(raw)), n_(n), r_(r), realization_(kind) {
  if (raw_.rows() != 2 * n + r || raw_.cols() != n) {
    throw DimensionError("DomainPoint: expected a (2n+r) x n representative");
  }
  require_finite(raw_, "DomainPoint");
  const auto sv = svd(raw_).sigma;
  if (n > 0 && !(sv(n - 1) > 1e-10 * sv(0))) {
    throw ValidationError("DomainPoint: representative is not of full column rank");
  }
  const Matrix lead = kind == Realization::siegel ? Matrix(raw_.bottomRows(n)) : Matrix(raw_.topRows(n));
  if (condition_number(lead) <= kMaxNormalizerCondition) {
    normalized_ = raw_ * inverse(lead);
    canonical_ = true;
  }
}

DomainPoint DomainPoint::siegel(const Matrix& u, Index n, Index r) {
  return DomainPoint(u, n, r, Realization::siegel);
}

DomainPoint DomainPoint::bounded(const Matrix& v, Index n, Index r) {
  return DomainPoint(v, n, r, Realization::bounded);
}

SiegelMembership siegel_membership(const DomainPoint& u) {
  require_realization(u, Realization::siegel, "siegel_membership");
  if (!u.canonical()) throw DomainError("siegel_membership: third block is singular");
  const Index n = u.n();
  const Matrix& x = u.normalized();
  const Matrix u1 = x.topRows(n);
  const Matrix u2 = x.middleRows(n, u.r());
  SiegelMembership out;
  out.slack = -u1.transpose() - u1 - u2.transpose() * u2;
  out.slack = symmetric_part(out.slack);
  out.in_domain = chol_is_spd(out.slack).spd;
  out.shilov_gap = max_abs(out.slack);
  return out;
}

BoundedMembership bounded_membership(const DomainPoint& v) {
  require_realization(v, Realization::bounded, "bounded_membership");
  if (!v.canonical()) throw DomainError("bounded_membership: first block is singular");
  const Index n = v.n();
  const Matrix& x = v.normalized();
  const Matrix v2 = x.middleRows(n, v.r());
  const Matrix v3 = x.bottomRows(n);
  BoundedMembership out;
  out.slack = Matrix::Identity(n, n) - v2.transpose() * v2 - v3.transpose() * v3;
  out.slack = symmetric_part(out.slack);
  out.in_domain = chol_is_spd(out.slack).spd;
  return out;
}

Matrix delta(const DomainPoint& u1, const DomainPoint& u2) {
  require_realization(u1, Realization::siegel, "delta");
  require_realization(u2, Realization::siegel, "delta");
  require_same_shape(u1, u2, "delta");
  const Index n = u1.n();
  const Matrix x1 = normalize_by(u1.representative(), u1.representative().bottomRows(n), "delta");
  const Matrix x2 = normalize_by(u2.representative(), u2.representative().bottomRows(n), "delta");
  return x1.transpose() * domain_form(n, u1.r()) * x2;
}

Matrix psi(const DomainPoint& v1, const DomainPoint& v2) {
  require_realization(v1, Realization::bounded, "psi");
  require_realization(v2, Realization::bounded, "psi");
  require_same_shape(v1, v2, "psi");
  const Index n = v1.n();
  const Index r = v1.r();
  const Matrix zt = bounded_shilov_point(n, r).transpose();
  const Matrix x1 = normalize_by(v1.representative(), zt * v1.representative(), "psi");
  const Matrix x2 = normalize_by(v2.representative(), zt * v2.representative(), "psi");
  return x1.transpose() * bounded_form(n, r) * x2;
}

DomainPoint f_map(const OmegaPointBDI& g) {
  const Index n = g.n();
  const Index r = g.r();
  const Matrix& big = g.matrix();
  Matrix u(2 * n + r, n);
  u.topRows(n) = big.block(n + r, 0, n, n) - Matrix::Identity(n, n);
  u.middleRows(n, r) = big.block(n, 0, r, n);
  u.bottomRows(n) = big.block(0, 0, n, n);
  return DomainPoint::siegel(u, n, r);
}

SpdMatrix pi_map(const OmegaPointBDI& g) {
  return SpdMatrix::from(g.matrix().topLeftCorner(g.n(), g.n()));
}

DomainPoint cayley(const DomainPoint& u) {
  require_realization(u, Realization::siegel, "cayley");
  return DomainPoint::bounded(cayley_matrix(u.n(), u.r()) * u.representative(), u.n(), u.r());
}

OmegaPointBDI act(const Matrix& g, const OmegaPointBDI& point) {
  const Matrix g_inv = inverse(g);
  const Matrix moved = g_inv.transpose() * point.matrix() * g_inv;
  return OmegaPointBDI::make(point.n(), point.r(), 0.5 * (moved + moved.transpose()));
}

DomainPoint act(const Matrix& g, const DomainPoint& u) {
  if (u.realization() == Realization::siegel) {
    return DomainPoint::siegel(g * u.representative(), u.n(), u.r());
  }
  return DomainPoint::bounded(g * u.representative(), u.n(), u.r());
}

double orthogonal_group_gap(const Matrix& g, Index n, Index r) {
  const Matrix j = omega_involution(n, r);
  return max_abs(g * j * g.transpose() - j);
}

namespace {

// First and second derivative at 0 of f with f(0) known, from central
// differences at d and d/2 combined to cancel the d^2 error term.
TaylorFit fit_at_zero(const std::function<Matrix(double)>& f, const Matrix& f0) {
  constexpr double d = 1e-3;
  auto first = [&](double h) { return Matrix((f(h) - f(-h)) / (2.0 * h)); };
  auto second = [&](double h) { return Matrix((f(h) - 2.0 * f0 + f(-h)) / (h * h)); };
  return {(4.0 * first(d / 2) - first(d)) / 3.0, (4.0 * second(d / 2) - second(d)) / 3.0};
}

}  // namespace

TaylorFit taylor_delta_fit(const GeneratorBDI& gen) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix big = gen.embed();
  const auto w = DomainPoint::siegel(shilov_point(n, r), n, r);
  auto f = [&](double s) {
    return delta(w, DomainPoint::siegel(expm(s * big) * w.representative(), n, r));
  };
  return fit_at_zero(f, f(0.0));
}

Matrix delta_h(const GeneratorBDI& gen, double s) {
  const Index n = gen.n();
  const Index r = gen.r();
  const auto u = DomainPoint::siegel(expm(s * gen.embed()) * siegel_basepoint(n, r), n, r);
  const Matrix k = delta(u, u);
  return inverse(Matrix(0.5 * (k + k.transpose())));
}

Trajectory delta_bratu_solution(const GeneratorBDI& gen, std::span<const double> grid) {
  if (!gen.twist_free()) {
    throw PreconditionError("delta_bratu_solution: requires c = 0");
  }
  const Index n = gen.n();
  const Matrix big = gen.embed();
  const Matrix aat2 = 2.0 * gen.a() * gen.a().transpose();
  auto h_of = [&](double s) { return delta_h(gen, s); };

  Trajectory out;
  out.residual_names = {"bratu2", "half_tilde"};
  out.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double s = grid[i];
    const Matrix h = h_of(s);
    const Matrix h_inv = inverse(h);
    const Matrix dh = oracle::num_diff(h_of, s, 1);
    const Matrix ddh = oracle::num_diff(h_of, s, 2);
    const Matrix lhs = log_derivative_rate(h_inv, dh, ddh);
    const Matrix tilde = expm(-2.0 * s * big).topLeftCorner(n, n);
    out.samples[i] = {s, h, {max_abs(lhs - aat2 * h_inv), max_abs(h - 0.5 * tilde)}};
  });
  return out;
}

BoundedGenerator BoundedGenerator::from_block(const Matrix& c, Index n, Index r) {
  if (c.rows() != n + r || c.cols() != n) {
    throw DimensionError("BoundedGenerator: C must be (n+r) x n");
  }
  require_finite(c, "BoundedGenerator");
  return BoundedGenerator(c, n, r);
}

BoundedGenerator BoundedGenerator::from_matrix(const Matrix& big, Index n, Index r) {
  if (big.rows() != 2 * n + r || big.cols() != 2 * n + r) {
    throw DimensionError("BoundedGenerator: expected a (2n+r)-square matrix");
  }
  require_finite(big, "BoundedGenerator");
  const double scale = std::max(1.0, max_abs(big));
  const bool shaped = max_abs(big.topLeftCorner(n, n)) <= 1e-13 * scale &&
                      max_abs(big.bottomRightCorner(n + r, n + r)) <= 1e-13 * scale &&
                      max_abs(big - big.transpose()) <= 1e-13 * scale;
  if (!shaped) throw ValidationError("BoundedGenerator: matrix is not of the form [[0, C^T], [C, 0]]");
  const Matrix lower = big.bottomLeftCorner(n + r, n);
  const Matrix upper = big.topRightCorner(n, n + r).transpose();
  return BoundedGenerator(0.5 * (lower + upper), n, r);
}

BoundedGenerator BoundedGenerator::from_bdi(const GeneratorBDI& gen) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix a = cayley_matrix(n, r);
  return from_matrix(a * gen.embed() * a.transpose(), n, r);
}

Matrix BoundedGenerator::embed() const {
  Matrix big = Matrix::Zero(2 * n_ + r_, 2 * n_ + r_);
  big.bottomLeftCorner(n_ + r_, n_) = c_;
  big.topRightCorner(n_, n_ + r_) = c_.transpose();
  return big;
}

SvdFactors svd_factors(const BoundedGenerator& gen) {
  const Index n = gen.n();
  const Index r = gen.r();
  const auto dec = svd(gen.block());
  SvdFactors f;
  f.orthogonal.resize(n + r, n + r);
  f.orthogonal.leftCols(r) = dec.left.rightCols(r);
  f.orthogonal.rightCols(n) = dec.left.leftCols(n);
  f.q = dec.right;
  f.p3 = f.orthogonal.topRightCorner(r, n);
  f.p = f.orthogonal.bottomRightCorner(n, n);
  f.sigma = dec.sigma;
  return f;
}

Matrix closed_form_h(const SvdFactors& f, double s) {
  const auto hyp = hyperbolics(f.sigma, s);
  const Matrix e = f.p * hyp.sh - f.q * hyp.ch;
  return 0.5 * e * e.transpose();
}

Matrix psi_h(const BoundedGenerator& gen, double s) {
  const Index n = gen.n();
  const Index r = gen.r();
  const auto v = DomainPoint::bounded(expm(s * gen.embed()) * bounded_basepoint(n, r), n, r);
  const Matrix k = psi(v, v);
  return inverse(Matrix(0.5 * (k + k.transpose())));
}

Trajectory closed_form_h(const BoundedGenerator& gen, std::span<const double> grid) {
  const auto f = svd_factors(gen);
  Trajectory out;
  out.residual_names = {"psi_gap"};
  out.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Matrix h = closed_form_h(f, grid[i]);
    out.samples[i] = {grid[i], h, {max_abs(h - psi_h(gen, grid[i]))}};
  });
  return out;
}

TaylorFit taylor_psi_fit(const BoundedGenerator& gen) {
  const Index n = gen.n();
  const Index r = gen.r();
  const Matrix big = gen.embed();
  const auto z = DomainPoint::bounded(bounded_shilov_point(n, r), n, r);
  auto f = [&](double s) {
    return psi(z, DomainPoint::bounded(expm(s * big) * z.representative(), n, r));
  };
  return fit_at_zero(f, f(0.0));
}

std::vector<SeriesTerm> power_series_h(const SvdFactors& f, int order) {
  if (order < 0) throw PreconditionError("power_series_h: order must be >= 0");
  const Index n = f.q.rows();
  std::vector<SeriesTerm> terms;
  terms.push_back({0, 0.5 * Matrix::Identity(n, n)});
  Vector sigma_k = Vector::Ones(n);
  double factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    sigma_k = sigma_k.cwiseProduct(f.sigma);
    factorial *= k;
    const double weight = std::ldexp(1.0, k - 2) / factorial;
    const auto d = sigma_k.asDiagonal();
    Matrix coefficient;
    if (k % 2 == 0) {
      coefficient = weight * (f.q * d * f.q.transpose() + f.p * d * f.p.transpose());
    } else {
      coefficient = -weight * (f.p * d * f.q.transpose() + f.q * d * f.p.transpose());
    }
    terms.push_back({k, std::move(coefficient)});
  }
  return terms;
}

std::vector<SeriesTerm> power_series_h(const BoundedGenerator& gen, int order) {
  return power_series_h(svd_factors(gen), order);
}

Matrix evaluate_series(const std::vector<SeriesTerm>& terms, double s) {
  if (terms.empty()) return Matrix();
  Matrix sum = Matrix::Zero(terms.front().coefficient.rows(), terms.front().coefficient.cols());
  for (const auto& t : terms) sum += std::pow(s, t.power) * t.coefficient;
  return sum;
}

double series_truncation_bound(double sigma_max, double s, int order) {
  const double x = 2.0 * sigma_max * std::abs(s);
  double term = 1.0;
  for (int k = 1; k <= order + 1; ++k) term *= x / k;
  return 0.5 * term * std::exp(x);
}

}  // namespace bratu
