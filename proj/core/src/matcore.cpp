#include "bratu/matcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace bratu {

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

Matrix symmetric_part(const Matrix& m) {
  require_square(m, "symmetric_part");
  return 0.5 * (m + m.transpose());
}

Matrix skew_part(const Matrix& m) {
  require_square(m, "skew_part");
  return 0.5 * (m - m.transpose());
}

namespace {

template <class M>
M lu_inverse(const M& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": non-square matrix");
  }
  if (m.rows() == 0) return m;
  Eigen::PartialPivLU<M> lu(m);
  if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
    throw ConsistencyError(std::string(what) + ": matrix is numerically singular");
  }
  return lu.inverse();
}

template <class M>
double svd_condition(const M& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<M> s(m);
  const auto& sv = s.singularValues();
  const double lo = sv(sv.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / lo;
}

}  // namespace

Matrix inverse(const Matrix& m) { return lu_inverse(m, "inverse"); }
CMatrix inverse(const CMatrix& m) { return lu_inverse(m, "inverse"); }

double condition_number(const Matrix& m) { return svd_condition(m); }
double condition_number(const CMatrix& m) { return svd_condition(m); }

Matrix expm(const Matrix& m) {
  require_square(m, "expm");
  require_finite(m, "expm");
  const Index n = m.rows();
  if (n == 0) return m;

  // Degree-13 Pade coefficients and the matching 1-norm threshold.
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return Matrix::Identity(n, n);
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  }
  const Matrix a = m / std::ldexp(1.0, squarings);
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;

  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                         b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix u = a * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                   b[2] * a2 + b[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

SvdResult svd(const Matrix& c) {
  require_finite(c, "svd");
  Eigen::JacobiSVD<Matrix> s(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {s.matrixU(), s.singularValues(), s.matrixV()};
}

SymmetricEigen symmetric_eigen(const Matrix& m) {
  require_square(m, "symmetric_eigen");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_part(m));
  if (es.info() != Eigen::Success) {
    throw ConsistencyError("symmetric_eigen: solver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

CholeskyCheck chol_is_spd(const Matrix& m) {
  require_square(m, "chol_is_spd");
  require_finite(m, "chol_is_spd");
  const double scale = max_abs(m);
  if (max_abs(m - m.transpose()) > 1e-10 * std::max(1.0, scale)) {
    throw ValidationError("chol_is_spd: input is not symmetric");
  }
  const Index n = m.rows();
  const double pivot_floor = 1e-12 * scale;
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double d = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > pivot_floor)) {
      return {false, static_cast<std::size_t>(j + 1)};
    }
    l(j, j) = std::sqrt(d);
    for (Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(j).head(j).dot(l.row(i).head(j))) / l(j, j);
    }
  }
  return {true, 0};
}

Hyperbolics hyperbolics(const Vector& sigma, double s) {
  const Index n = sigma.size();
  Hyperbolics out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (Index i = 0; i < n; ++i) {
    out.ch(i, i) = std::cosh(s * sigma(i));
    out.sh(i, i) = std::sinh(s * sigma(i));
  }
  return out;
}

SpdMatrix SpdMatrix::from(const Matrix& m, double symmetry_tol) {
  require_square(m, "SpdMatrix");
  require_finite(m, "SpdMatrix");
  if (max_abs(m - m.transpose()) > symmetry_tol * std::max(1.0, max_abs(m))) {
    throw ValidationError("SpdMatrix: input is not symmetric");
  }
  Matrix sym = 0.5 * (m + m.transpose());
  const auto check = chol_is_spd(sym);
  if (!check.spd) {
    throw ValidationError("SpdMatrix: not positive definite (Cholesky pivot " +
                          std::to_string(check.failed_pivot) + ")");
  }
  return SpdMatrix(std::move(sym));
}

SpdMatrix SpdMatrix::identity(Index n) { return SpdMatrix(Matrix::Identity(n, n)); }

Matrix SpdMatrix::inverse() const {
  Eigen::LLT<Matrix> llt(m_);
  Matrix inv = llt.solve(Matrix::Identity(m_.rows(), m_.cols()));
  return 0.5 * (inv + inv.transpose());
}

}  // namespace bratu
