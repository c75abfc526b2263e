#pragma once

// Dense real/complex matrix kernel shared by every other module.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string_view>

#include "bratu/errors.hpp"

namespace bratu {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Entrywise max |m_ij|. This is the norm used for every residual and
/// tolerance in the library; an empty matrix has norm 0.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);
void require_square(const Matrix& m, std::string_view what);

Matrix symmetric_part(const Matrix& m);
Matrix skew_part(const Matrix& m);

/// Inverse through partial-pivot LU. Throws ConsistencyError when the matrix is
/// numerically singular (reciprocal condition estimate below machine epsilon).
Matrix inverse(const Matrix& m);
CMatrix inverse(const CMatrix& m);

/// 2-norm condition number from the singular values; +inf for singular input.
double condition_number(const Matrix& m);
double condition_number(const CMatrix& m);

/// Matrix exponential by scaling and squaring around a degree-13 Pade
/// approximant. Relative accuracy is near machine precision for the norms
/// used here (||M|| <= 10).
Matrix expm(const Matrix& m);

/// Full singular value decomposition c = left * [diag(sigma); 0] * right^T.
/// `left` is square of size rows(c), `right` square of size cols(c) and sigma
/// is sorted descending. Zero matrices are accepted.
struct SvdResult {
  Matrix left;
  Vector sigma;
  Matrix right;
};
SvdResult svd(const Matrix& c);

/// Eigenvalues ascending with orthonormal eigenvectors as columns.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};
SymmetricEigen symmetric_eigen(const Matrix& m);

/// Outcome of a Cholesky factorization attempt. `failed_pivot` is 1-based and
/// 0 when the matrix is positive definite.
struct CholeskyCheck {
  bool spd = false;
  std::size_t failed_pivot = 0;
};

/// Attempts M = L L^T with every pivot above 1e-12 * ||M||. Rejects input
/// whose asymmetry exceeds 1e-10 * max(1, ||M||) with a ValidationError.
CholeskyCheck chol_is_spd(const Matrix& m);

/// Diagonal cosh(s sigma) and sinh(s sigma).
struct Hyperbolics {
  Matrix ch;
  Matrix sh;
};
Hyperbolics hyperbolics(const Vector& sigma, double s);

/// Real symmetric positive-definite matrix. The stored matrix is exactly
/// symmetric; construction symmetrizes inputs that are symmetric to within
/// `symmetry_tol * max(1, ||m||)` and then runs the Cholesky test.
class SpdMatrix {
 public:
  static SpdMatrix from(const Matrix& m, double symmetry_tol = 1e-10);
  static SpdMatrix identity(Index n);

  const Matrix& matrix() const noexcept { return m_; }
  Index size() const noexcept { return m_.rows(); }
  Matrix inverse() const;

  operator const Matrix&() const noexcept { return m_; }

 private:
  explicit SpdMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

}  // namespace bratu
