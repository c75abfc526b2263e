#pragma once

// Type-BDI algebraic layer: generators B(b, a, c) of V(J), exponential
// trajectories in Omega(J), the block-Gauss decomposition G = N A N^T and the
// exponential solution of the matrix-valued Bratu equation
//
//     (h' h^-1)' = (a a^T) h^-1.
//
// Block sizes are always (n, r, n); J = [[0,0,I],[0,I,0],[I,0,0]].

#include <span>

#include "bratu/matcore.hpp"
#include "bratu/trajectory.hpp"

namespace bratu {

/// The involution J used to define Omega(J) = {G SPD : J G J = G^-1}.
Matrix omega_involution(Index n, Index r);

/// Triple (b, a, c) with b symmetric n x n, a n x r and c skew n x n.
class GeneratorBDI {
 public:
  /// Validates shapes, then requires ||b - b^T|| and ||c + c^T|| to be at most
  /// 1e-13 * max(1, ||.||) before replacing b, c by their exact symmetric /
  /// skew parts.
  static GeneratorBDI make(const Matrix& b, const Matrix& a, const Matrix& c);
  static GeneratorBDI zero(Index n, Index r);

  Index n() const noexcept { return b_.rows(); }
  Index r() const noexcept { return a_.cols(); }
  const Matrix& b() const noexcept { return b_; }
  const Matrix& a() const noexcept { return a_; }
  const Matrix& c() const noexcept { return c_; }

  /// B = [[b, a, c], [a^T, 0, -a^T], [c^T, -a, -b]]; symmetric and J B J = -B
  /// hold exactly.
  Matrix embed() const;

  GeneratorBDI scaled(double t) const;
  bool twist_free() const noexcept { return max_abs(c_) == 0.0; }

 private:
  GeneratorBDI(Matrix b, Matrix a, Matrix c)
      : b_(std::move(b)), a_(std::move(a)), c_(std::move(c)) {}

  Matrix b_;
  Matrix a_;
  Matrix c_;
};

/// A point of Omega(J) of size 2n + r.
class OmegaPointBDI {
 public:
  /// Requires G SPD and ||J G J - G^-1|| <= 1e-10 * ||G^-1||.
  static OmegaPointBDI make(Index n, Index r, const Matrix& g);

  Index n() const noexcept { return n_; }
  Index r() const noexcept { return r_; }
  const Matrix& matrix() const noexcept { return g_.matrix(); }

 private:
  OmegaPointBDI(Index n, Index r, SpdMatrix g) : n_(n), r_(r), g_(std::move(g)) {}

  Index n_;
  Index r_;
  SpdMatrix g_;
};

/// Block-Gauss factors (h, n1, n2) with
///   N = [[I, 0, 0], [n1^T, I, 0], [n2^T, -n1, I]],  A = diag(h, I, h^-1).
class GaussFactorsBDI {
 public:
  /// Requires h SPD and ||n2 + n2^T + n1 n1^T|| <= 1e-10 * max(1, ||n1 n1^T||).
  static GaussFactorsBDI make(const Matrix& h, const Matrix& n1, const Matrix& n2);

  Index n() const noexcept { return h_.size(); }
  Index r() const noexcept { return n1_.cols(); }
  const SpdMatrix& h() const noexcept { return h_; }
  const Matrix& n1() const noexcept { return n1_; }
  const Matrix& n2() const noexcept { return n2_; }

  Matrix unipotent() const;  // N
  Matrix diagonal() const;   // A

 private:
  GaussFactorsBDI(SpdMatrix h, Matrix n1, Matrix n2)
      : h_(std::move(h)), n1_(std::move(n1)), n2_(std::move(n2)) {}

  SpdMatrix h_;
  Matrix n1_;
  Matrix n2_;
};

/// G(s; B) = exp(s B).
OmegaPointBDI exp_trajectory(const GeneratorBDI& gen, double s);

/// h = G11, n1 = h^-1 G12, n2 = h^-1 G13. Throws ConsistencyError if the
/// reconstruction N A N^T misses G by more than 1e-11 * max(1, ||G||).
GaussFactorsBDI block_gauss(const OmegaPointBDI& g);

/// N A N^T.
OmegaPointBDI gauss_compose(const GaussFactorsBDI& f);

/// Block-Gauss factors along exp(sB) together with their s-derivatives,
/// obtained from G' = B G and G'' = B^2 G by the chain rule:
///   h'  = (BG)11,  h'' = (B^2 G)11,
///   n1' = h^-1((BG)12 - h' n1),  n2' = h^-1((BG)13 - h' n2).
struct GaussJetBDI {
  Matrix g;
  Matrix dg;  // G'
  Matrix h, n1, n2;
  Matrix h_inv;
  Matrix dh, ddh, dn1, dn2;
};
GaussJetBDI gauss_jet(const GeneratorBDI& gen, double s);

/// (h' h^-1)' = h'' h^-1 - h' h^-1 h' h^-1.
Matrix log_derivative_rate(const Matrix& h_inv, const Matrix& dh, const Matrix& ddh);

/// Exponential solution h~(s) = [exp(sB)]11 of the Bratu equation for a
/// twist-free generator. Residual column "bratu": ||(h~'h~^-1)' - a a^T h~^-1||
/// with analytic derivatives. Throws PreconditionError if c != 0; the general
/// system is handled by el_system_residuals (variational.hpp).
Trajectory bratu_solution(const GeneratorBDI& gen, std::span<const double> grid);

}  // namespace bratu
