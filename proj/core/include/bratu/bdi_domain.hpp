#pragma once

// Symmetric-domain realizations of type BDI.
//
// Siegel form D(J): projective points u = [U], U in M_{2n+r,n} of rank n with
// U^T J U > 0 for J = -[[0,0,I],[0,I,0],[I,0,0]] (note the global sign, which
// differs from omega_involution). Bounded form D(L) with L = diag(I, -I, -I),
// reached through the orthogonal Cayley matrix
//
//     A = 1/sqrt(2) [[I, 0, -I], [0, sqrt(2) I, 0], [I, 0, I]],  L = A J A^T.
//
// The kernels
//     Delta(u1, u2) = (U1 G1^-1)^T J (U2 G2^-1),  G_j = W^T U_j = U_j3
//     psi(v1, v2)   = (V1 G1^-1)^T L (V2 G2^-1),  G_j = Z^T V_j
// are independent of the representatives, and Delta(u, u)^-1 along e^{sB} u0
// is a Bratu solution.

#include <span>
#include <vector>

#include "bratu/bdi_geometry.hpp"

namespace bratu {

Matrix domain_form(Index n, Index r);   // J (Siegel side)
Matrix bounded_form(Index n, Index r);  // L
Matrix cayley_matrix(Index n, Index r); // A

Matrix siegel_basepoint(Index n, Index r);   // U0 = [-I; 0; I]
Matrix shilov_point(Index n, Index r);       // W  = [0; 0; I]
Matrix bounded_basepoint(Index n, Index r);  // V0 = A U0 = -sqrt(2) [I; 0; 0]
Matrix bounded_shilov_point(Index n, Index r);  // Z = A W = [-I; 0; I] / sqrt(2)

enum class Realization { siegel, bounded };

/// A point [U] of the Grassmannian-like quotient M / GL(n). The canonical
/// representative normalizes the third block (Siegel) or first block (bounded)
/// to the identity; when that block has condition number above 1e12 the raw
/// representative is kept and canonical() is false.
class DomainPoint {
 public:
  /// Throws DimensionError on shape mismatch and ValidationError if U is not
  /// of full column rank (smallest singular value <= 1e-10 * largest).
  static DomainPoint siegel(const Matrix& u, Index n, Index r);
  static DomainPoint bounded(const Matrix& v, Index n, Index r);

  Index n() const noexcept { return n_; }
  Index r() const noexcept { return r_; }
  Realization realization() const noexcept { return realization_; }
  const Matrix& representative() const noexcept { return raw_; }
  bool canonical() const noexcept { return canonical_; }
  /// Canonical representative when available, raw otherwise.
  const Matrix& normalized() const noexcept { return canonical_ ? normalized_ : raw_; }

 private:
  DomainPoint(Matrix raw, Index n, Index r, Realization kind);

  Matrix raw_;
  Matrix normalized_;
  Index n_;
  Index r_;
  Realization realization_;
  bool canonical_ = false;
};

/// slack = -U1^T - U1 - U2^T U2 of the canonical Siegel representative.
/// D(J) membership is slack SPD; the Shilov boundary is slack = 0.
struct SiegelMembership {
  Matrix slack;
  bool in_domain = false;
  double shilov_gap = 0.0;  // ||slack||
};
SiegelMembership siegel_membership(const DomainPoint& u);

/// slack = I - V2^T V2 - V3^T V3 of the canonical bounded representative.
struct BoundedMembership {
  Matrix slack;
  bool in_domain = false;
};
BoundedMembership bounded_membership(const DomainPoint& v);

/// Throws DomainError when a normalizer W^T U_j is singular (condition number
/// above 1e12), i.e. the point is at infinity relative to W.
Matrix delta(const DomainPoint& u1, const DomainPoint& u2);
Matrix psi(const DomainPoint& v1, const DomainPoint& v2);

/// F(G) = [G3 - I; G2; h] for the first block column [h; G2; G3] of G.
DomainPoint f_map(const OmegaPointBDI& g);
/// pi(G) = h.
SpdMatrix pi_map(const OmegaPointBDI& g);

/// u -> [A U].
DomainPoint cayley(const DomainPoint& u);

/// g . G = g^-T G g^-1 and g . [U] = [g U] for g in the orthogonal group of J.
OmegaPointBDI act(const Matrix& g, const OmegaPointBDI& point);
DomainPoint act(const Matrix& g, const DomainPoint& u);
/// ||g J g^T - J||; zero exactly for group elements.
double orthogonal_group_gap(const Matrix& g, Index n, Index r);

/// Coefficients of s and s^2/2 in the expansion of a kernel at the Shilov
/// point, fitted with central differences at steps 1e-3 and 5e-4 combined by
/// Richardson extrapolation.
struct TaylorFit {
  Matrix order1;
  Matrix order2;
};
/// Fit of s -> Delta(w, e^{sB} w). Expected: (-c, a a^T - b c - c b).
TaylorFit taylor_delta_fit(const GeneratorBDI& gen);

/// h(s) = Delta(e^{sB} u0, e^{sB} u0)^-1 for any B(b, a, c).
Matrix delta_h(const GeneratorBDI& gen, double s);

/// h(s) = Delta(e^{sB} u0, e^{sB} u0)^-1 for c = 0, which solves
/// (h'h^-1)' = 2 (a a^T) h^-1. Columns:
///   "bratu2"     ||(h'h^-1)' - 2 a a^T h^-1|| with finite-difference derivatives
///   "half_tilde" ||h - 1/2 [exp(-2sB)]11||
/// Throws PreconditionError if c != 0.
Trajectory delta_bratu_solution(const GeneratorBDI& gen, std::span<const double> grid);

/// Element [[0, C^T], [C, 0]] of p(L), C in M_{n+r,n}.
class BoundedGenerator {
 public:
  static BoundedGenerator from_block(const Matrix& c, Index n, Index r);
  /// Validates the p(L) block shape of a full (2n+r)-square matrix.
  static BoundedGenerator from_matrix(const Matrix& big, Index n, Index r);
  /// A B A^T for B in p(J); C = [sqrt(2) a^T; b - c].
  static BoundedGenerator from_bdi(const GeneratorBDI& gen);

  Index n() const noexcept { return n_; }
  Index r() const noexcept { return r_; }
  const Matrix& block() const noexcept { return c_; }
  Matrix embed() const;

 private:
  BoundedGenerator(Matrix c, Index n, Index r) : c_(std::move(c)), n_(n), r_(r) {}

  Matrix c_;
  Index n_;
  Index r_;
};

/// C = [[p1, p3], [p2, p]] [0; sigma] q^T with the O(n+r) factor stored in
/// `orthogonal`; p3 is r x n, p is n x n, sigma descending and possibly zero.
struct SvdFactors {
  Matrix orthogonal;
  Matrix q;
  Matrix p;
  Matrix p3;
  Vector sigma;
};
SvdFactors svd_factors(const BoundedGenerator& gen);

/// h(s) = 1/2 e(s) e(s)^T with e(s) = p sh(s sigma) - q ch(s sigma).
Matrix closed_form_h(const SvdFactors& f, double s);
/// Closed form along a grid with column "psi_gap": distance to psi_h.
Trajectory closed_form_h(const BoundedGenerator& gen, std::span<const double> grid);

/// psi(e^{sB} v0, e^{sB} v0)^-1 evaluated through expm.
Matrix psi_h(const BoundedGenerator& gen, double s);

/// Fit of s -> psi(z, e^{sB} z); for B = A B' A^T it matches taylor_delta_fit(B').
TaylorFit taylor_psi_fit(const BoundedGenerator& gen);

struct SeriesTerm {
  int power = 0;
  Matrix coefficient;

  bool even() const noexcept { return power % 2 == 0; }
};

/// Coefficients of h(s) = sum_k H_k s^k through s^order:
///   H_0 = I/2,
///   H_k = 2^(k-2) (q sigma^k q^T + p sigma^k p^T) / k!   (k even, k >= 2)
///   H_k = -2^(k-2) (p sigma^k q^T + q sigma^k p^T) / k!  (k odd)
/// order must be >= 0.
std::vector<SeriesTerm> power_series_h(const SvdFactors& f, int order);
std::vector<SeriesTerm> power_series_h(const BoundedGenerator& gen, int order);
Matrix evaluate_series(const std::vector<SeriesTerm>& terms, double s);

/// Bound on the entrywise truncation error of the order-N series:
/// 1/2 x^(N+1) / (N+1)! * e^x with x = 2 sigma_max |s|.
double series_truncation_bound(double sigma_max, double s, int order);

}  // namespace bratu
