#pragma once

// Type-CI analog. Omega(J) lives in Sym+_{2n}(R) with J = iK,
// K = [[0, I], [-I, 0]], and is characterized in real terms by G K G^T = K.
// Generators B(b, c) = [[b, c], [c, -b]] with b, c symmetric; block-Gauss
// factors N = [[I, 0], [n1, I]], A = diag(h, h^-1) with n1 symmetric. The
// reduced equation is (h'h^-1)' = (c h^-1)^2.
//
// The Siegel upper half space D(J; K) consists of complex points [U],
// U in M_{2n,n}(C), with U* J U > 0 and U^T K U = 0; complex arithmetic is
// confined to those points and the kernel Delta.

#include <span>

#include "bratu/bdi_geometry.hpp"
#include "bratu/trajectory.hpp"

namespace bratu {

Matrix symplectic_form(Index n);       // K
CMatrix ci_hermitian_form(Index n);    // J = iK

class GeneratorCI {
 public:
  /// b and c must be n x n and symmetric to 1e-13 * max(1, ||.||); both are
  /// then symmetrized exactly.
  static GeneratorCI make(const Matrix& b, const Matrix& c);
  static GeneratorCI zero(Index n);

  Index n() const noexcept { return b_.rows(); }
  const Matrix& b() const noexcept { return b_; }
  const Matrix& c() const noexcept { return c_; }

  /// B = [[b, c], [c, -b]]; symmetric with K B K = B (equivalently J B J = -B).
  Matrix embed() const;
  GeneratorCI scaled(double t) const;

 private:
  GeneratorCI(Matrix b, Matrix c) : b_(std::move(b)), c_(std::move(c)) {}

  Matrix b_;
  Matrix c_;
};

class OmegaPointCI {
 public:
  /// Requires G SPD of size 2n and ||G K G^T - K|| <= 1e-10 * max(1, ||G||^2).
  static OmegaPointCI make(const Matrix& g);

  Index n() const noexcept { return g_.size() / 2; }
  const Matrix& matrix() const noexcept { return g_.matrix(); }

 private:
  explicit OmegaPointCI(SpdMatrix g) : g_(std::move(g)) {}

  SpdMatrix g_;
};

class GaussFactorsCI {
 public:
  /// Requires h SPD and ||n1 - n1^T|| <= 1e-10 * max(1, ||n1||).
  static GaussFactorsCI make(const Matrix& h, const Matrix& n1);

  Index n() const noexcept { return h_.size(); }
  const SpdMatrix& h() const noexcept { return h_; }
  const Matrix& n1() const noexcept { return n1_; }

  Matrix unipotent() const;  // [[I, 0], [n1, I]]
  Matrix diagonal() const;   // diag(h, h^-1)

 private:
  GaussFactorsCI(SpdMatrix h, Matrix n1) : h_(std::move(h)), n1_(std::move(n1)) {}

  SpdMatrix h_;
  Matrix n1_;
};

OmegaPointCI exp_trajectory_ci(const GeneratorCI& gen, double s);

/// h = G11, n1 = G21 h^-1. Throws ConsistencyError if h is not SPD or the
/// reconstruction misses G by more than 1e-11 * max(1, ||G||).
GaussFactorsCI block_gauss_ci(const OmegaPointCI& g);
OmegaPointCI gauss_compose_ci(const GaussFactorsCI& f);

struct GaussJetCI {
  Matrix g, dg;
  Matrix h, h_inv, n1;
  Matrix dh, ddh, dn1;
};
/// Factors and derivatives along exp(sB) from G' = BG, G'' = B^2 G;
/// n1' = ((BG)21 - n1 h') h^-1.
GaussJetCI gauss_jet_ci(const GeneratorCI& gen, double s);

/// h(s) = [exp(sB)]11 with column "ci": ||(h'h^-1)' - (c h^-1)^2|| from
/// analytic derivatives.
Trajectory bratu_ci_solution(const GeneratorCI& gen, std::span<const double> grid);

struct LagrangianCI {
  double total = 0.0;      // 1/2 tr((G'G^-1)^2)
  double kinetic_h = 0.0;  // tr((h'h^-1)^2)
  double cross = 0.0;      // tr(h n1'^T h n1')

  double identity_gap() const { return total - (kinetic_h + cross); }
};
LagrangianCI lagrangian_ci_identity(const GeneratorCI& gen, double s);

/// Projective point of D(J; K). The canonical representative has lower block
/// I_n; it exists when the lower block has condition number <= 1e12.
class DomainPointCI {
 public:
  static DomainPointCI make(const CMatrix& u, Index n);

  Index n() const noexcept { return n_; }
  const CMatrix& representative() const noexcept { return raw_; }
  bool canonical() const noexcept { return canonical_; }
  const CMatrix& normalized() const noexcept { return canonical_ ? normalized_ : raw_; }

 private:
  DomainPointCI(CMatrix raw, Index n);

  CMatrix raw_;
  CMatrix normalized_;
  Index n_;
  bool canonical_ = false;
};

/// Both membership conditions: U* J U positive definite and U^T K U = 0, each
/// evaluated on the canonical representative.
struct CiMembership {
  double hermitian_min_eigenvalue = 0.0;
  double lagrangian_gap = 0.0;  // ||U^T K U||
  bool in_domain = false;       // min eigenvalue > 0 and gap <= 1e-10
};
CiMembership ci_membership(const DomainPointCI& u);

CMatrix ci_basepoint(Index n);  // U0 = [iI; I]
CMatrix ci_shilov_point(Index n);  // W = [0; I]

/// Delta(u1, u2) = (U1 G1^-1)* J (U2 G2^-1) with G_j = W^T U_j. Throws
/// DomainError for singular normalizers (condition number above 1e12).
CMatrix delta_ci(const DomainPointCI& u1, const DomainPointCI& u2);

/// F(G) = [iI - G2; h] for the first block column [h; G2] of G.
DomainPointCI f_map_ci(const OmegaPointCI& g);
SpdMatrix pi_map_ci(const OmegaPointCI& g);

/// g . G = g^-T G g^-1 and g . [U] = [g U] for g in Sp(n, R).
OmegaPointCI act_ci(const Matrix& g, const OmegaPointCI& point);
DomainPointCI act_ci(const Matrix& g, const DomainPointCI& u);
/// ||g K g^T - K||.
double symplectic_group_gap(const Matrix& g);

/// Delta(e^{sB} u0, e^{sB} u0)^-1 as a complex matrix (real up to rounding).
CMatrix prop_ci_h(const GeneratorCI& gen, double s);

/// h(s) = Re Delta(e^{sB} u0, e^{sB} u0)^-1, which solves
/// (h'h^-1)' = (c h^-1)^2. Columns:
///   "ci_fd"      residual with finite-difference derivatives
///   "half_tilde" ||h - 1/2 [exp(-2sB)]11||
///   "imag"       max |Im Delta^-1|
Trajectory prop_ci_solution(const GeneratorCI& gen, std::span<const double> grid);

}  // namespace bratu
