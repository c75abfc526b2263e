#include <gtest/gtest.h>

#include <bratu/ci.hpp>
#include <bratu/errors.hpp>
#include <bratu/oracle.hpp>
#include <bratu/sampling.hpp>

#include "oracles.hpp"

using namespace bratu;

namespace {

GeneratorCI scalar_ci() { return GeneratorCI::make(Matrix::Zero(1, 1), Matrix::Ones(1, 1)); }

}  // namespace

TEST(CiGenerator, Structure) {
  const auto gen = random_generator_ci(3, 2);
  const Matrix big = gen.embed();
  const Matrix k = symplectic_form(3);
  EXPECT_EQ(max_abs(big - big.transpose()), 0.0);
  EXPECT_EQ(max_abs(k * big * k - big), 0.0);
  const CMatrix j = ci_hermitian_form(3);
  EXPECT_LE(max_abs(j * big.cast<Complex>() * j + big.cast<Complex>()), 0.0);
  Matrix c(2, 2);
  c << 0, 1, 0, 0;
  EXPECT_THROW(GeneratorCI::make(Matrix::Zero(2, 2), c), ValidationError);
  EXPECT_THROW(GeneratorCI::make(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), DimensionError);
}

TEST(CiOmega, SymplecticMembership) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = random_generator_ci(1 + seed % 6, seed);
    for (double s : {-1.0, 0.5, 2.0}) {
      EXPECT_LE(symplectic_group_gap(exp_trajectory_ci(gen, s).matrix()), 1e-10) << seed;
    }
  }
  EXPECT_THROW(OmegaPointCI::make(2.0 * Matrix::Identity(2, 2)), ValidationError);
  EXPECT_THROW(OmegaPointCI::make(Matrix::Identity(3, 3)), DimensionError);
}

TEST(CiGauss, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto point = random_omega_ci(1 + seed % 6, seed);
    const auto f = block_gauss_ci(point);
    EXPECT_LE(test::rel(max_abs(gauss_compose_ci(f).matrix() - point.matrix()), point.matrix()), 1e-11);
    EXPECT_LE(max_abs(f.n1() - f.n1().transpose()), 1e-10 * std::max(1.0, max_abs(f.n1())));
  }
  Matrix n1(2, 2);
  n1 << 0, 1, 0, 0;
  EXPECT_THROW(GaussFactorsCI::make(Matrix::Identity(2, 2), n1), ValidationError);
}

TEST(CiJet, FiniteDifferenceCheck) {
  const auto gen = random_generator_ci(3, 5);
  const auto jet = gauss_jet_ci(gen, 0.3);
  auto n1 = [&](double t) { return gauss_jet_ci(gen, t).n1; };
  auto h = [&](double t) { return gauss_jet_ci(gen, t).h; };
  EXPECT_LE(max_abs(jet.dn1 - oracle::num_diff(n1, 0.3, 1)), 1e-9);
  EXPECT_LE(max_abs(jet.ddh - oracle::num_diff(h, 0.3, 2)), 1e-8);
}

TEST(CiBratu, ScalarCosh) {
  // n = 1, b = 0, c = 1: h~ = cosh(s)
  const auto traj = bratu_ci_solution(scalar_ci(), uniform_grid(0.0, 1.0, 11));
  for (const auto& sample : traj.samples) EXPECT_NEAR(sample.h(0, 0), std::cosh(sample.s), 1e-13);
  EXPECT_LE(traj.max_residual("ci"), 1e-13);
}

TEST(CiBratu, Seeded) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto traj = bratu_ci_solution(random_generator_ci(1 + seed % 6, seed), uniform_grid(0.0, 1.0, 11));
    EXPECT_LE(traj.max_residual(), 1e-9) << seed;
  }
}

TEST(CiLagrangian, Identity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto gen = random_generator_ci(1 + seed % 5, seed);
    const Matrix big = gen.embed();
    for (double s : {-1.0, 0.0, 0.8}) {
      const auto l = lagrangian_ci_identity(gen, s);
      EXPECT_LE(std::abs(l.identity_gap()), 1e-9);
      EXPECT_LE(std::abs(l.total - 0.5 * (big * big).trace()), 1e-10);
    }
  }
}

TEST(CiDomain, BasepointAndKernel) {
  const auto u0 = DomainPointCI::make(ci_basepoint(2), 2);
  const auto m = ci_membership(u0);
  EXPECT_TRUE(m.in_domain);
  EXPECT_NEAR(m.hermitian_min_eigenvalue, 2.0, 1e-15);
  EXPECT_LE(max_abs(delta_ci(u0, u0) - 2.0 * CMatrix::Identity(2, 2)), 1e-15);
  const auto w = DomainPointCI::make(ci_shilov_point(2), 2);
  EXPECT_FALSE(ci_membership(w).in_domain);
  CMatrix not_lagrangian = ci_basepoint(2);
  not_lagrangian(0, 1) = Complex(0.0, 0.5);
  not_lagrangian(1, 0) = Complex(0.3, 0.0);
  EXPECT_FALSE(ci_membership(DomainPointCI::make(not_lagrangian, 2)).in_domain);
}

TEST(CiDomain, HalfPiAndHermiticity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index n = 1 + seed % 5;
    const auto point = random_omega_ci(n, seed);
    const auto u = f_map_ci(point);
    EXPECT_TRUE(ci_membership(u).in_domain);
    const CMatrix k = delta_ci(u, u);
    EXPECT_LE(max_abs(k - k.adjoint()), 1e-12 * std::max(1.0, max_abs(k)));
    Eigen::LLT<CMatrix> llt(0.5 * (k + k.adjoint()));
    EXPECT_EQ(llt.info(), Eigen::Success);
    const Matrix h = pi_map_ci(point).matrix();
    EXPECT_LE(test::rel(max_abs(2.0 * inverse(h).cast<Complex>() - k), k.real()), 1e-10);
  }
}

TEST(CiDomain, Equivariance) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Index n = 1 + k % 4;
    const Matrix g = expm(0.5 * random_algebra_ci(n, rng));
    EXPECT_LE(symplectic_group_gap(g), 1e-12);
    const auto point = random_omega_ci(n, 60 + k);
    const auto lhs = f_map_ci(act_ci(g, point));
    const auto rhs = act_ci(g, f_map_ci(point));
    EXPECT_LE(max_abs(lhs.normalized() - rhs.normalized()) / std::max(1.0, max_abs(lhs.normalized())), 1e-10);
  }
}

TEST(CiProp, ScalarHalfCosh) {
  for (double s : {0.0, 0.3, 1.0}) {
    const CMatrix h = prop_ci_h(scalar_ci(), s);
    EXPECT_NEAR(h(0, 0).real(), 0.5 * std::cosh(2.0 * s), 1e-10);
    EXPECT_LE(std::abs(h(0, 0).imag()), 1e-12);
    // (h'h^-1)' = 4 sech^2(2s) = h^-2
    const double hv = 0.5 * std::cosh(2.0 * s);
    EXPECT_NEAR(4.0 / (std::cosh(2.0 * s) * std::cosh(2.0 * s)), 1.0 / (hv * hv), 1e-14);
  }
  EXPECT_LE(max_abs(prop_ci_h(GeneratorCI::zero(2), 0.7) - 0.5 * CMatrix::Identity(2, 2)), 1e-15);
}

TEST(CiProp, Seeded) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto traj = prop_ci_solution(random_generator_ci(1 + seed % 4, seed), uniform_grid(0.0, 1.0, 6));
    EXPECT_LE(traj.max_residual("ci_fd"), 1e-8) << seed;
    EXPECT_LE(traj.max_residual("half_tilde"), 1e-10) << seed;
    EXPECT_LE(traj.max_residual("imag"), 1e-10) << seed;
  }
}
