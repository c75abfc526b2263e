#include <gtest/gtest.h>

#include <bratu/errors.hpp>
#include <bratu/sampling.hpp>
#include <bratu/variational.hpp>

#include "oracles.hpp"

using namespace bratu;

TEST(Lagrangian, IdentityAndTotal) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = random_generator_bdi(1 + seed % 5, seed % 4, seed);
    const Matrix big = gen.embed();
    const double expected = 0.5 * (big * big).trace();
    for (double s : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
      const auto parts = lagrangian_breakdown(gen, s);
      EXPECT_LE(std::abs(parts.identity_gap()), 1e-9) << seed;
      EXPECT_LE(std::abs(parts.total - expected), 1e-10) << seed;
    }
  }
}

TEST(Lagrangian, TwistGeneratorIsSkew) {
  const auto gen = random_generator_bdi(3, 2, 4);
  const Matrix m = twist_generator(gauss_jet(gen, 0.5));
  EXPECT_LE(max_abs(m + m.transpose()), 1e-12);
}

TEST(TraceOrthogonality, ExactZero) {
  Rng rng(99);
  for (int k = 0; k < 1000; ++k) {
    const Index n = 1 + k % 4;
    const Index r = k % 3;
    const Matrix x1 = random_block_lower(n, r, false, rng);
    const Matrix x2 = random_block_lower(n, r, true, rng);
    EXPECT_EQ(trace_orthogonality(x1, x2, n, r), 0.0);
    // dense oracle
    double dense = 0.0;
    for (Index i = 0; i < x1.rows(); ++i) {
      for (Index j = 0; j < x1.cols(); ++j) dense += x1(i, j) * x2(j, i);
    }
    EXPECT_EQ(dense, 0.0);
  }
}

TEST(TraceOrthogonality, Patterns) {
  Matrix x1 = Matrix::Identity(5, 5);
  EXPECT_EQ(trace_orthogonality(x1, Matrix::Zero(5, 5), 2, 1), 0.0);
  Rng rng(1);
  const Matrix lower = random_block_lower(2, 1, false, rng);
  const Matrix strict = random_block_lower(2, 1, true, rng);
  EXPECT_EQ(trace_orthogonality(strict, strict, 2, 1), 0.0);
  EXPECT_THROW(trace_orthogonality(lower, lower, 2, 1), ValidationError);
  EXPECT_THROW(trace_orthogonality(lower.transpose(), strict, 2, 1), ValidationError);
}

TEST(Geodesic, FiniteDifferenceResidual) {
  EXPECT_EQ(geodesic_residual(GeneratorBDI::zero(2, 1), uniform_grid(0.0, 1.0, 11)), 0.0);
  const auto gen = random_generator_bdi(3, 2, 6);
  EXPECT_LE(geodesic_residual(gen, uniform_grid(0.0, 1.0, 101)), 1e-8);
  EXPECT_LE(geodesic_residual(gen.scaled(2.0), uniform_grid(0.0, 1.0, 101)), 1e-8);
  EXPECT_THROW(geodesic_residual(gen, uniform_grid(0.0, 1.0, 4)), PreconditionError);
}

TEST(ElSystem, ZeroGenerator) {
  const auto el = el_system_residuals(GeneratorBDI::zero(2, 1), uniform_grid(0.0, 1.0, 5));
  EXPECT_EQ(el.max(), 0.0);
}

TEST(ElSystem, FixedTwist) {
  Matrix c(2, 2);
  c << 0, 0.3, -0.3, 0;
  Matrix b(2, 2);
  b << 0.2, -0.1, -0.1, 0.4;
  Matrix a(2, 1);
  a << 0.5, -0.7;
  const auto el = el_system_residuals(GeneratorBDI::make(b, a, c), uniform_grid(0.0, 1.0, 21));
  EXPECT_LE(el.max(), 1e-9);
  EXPECT_EQ(el.s.size(), 21u);
}

TEST(ElSystem, SeededIncludingTwist) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = random_generator_bdi(1 + seed % 6, seed % 4, seed);
    EXPECT_LE(el_system_residuals(gen, uniform_grid(-1.0, 1.0, 9)).max(), 1e-9) << seed;
  }
}

TEST(ElSystem, AgreesWithBratuForm) {
  const auto base = random_generator_bdi(3, 2, 12);
  const auto gen = GeneratorBDI::make(base.b(), base.a(), Matrix::Zero(3, 3));
  for (double s : {0.2, 0.9}) {
    const auto jet = gauss_jet(gen, s);
    const Matrix lhs = log_derivative_rate(jet.h_inv, jet.dh, jet.ddh);
    const Matrix el = jet.h * jet.dn1 * jet.dn1.transpose();
    const Matrix bratu = gen.a() * gen.a().transpose() * jet.h_inv;
    EXPECT_LE(max_abs(el - bratu), 1e-9);
    EXPECT_LE(max_abs(lhs - bratu), 1e-9);
  }
}

TEST(Conserved, RecoversGenerator) {
  const auto zero_twist = GeneratorBDI::make(random_generator_bdi(2, 1, 3).b(), Matrix::Zero(2, 1), Matrix::Zero(2, 2));
  const auto trivial = conserved_quantities(zero_twist, uniform_grid(0.0, 1.0, 11));
  EXPECT_LE(max_abs(trivial.a_tilde), 1e-14);
  EXPECT_LE(max_abs(trivial.c_tilde), 1e-14);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto gen = random_generator_bdi(1 + seed % 5, seed % 4, seed);
    const auto q = conserved_quantities(gen, uniform_grid(0.0, 2.0, 201));
    EXPECT_LE(q.deviation, 1e-9) << seed;
    EXPECT_LE(q.drift, 1e-9) << seed;
    EXPECT_LE(max_abs(q.a_tilde - gen.a()), 1e-9);
    EXPECT_LE(max_abs(q.c_tilde - gen.c()), 1e-9);
  }
}
