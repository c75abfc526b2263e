#pragma once

// Deterministic random instances. Draws come from mt19937_64 with 53-bit
// mantissa extraction so results are identical across standard libraries.

#include <cstdint>
#include <random>

#include "bratu/bdi_geometry.hpp"
#include "bratu/ci.hpp"

namespace bratu {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit();
  /// Uniform on [-scale, scale).
  double uniform(double scale = 1.0) { return scale * (2.0 * unit() - 1.0); }
  Matrix matrix(Index rows, Index cols, double scale = 1.0);

 private:
  std::mt19937_64 engine_;
};

GeneratorBDI random_generator_bdi(Index n, Index r, std::uint64_t seed, double scale = 1.0);
GeneratorCI random_generator_ci(Index n, std::uint64_t seed, double scale = 1.0);

/// Random element X of the Lie algebra of O(J_omega): X^T J + J X = 0.
Matrix random_algebra_bdi(Index n, Index r, Rng& rng, double scale = 1.0);
/// Random element X of sp(n, R): X^T K + K X = 0.
Matrix random_algebra_ci(Index n, Rng& rng, double scale = 1.0);

/// Random block lower triangular matrix with block sizes (n, r, n); the
/// diagonal blocks are zero when strict is set.
Matrix random_block_lower(Index n, Index r, bool strict, Rng& rng, double scale = 1.0);

/// exp(sB) for a random generator; a generic point of Omega.
OmegaPointBDI random_omega_bdi(Index n, Index r, std::uint64_t seed, double scale = 1.0);
OmegaPointCI random_omega_ci(Index n, std::uint64_t seed, double scale = 1.0);

}  // namespace bratu
