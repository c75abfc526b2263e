#include "bratu/sampling.hpp"

namespace bratu {

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Matrix Rng::matrix(Index rows, Index cols, double scale) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = uniform(scale);
  }
  return m;
}

GeneratorBDI random_generator_bdi(Index n, Index r, std::uint64_t seed, double scale) {
  Rng rng(seed);
  const Matrix b = rng.matrix(n, n, scale);
  const Matrix a = rng.matrix(n, r, scale);
  const Matrix c = rng.matrix(n, n, scale);
  return GeneratorBDI::make(symmetric_part(b), a, skew_part(c));
}

GeneratorCI random_generator_ci(Index n, std::uint64_t seed, double scale) {
  Rng rng(seed);
  const Matrix b = rng.matrix(n, n, scale);
  const Matrix c = rng.matrix(n, n, scale);
  return GeneratorCI::make(symmetric_part(b), symmetric_part(c));
}

Matrix random_algebra_bdi(Index n, Index r, Rng& rng, double scale) {
  const Matrix j = omega_involution(n, r);
  const Matrix y = rng.matrix(2 * n + r, 2 * n + r, scale);
  return 0.5 * (y - j * y.transpose() * j);
}

Matrix random_algebra_ci(Index n, Rng& rng, double scale) {
  const Matrix k = symplectic_form(n);
  const Matrix y = rng.matrix(2 * n, 2 * n, scale);
  return 0.5 * (y + k * y.transpose() * k);
}

Matrix random_block_lower(Index n, Index r, bool strict, Rng& rng, double scale) {
  const Index offsets[] = {0, n, n + r, 2 * n + r};
  Matrix m = rng.matrix(2 * n + r, 2 * n + r, scale);
  for (int bi = 0; bi < 3; ++bi) {
    for (int bj = 0; bj < 3; ++bj) {
      if (bj > bi || (strict && bj == bi)) {
        m.block(offsets[bi], offsets[bj], offsets[bi + 1] - offsets[bi], offsets[bj + 1] - offsets[bj])
            .setZero();
      }
    }
  }
  return m;
}

OmegaPointBDI random_omega_bdi(Index n, Index r, std::uint64_t seed, double scale) {
  return exp_trajectory(random_generator_bdi(n, r, seed, scale), 1.0);
}

OmegaPointCI random_omega_ci(Index n, std::uint64_t seed, double scale) {
  return exp_trajectory_ci(random_generator_ci(n, seed, scale), 1.0);
}

}  // namespace bratu
