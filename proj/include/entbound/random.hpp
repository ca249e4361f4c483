#pragma once

// Seeded Haar-measure samplers. Everything draws from an explicit engine so
// outputs are reproducible per seed.

#include <cstdint>
#include <random>

#include "entbound/tensor_core.hpp"

namespace entbound {

using Rng = std::mt19937_64;

/// Independent seed for sample `index` of stream `stream` (splitmix64 mix).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream * 0x100000001b3ULL + index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Entries i.i.d. standard complex normal, E|z|^2 = 1.
inline ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

inline ComplexVector haar_unit_vector(Index d, Rng& rng) {
  ComplexVector v = gaussian_matrix(d, 1, rng).col(0);
  return v / v.norm();
}

/// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases
/// folded back into Q (Mezzadri's correction).
inline ComplexMatrix haar_unitary(Index d, Rng& rng) {
  const ComplexMatrix z = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// rows x cols matrix with orthonormal columns (cols <= rows).
inline ComplexMatrix haar_isometry(Index rows, Index cols, Rng& rng) {
  return haar_unitary(rows, rng).leftCols(cols);
}

/// GUE-like random Hermitian matrix.
inline ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace entbound
