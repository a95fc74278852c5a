#pragma once

// Hand-rolled random generators for property tests.

#include <cmath>
#include <random>

#include "conewalk/linalg.hpp"

namespace conewalk::testing {

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline HermitianMatrix random_hermitian(int q, int d, Rng& rng, double scale = 1.0) {
  const Matrix g = gaussian_matrix(q, q, d, scale, rng);
  return HermitianMatrix(0.5 * (g + g.adjoint()), d);
}

/// b b^* for a Gaussian b; full rank almost surely.
inline ConeMatrix random_cone(int q, int d, Rng& rng, double scale = 1.0) {
  const Matrix b = gaussian_matrix(q, q, d, scale, rng);
  const Matrix a = b * b.adjoint();
  return ConeMatrix(0.5 * (a + a.adjoint()), d);
}

/// u diag(xi) u^* with prescribed eigenvalues and Haar u.
inline ConeMatrix cone_with_spectrum(const RealVector& xi, int d, Rng& rng) {
  const Matrix u = haar_unitary(static_cast<int>(xi.size()), d, rng);
  const Matrix a = u * xi.cast<Complex>().asDiagonal() * u.adjoint();
  return ConeMatrix(0.5 * (a + a.adjoint()), d);
}

/// Element of the open ball r D_q: singular values uniform in [0, r * 0.999).
inline Matrix random_ball(int q, int d, Rng& rng, double r = 1.0) {
  const Matrix u = haar_unitary(q, d, rng);
  const Matrix w = haar_unitary(q, d, rng);
  RealVector s(q);
  for (int i = 0; i < q; ++i) s(i) = uniform(rng, 0.0, 0.999 * r);
  return u * s.cast<Complex>().asDiagonal() * w.adjoint();
}

}  // namespace conewalk::testing
