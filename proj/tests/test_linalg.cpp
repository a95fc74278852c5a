#include <cmath>

#include <doctest.h>

#include "conewalk/errors.hpp"
#include "conewalk/linalg.hpp"
#include "support/generators.hpp"

using namespace conewalk;
using conewalk::testing::random_cone;
using conewalk::testing::random_hermitian;

namespace {

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("structure parameters derive rho and alpha") {
  const StructureParams p(2, 1, 5.0);
  CHECK(p.rho() == 2.5);
  CHECK(p.alpha() == 2.0);
  CHECK(p.hermitian_dim() == 3);
  CHECK(StructureParams(3, 2, 9.0).hermitian_dim() == 9);
  CHECK(StructureParams(1, 1, 0.6).rho() == 1.5);

  CHECK_THROWS_AS(StructureParams(2, 1, 1.5), DomainError);  // mu = rho - 1
  CHECK_THROWS_AS(StructureParams(2, 4, 50.0), DomainError);
  CHECK_THROWS_AS(StructureParams(0, 1, 5.0), DomainError);
  CHECK_NOTHROW(StructureParams(2, 1, 1.5001));
}

TEST_CASE("frob_inner") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(frob_inner(i2, i2) == doctest::Approx(2.0));

  const Matrix x = diag2(Complex(0, 1), 0.0);
  CHECK(frob_inner(x, x) == doctest::Approx(1.0));

  CHECK_THROWS_AS(frob_inner(i2, Matrix::Identity(3, 3)), DimensionError);

  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = gaussian_matrix(3, 2, 2, 1.0, rng);
    const Matrix b = gaussian_matrix(3, 2, 2, 1.0, rng);
    CHECK(frob_inner(a, a) >= 0.0);
    CHECK(frob_inner(a, b) == doctest::Approx(frob_inner(b, a)).epsilon(1e-12));
    CHECK(frob_inner(a, a) == doctest::Approx(hs_norm(a) * hs_norm(a)).epsilon(1e-12));
  }
}

TEST_CASE("hermitian, cone and ball validation") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix(m, 1), DomainError);
  CHECK_THROWS_AS(HermitianMatrix(Matrix::Zero(2, 3), 1), DimensionError);
  CHECK_THROWS_AS(HermitianMatrix(diag2(Complex(0, 1), 0.0), 2), DomainError);

  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = Complex(0, 1);
  h(1, 0) = Complex(0, -1);
  CHECK_NOTHROW(HermitianMatrix(h, 2));
  CHECK_THROWS_AS(HermitianMatrix(h, 1), DomainError);

  // Slightly negative eigenvalue within tolerance is clamped.
  const ConeMatrix c(diag2(1.0, -1e-13), 1);
  CHECK(c.eigenvalues()(1) == 0.0);
  CHECK(c.matrix()(1, 1).real() == 0.0);
  CHECK_THROWS_AS(ConeMatrix(diag2(1.0, -1e-3), 1), DomainError);

  CHECK_NOTHROW(BallMatrix(diag2(0.5, -0.9), 1));
  CHECK_THROWS_AS(BallMatrix(diag2(0.5, 1.0), 1), DomainError);
}

TEST_CASE("spectral decomposition") {
  const SpectralDecomposition id = spectral_decomp(HermitianMatrix::identity(3, 2));
  CHECK(id.eigenvalues.isApprox(RealVector::Ones(3)));

  const SpectralDecomposition sd = spectral_decomp(HermitianMatrix(diag2(1.0, 3.0), 1));
  CHECK(sd.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(sd.eigenvalues(1) == doctest::Approx(1.0));

  Rng rng(11);
  for (int d : {1, 2}) {
    for (int trial = 0; trial < 100; ++trial) {
      const HermitianMatrix a = random_hermitian(4, d, rng);
      const SpectralDecomposition s = spectral_decomp(a);
      const Matrix rebuilt = s.vectors * s.eigenvalues.cast<Complex>().asDiagonal() * s.vectors.adjoint();
      CHECK((rebuilt - a.matrix()).norm() <= 1e-10);
      for (int i = 0; i + 1 < 4; ++i) CHECK(s.eigenvalues(i) >= s.eigenvalues(i + 1));
    }
  }
}

TEST_CASE("psd_sqrt") {
  const ConeMatrix r = psd_sqrt(ConeMatrix(diag2(4.0, 9.0), 1));
  CHECK((r.matrix() - diag2(2.0, 3.0)).norm() <= 1e-12);
  CHECK(psd_sqrt(ConeMatrix::zero(3, 2)).matrix().norm() == 0.0);

  Rng rng(3);
  for (int d : {1, 2}) {
    for (int trial = 0; trial < 200; ++trial) {
      const ConeMatrix a = random_cone(3, d, rng);
      const Matrix s = psd_sqrt(a).matrix();
      CHECK((s * s - a.matrix()).norm() <= 1e-10 * (1.0 + a.matrix().norm()));
      CHECK(eigenvalues_of(HermitianMatrix(s, d)).minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("phi_p") {
  Rng rng(5);
  const ConeMatrix sigma = random_cone(2, 2, rng);
  const ConeMatrix back = phi_p(RectMatrix(embed_top(sigma.matrix(), 5), 2));
  CHECK((back.matrix() - sigma.matrix()).norm() <= 1e-10);

  Matrix col(4, 1);
  col << 1.0, 2.0, -2.0, 4.0;
  CHECK(phi_p(RectMatrix(col, 1)).matrix()(0, 0).real() == doctest::Approx(5.0));

  for (int d : {1, 2}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix x = gaussian_matrix(5, 3, d, 1.0, rng);
      const Matrix u = haar_unitary(5, d, rng);
      const Matrix lhs = phi_p(RectMatrix(u * x, d)).matrix();
      const Matrix rhs = phi_p(RectMatrix(x, d)).matrix();
      CHECK((lhs - rhs).norm() <= 1e-10);
    }
  }
}

TEST_CASE("delta_power") {
  CHECK(delta_power(HermitianMatrix::identity(3, 1), 2.7) == doctest::Approx(1.0));
  CHECK(delta_power(HermitianMatrix(diag2(2.0, 8.0), 1), 0.5) == doctest::Approx(4.0));
  CHECK(delta_power(HermitianMatrix(diag2(2.0, -3.0), 1), 1.0) == doctest::Approx(-6.0));
  CHECK_THROWS_AS(delta_power(HermitianMatrix(diag2(2.0, -3.0), 1), 0.5), DomainError);
  CHECK_THROWS_AS(delta_power(HermitianMatrix(diag2(2.0, 0.0), 1), -1.0), DomainError);

  Rng rng(9);
  const ConeMatrix a = random_cone(3, 2, rng);
  const double det = a.eigenvalues().prod();
  CHECK(delta_power(a.hermitian(), 1.0) == doctest::Approx(det).epsilon(1e-12));
  CHECK(delta_power(a.hermitian(), 1.5) == doctest::Approx(std::pow(det, 1.5)).epsilon(1e-12));
}

TEST_CASE("haar_unitary") {
  Rng rng(2024);
  int plus = 0;
  const int n1 = 20000;
  for (int i = 0; i < n1; ++i) {
    const Matrix u = haar_unitary(1, 1, rng);
    CHECK(std::abs(std::abs(u(0, 0).real()) - 1.0) <= 1e-15);
    plus += u(0, 0).real() > 0 ? 1 : 0;
  }
  // binomial(20000, 1/2): sd ~ 71
  CHECK(std::abs(plus - n1 / 2) <= 4 * 71);

  for (int d : {1, 2}) {
    for (int i = 0; i < 1000; ++i) {
      const Matrix u = haar_unitary(4, d, rng);
      CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() <= 1e-10);
    }
  }

  // Haar symmetry: E[u_11] = 0 and E|u_11|^2 = 1/p.
  for (int d : {1, 2}) {
    const int p = 3;
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = haar_unitary(p, d, rng)(0, 0).real();
      s += v;
      s2 += v * v;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean) <= 3 * se);
  }
  for (int d : {1, 2}) {
    const int p = 3;
    const int n = 50000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::norm(haar_unitary(p, d, rng)(1, 2));
    CHECK(s / n == doctest::Approx(1.0 / p).epsilon(0.02));
  }
}
