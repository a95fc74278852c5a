#pragma once

// Matrix primitives over R (d = 1) and C (d = 2).
//
// All matrices are stored as complex Eigen matrices; for d = 1 the imaginary
// parts are zero and every generator keeps them zero. The value types below
// validate their invariants at construction and are immutable afterwards.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "conewalk/random.hpp"

namespace conewalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance for Hermiticity.
inline constexpr double kHermitianTol = 1e-12;
/// Relative tolerance below which negative eigenvalues are clamped to zero.
inline constexpr double kPsdTol = 1e-10;

/// Rank q, algebra dimension d and index mu of a Bessel structure on the cone.
/// rho and alpha are always derived, never stored.
class StructureParams {
 public:
  /// Throws DomainError unless q >= 1, d in {1, 2} and mu > rho - 1.
  StructureParams(int q, int d, double mu);

  int q() const noexcept { return q_; }
  int d() const noexcept { return d_; }
  double mu() const noexcept { return mu_; }
  double rho() const noexcept { return d_ * (q_ - 0.5) + 1.0; }
  double alpha() const noexcept { return 2.0 / d_; }
  /// Real dimension d*q^2 of the square matrices M_q.
  int real_dim() const noexcept { return d_ * q_ * q_; }
  /// Real dimension q + d q (q-1)/2 of the Hermitian matrices H_q.
  int hermitian_dim() const noexcept { return q_ + d_ * q_ * (q_ - 1) / 2; }

  /// Same (q, d) with a different index.
  StructureParams with_mu(double mu) const { return StructureParams(q_, d_, mu); }

  bool operator==(const StructureParams&) const = default;

 private:
  int q_;
  int d_;
  double mu_;
};

/// Throws DomainError unless d is a supported algebra dimension.
void require_supported_d(int d);

class HermitianMatrix {
 public:
  /// Symmetrizes m after checking ||m - m*|| <= 1e-12 (1 + ||m||); for d = 1
  /// the imaginary parts must vanish to the same tolerance.
  HermitianMatrix(const Matrix& m, int d);

  static HermitianMatrix zero(int q, int d);
  static HermitianMatrix identity(int q, int d);
  static HermitianMatrix diagonal(const RealVector& diag, int d);

  const Matrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  int d() const noexcept { return d_; }
  double trace() const { return m_.trace().real(); }

 private:
  Matrix m_;
  int d_;
};

/// Element of the cone of positive semidefinite matrices.
class ConeMatrix {
 public:
  /// Eigenvalues >= -1e-10 (1 + ||x||) are accepted and clamped to 0;
  /// anything more negative is a DomainError.
  explicit ConeMatrix(const HermitianMatrix& h);
  ConeMatrix(const Matrix& m, int d) : ConeMatrix(HermitianMatrix(m, d)) {}

  static ConeMatrix zero(int q, int d) { return ConeMatrix(HermitianMatrix::zero(q, d)); }
  static ConeMatrix identity(int q, int d) { return ConeMatrix(HermitianMatrix::identity(q, d)); }
  static ConeMatrix diagonal(const RealVector& diag, int d) {
    return ConeMatrix(HermitianMatrix::diagonal(diag, d));
  }

  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const Matrix& matrix() const noexcept { return h_.matrix(); }
  /// Eigenvalues in non-increasing order.
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
  int dim() const noexcept { return h_.dim(); }
  int d() const noexcept { return h_.d(); }
  double trace() const { return h_.trace(); }

 private:
  HermitianMatrix h_;
  RealVector eigenvalues_;
};

/// Element of M_{p,q}.
class RectMatrix {
 public:
  RectMatrix(const Matrix& m, int d);

  const Matrix& matrix() const noexcept { return m_; }
  int rows() const noexcept { return static_cast<int>(m_.rows()); }
  int cols() const noexcept { return static_cast<int>(m_.cols()); }
  int d() const noexcept { return d_; }

 private:
  Matrix m_;
  int d_;
};

/// Element of the open matrix ball D_q = {v : v*v < I}.
class BallMatrix {
 public:
  /// Requires the largest eigenvalue of v*v to be below 1 - 1e-14.
  BallMatrix(const Matrix& v, int d);

  const Matrix& matrix() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(v_.rows()); }
  int d() const noexcept { return d_; }

 private:
  Matrix v_;
  int d_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  ///< non-increasing
  Matrix vectors;          ///< unitary, columns are eigenvectors
};

/// a = vectors * diag(eigenvalues) * vectors^*.
SpectralDecomposition spectral_decomp(const HermitianMatrix& a);

/// Eigenvalues only, non-increasing.
RealVector eigenvalues_of(const HermitianMatrix& a);

/// <x, y> = Re tr(x^* y). Throws DimensionError on shape mismatch.
double frob_inner(const Matrix& x, const Matrix& y);

/// Hilbert-Schmidt norm <x, x>^{1/2}.
double hs_norm(const Matrix& x);

/// Largest singular value.
double spectral_norm(const Matrix& x);

/// Unique positive semidefinite square root.
ConeMatrix psd_sqrt(const ConeMatrix& a);

/// phi_p(x) = (x^* x)^{1/2}.
ConeMatrix phi_p(const RectMatrix& x);

/// Delta(x)^s = exp(s * sum log eigenvalues). For nonnegative integer s the
/// determinant power is returned for any Hermitian x; otherwise x must be
/// positive definite (DomainError).
double delta_power(const HermitianMatrix& x, double s);

/// Matrix with independent centred Gaussian real coordinates of standard
/// deviation `sigma` (real and imaginary parts for d = 2).
Matrix gaussian_matrix(int rows, int cols, int d, double sigma, Rng& rng);

/// Haar-distributed element of U_p(F): QR of a Gaussian matrix with the
/// phases of diag(R) moved into Q.
Matrix haar_unitary(int p, int d, Rng& rng);

/// iota(sigma): sigma stacked over a (p - q) x q zero block.
Matrix embed_top(const Matrix& sigma, int p);

}  // namespace conewalk
