#include "conewalk/linalg.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "conewalk/errors.hpp"

namespace conewalk {

void require_supported_d(int d) {
  if (d == 4) {
    throw DomainError("quaternionic matrices (d = 4) are not supported");
  }
  if (d != 1 && d != 2) {
    throw DomainError(fmt::format("algebra dimension d must be 1 or 2, got {}", d));
  }
}

StructureParams::StructureParams(int q, int d, double mu) : q_(q), d_(d), mu_(mu) {
  if (q < 1) throw DomainError(fmt::format("rank q must be positive, got {}", q));
  require_supported_d(d);
  if (!std::isfinite(mu) || !(mu > rho() - 1.0)) {
    throw DomainError(fmt::format("index mu = {} must exceed rho - 1 = {} (q = {}, d = {})",
                                  mu, rho() - 1.0, q, d));
  }
}

HermitianMatrix::HermitianMatrix(const Matrix& m, int d) : d_(d) {
  require_supported_d(d);
  if (m.rows() != m.cols()) {
    throw DimensionError(fmt::format("Hermitian matrix must be square, got {}x{}", m.rows(), m.cols()));
  }
  if (!m.allFinite()) throw DomainError("Hermitian matrix has non-finite entries");
  const double scale = 1.0 + m.norm();
  if ((m - m.adjoint()).norm() > kHermitianTol * scale) {
    throw DomainError("matrix is not Hermitian within tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
  if (d == 1) {
    if (m_.imag().norm() > kHermitianTol * scale) {
      throw DomainError("real structure (d = 1) requires real entries");
    }
    m_ = m_.real().cast<Complex>();
  }
}

HermitianMatrix HermitianMatrix::zero(int q, int d) {
  return HermitianMatrix(Matrix::Zero(q, q), d);
}

HermitianMatrix HermitianMatrix::identity(int q, int d) {
  return HermitianMatrix(Matrix::Identity(q, q), d);
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag, int d) {
  return HermitianMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix(), d);
}

SpectralDecomposition spectral_decomp(const HermitianMatrix& a) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  const int n = a.dim();
  SpectralDecomposition out{RealVector(n), Matrix(n, n)};
  // Eigen sorts ascending.
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

RealVector eigenvalues_of(const HermitianMatrix& a) {
  const int n = a.dim();
  if (n == 1) return RealVector::Constant(1, a.matrix()(0, 0).real());
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

ConeMatrix::ConeMatrix(const HermitianMatrix& h) : h_(h) {
  const SpectralDecomposition sd = spectral_decomp(h);
  const double floor = -kPsdTol * (1.0 + h.matrix().norm());
  if (sd.eigenvalues.size() > 0 && sd.eigenvalues.minCoeff() < floor) {
    throw DomainError(fmt::format("matrix is not positive semidefinite (smallest eigenvalue {})",
                                  sd.eigenvalues.minCoeff()));
  }
  eigenvalues_ = sd.eigenvalues.cwiseMax(0.0);
  if (sd.eigenvalues.minCoeff() < 0.0) {
    const Matrix rebuilt = sd.vectors * eigenvalues_.cast<Complex>().asDiagonal() *
                           sd.vectors.adjoint();
    h_ = HermitianMatrix(0.5 * (rebuilt + rebuilt.adjoint()), h.d());
  }
}

RectMatrix::RectMatrix(const Matrix& m, int d) : m_(m), d_(d) {
  require_supported_d(d);
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
  if (d == 1 && m.imag().norm() > 0.0) {
    throw DomainError("real structure (d = 1) requires real entries");
  }
}

BallMatrix::BallMatrix(const Matrix& v, int d) : v_(v), d_(d) {
  require_supported_d(d);
  if (v.rows() != v.cols()) throw DimensionError("ball element must be square");
  if (!v.allFinite()) throw DomainError("ball element has non-finite entries");
  const double top = eigenvalues_of(HermitianMatrix(v.adjoint() * v, d))(0);
  if (!(top < 1.0 - 1e-14)) {
    throw DomainError(fmt::format("matrix is outside the open unit ball (|v|^2 = {})", top));
  }
}

double frob_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError(fmt::format("shape mismatch {}x{} vs {}x{}", x.rows(), x.cols(),
                                     y.rows(), y.cols()));
  }
  // Re tr(x^* y) = sum Re(conj(x_ij) y_ij)
  return (x.conjugate().cwiseProduct(y)).sum().real();
}

double hs_norm(const Matrix& x) { return x.norm(); }

double spectral_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  const Matrix gram = x.adjoint() * x;
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

ConeMatrix psd_sqrt(const ConeMatrix& a) {
  const SpectralDecomposition sd = spectral_decomp(a.hermitian());
  const RealVector roots = sd.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const Matrix r = sd.vectors * roots.cast<Complex>().asDiagonal() * sd.vectors.adjoint();
  return ConeMatrix(0.5 * (r + r.adjoint()), a.d());
}

ConeMatrix phi_p(const RectMatrix& x) {
  const Matrix gram = x.matrix().adjoint() * x.matrix();
  return psd_sqrt(ConeMatrix(0.5 * (gram + gram.adjoint()), x.d()));
}

double delta_power(const HermitianMatrix& x, double s) {
  const RealVector ev = eigenvalues_of(x);
  const bool integral = s >= 0.0 && std::floor(s) == s;
  if (integral) {
    double det = 1.0;
    for (int i = 0; i < ev.size(); ++i) det *= ev(i);
    return std::pow(det, s);
  }
  double log_sum = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    if (!(ev(i) > 0.0)) {
      throw DomainError(fmt::format(
          "fractional determinant power {} needs a positive definite argument (eigenvalue {})", s,
          ev(i)));
    }
    log_sum += std::log(ev(i));
  }
  return std::exp(s * log_sum);
}

Matrix gaussian_matrix(int rows, int cols, int d, double sigma, Rng& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = d == 2 ? normal(rng) : 0.0;
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix haar_unitary(int p, int d, Rng& rng) {
  if (p < 1) throw DomainError("unitary dimension must be positive");
  require_supported_d(d);
  const Matrix g = gaussian_matrix(p, p, d, 1.0, rng);
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(p, p);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < p; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  if (d == 1) q = q.real().cast<Complex>();
  return q;
}

Matrix embed_top(const Matrix& sigma, int p) {
  if (p < sigma.rows()) throw DomainError("embedding dimension p must be at least q");
  Matrix out = Matrix::Zero(p, sigma.cols());
  out.topRows(sigma.rows()) = sigma;
  return out;
}

}  // namespace conewalk
