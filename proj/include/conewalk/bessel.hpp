#pragma once

// Bessel functions J_mu on the cone of positive semidefinite matrices.
//
//   J_mu(x) = sum_lambda (-1)^|lambda| Z_lambda(x) / ((mu)_lambda |lambda|!)
//
// The series is summed in full weight shells up to a weight K chosen so that
// the tail beyond K is certified below the requested tolerance.

#include <cstddef>
#include <cstdint>

#include "conewalk/linalg.hpp"
#include "conewalk/random.hpp"

namespace conewalk {

/// Largest partition weight a series may use before giving up.
inline constexpr int kSeriesWeightCap = 64;
inline constexpr double kDefaultSeriesTol = 1e-12;

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  ///< certified bound on |exact - value|
  int weight = 0;           ///< truncation weight K
};

/// Certified tail of the exponential series: bound on sum_{k>K} z^k/k!
/// (+inf when the geometric majorant does not converge yet).
double exponential_tail(double z, int K);

/// Smallest K <= cap with scale * exponential_tail(z, K) <= tol; throws
/// ConvergenceError carrying the bound reached at the cap.
int choose_truncation(double z, double scale, double tol, int cap, const char* what);

/// J_mu(x) for x in H_q; params supplies (q, d, mu). Arbitrary Hermitian
/// arguments are accepted since the series is entire.
SeriesValue bessel_series(const StructureParams& params, const HermitianMatrix& x,
                          double tol = kDefaultSeriesTol);

/// Same as above with the index overridden by `mu`.
SeriesValue bessel_series(double mu, const HermitianMatrix& x, const StructureParams& params,
                          double tol = kDefaultSeriesTol);

/// j_kappa(z) = 0F1(kappa + 1; -z^2/4). Throws DomainError when kappa + 1 is
/// a non-positive integer.
SeriesValue bessel_classical(double kappa, double z, double tol = kDefaultSeriesTol);

/// kappa_mu = integral over D_q of Delta(I - v^*v)^(mu - rho). For q = 1 the
/// Beta-integral closed form is returned with zero error; otherwise an
/// importance-sampled estimate.
Estimate kappa_mu(const StructureParams& params, std::size_t n_samples, std::uint64_t seed,
                  int threads = 0);

/// Closed form pi^(dq^2/2) prod_j Gamma(mu - dq/2 - (j-1)d/2) / Gamma(mu - (j-1)d/2).
double kappa_mu_exact(const StructureParams& params);

/// Monte Carlo estimate of J_mu(x^* x) from the integral representation over
/// D_q, as the ratio sum w cos(2<v,x>) / sum w over importance draws.
Estimate bessel_integral_mc(const StructureParams& params, const Matrix& x, std::size_t n_samples,
                            std::uint64_t seed, int threads = 0);

/// H(x, r) = integral over M_q outside r D_q of exp(-||v - x||^2) dv. Exact
/// for q = 1; Monte Carlo otherwise.
Estimate gaussian_tail_H(const StructureParams& params, const Matrix& x, double r,
                         std::size_t n_samples, std::uint64_t seed, int threads = 0);

struct GapEnvelope {
  double gap = 0.0;
  double envelope = 0.0;
  /// gap / envelope, or 0 when the envelope vanishes.
  double normalized() const { return envelope > 0.0 ? gap / envelope : 0.0; }
};

/// |J_mu(mu y) - exp(-tr y)| against min(1, (tr y)^2) / mu. Requires mu > 2 rho.
GapEnvelope theorem1_gap(const StructureParams& params, const ConeMatrix& y);

struct Envelope {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

/// value = J_mu(-(mu - rho) x^* x) with
///   lower = e^<x,x> (1 - (C/mu)(1 + ||x||^4) - H(x, sqrt(mu - rho))),
///   upper = e^<x,x> (1 + C/mu).
/// Requires mu > 2 rho.
Envelope prop3_envelope(const StructureParams& params, const Matrix& x, double c_emp,
                        std::size_t n_samples, std::uint64_t seed, int threads = 0);

/// Smallest C for which prop3_envelope brackets the value at x.
double prop3_required_constant(const StructureParams& params, const Matrix& x,
                               std::size_t n_samples, std::uint64_t seed, int threads = 0);

namespace detail {

/// One draw from the importance proposal on D_q used by kappa_mu and
/// bessel_integral_mc. Returns the weight Delta(I - v^*v)^c / proposal(v)
/// (zero outside D_q); the proposal is Gaussian with variance 1/(2c) per real
/// coordinate for c >= 1, uniform on the box [-1, 1]^(dq^2) otherwise.
double ball_importance_draw(int q, int d, double c, Rng& rng, Matrix& v);

/// Delta(I - v^*v)^c, or 0 when v is not in the open ball.
double ball_density(const Matrix& v, int d, double c);

}  // namespace detail

}  // namespace conewalk
