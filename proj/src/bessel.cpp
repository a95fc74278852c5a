#include "conewalk/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <fmt/format.h>

#include "conewalk/errors.hpp"
#include "conewalk/jack.hpp"

namespace conewalk {

namespace {

constexpr double kPi = std::numbers::pi;

void require_cone_index(const StructureParams& params, const char* what) {
  if (!(params.mu() > 2.0 * params.rho())) {
    throw DomainError(fmt::format("{} needs mu > 2 rho = {}, got mu = {}", what, 2.0 * params.rho(),
                                  params.mu()));
  }
}

void require_square(const Matrix& x, int q, const char* what) {
  if (x.rows() != q || x.cols() != q) {
    throw DimensionError(fmt::format("{}: expected a {}x{} matrix, got {}x{}", what, q, q, x.rows(), x.cols()));
  }
}

// Upper bound on mu^|lambda| / (mu)_lambda valid for every partition.
double pochhammer_ratio_bound(const StructureParams& params) {
  const int q = params.q();
  return std::ldexp(1.0, params.d() * q * (q - 1) / 2);
}

}  // namespace

double exponential_tail(double z, int K) {
  if (z == 0.0) return 0.0;
  const double next = K + 2.0;
  if (z >= next) return std::numeric_limits<double>::infinity();
  const double log_term = (K + 1.0) * std::log(z) - std::lgamma(K + 2.0);
  return std::exp(log_term) / (1.0 - z / next);
}

int choose_truncation(double z, double scale, double tol, int cap, const char* what) {
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  double bound = std::numeric_limits<double>::infinity();
  for (int K = 0; K <= cap; ++K) {
    bound = scale * exponential_tail(z, K);
    if (bound <= tol) return K;
  }
  throw ConvergenceError(fmt::format("{}: tail bound {:.3g} above tolerance {:.3g} at weight cap {}",
                                     what, bound, tol, cap),
                         bound);
}

SeriesValue bessel_series(const StructureParams& params, const HermitianMatrix& x, double tol) {
  const int q = params.q();
  if (x.dim() != q) {
    throw DimensionError(fmt::format("bessel_series: argument is {}x{} but q = {}", x.dim(), x.dim(), q));
  }
  const double mu = params.mu();
  const RealVector xi = eigenvalues_of(x);
  const double total = xi.cwiseAbs().sum();
  if (total == 0.0) return {1.0, 0.0, 0};

  const double z = total / mu;
  const int K = choose_truncation(z, pochhammer_ratio_bound(params), tol, kSeriesWeightCap, "bessel_series");

  std::vector<double> scaled(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) scaled[static_cast<std::size_t>(i)] = xi(i) / total;
  const auto table = JackTable::get(params.alpha(), q, K);
  const std::vector<double> c = table->evaluate(scaled, K);

  double sum = 0.0;
  double shell_factor = 1.0;  // (total/mu)^k / k!
  for (int k = 0; k <= K; ++k) {
    if (k > 0) shell_factor *= z / k;
    double shell = 0.0;
    for (std::size_t i = table->weight_begin(k); i < table->weight_end(k); ++i) {
      const Partition& lambda = table->partitions()[i];
      double ratio = 1.0;  // mu^k / (mu)_lambda
      for (int j = 0; j < lambda.length(); ++j) {
        const double a = mu - j / params.alpha();
        for (int m = 0; m < lambda[j]; ++m) ratio *= mu / (a + m);
      }
      shell += c[i] * ratio;
    }
    sum += (k % 2 == 0 ? 1.0 : -1.0) * shell_factor * shell;
  }
  return {sum, pochhammer_ratio_bound(params) * exponential_tail(z, K), K};
}

SeriesValue bessel_series(double mu, const HermitianMatrix& x, const StructureParams& params, double tol) {
  return bessel_series(params.with_mu(mu), x, tol);
}

SeriesValue bessel_classical(double kappa, double z, double tol) {
  const double b = kappa + 1.0;
  if (b <= 0.0 && std::floor(b) == b) {
    throw DomainError(fmt::format("j_kappa undefined: kappa + 1 = {} is a pole of the Pochhammer symbol", b));
  }
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  const double w = -0.25 * z * z;
  constexpr int kCap = 500;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < kCap; ++k) {
    // term_{k+1} = term_k * w / ((b + k)(k + 1))
    term *= w / ((b + k) * (k + 1.0));
    sum += term;
    // Remaining terms shrink geometrically once b + k + 1 > 0.
    const double lead = b + k + 1.0;
    if (lead > 0.0) {
      const double ratio = std::abs(w) / (lead * (k + 2.0));
      if (ratio < 1.0) {
        const double tail = std::abs(term) * ratio / (1.0 - ratio);
        if (tail <= tol) return {sum, tail, k + 1};
      }
    }
  }
  throw ConvergenceError("bessel_classical: tail bound not reached", std::abs(term));
}

double kappa_mu_exact(const StructureParams& params) {
  const int q = params.q();
  const double d = params.d();
  const double mu = params.mu();
  double log_value = 0.5 * d * q * q * std::log(kPi);
  for (int j = 1; j <= q; ++j) {
    const double shift = (j - 1) * d / 2.0;
    log_value += std::lgamma(mu - d * q / 2.0 - shift) - std::lgamma(mu - shift);
  }
  return std::exp(log_value);
}

namespace detail {

double ball_density(const Matrix& v, int d, double c) {
  const RealVector s2 = eigenvalues_of(HermitianMatrix(v.adjoint() * v, d));
  double log_det = 0.0;
  for (int i = 0; i < s2.size(); ++i) {
    if (!(s2(i) < 1.0)) return 0.0;
    log_det += std::log1p(-s2(i));
  }
  return std::exp(c * log_det);
}

double ball_importance_draw(int q, int d, double c, Rng& rng, Matrix& v) {
  const int dim = d * q * q;
  if (c >= 1.0) {
    v = gaussian_matrix(q, q, d, std::sqrt(0.5 / c), rng);
    const RealVector s2 = eigenvalues_of(HermitianMatrix(v.adjoint() * v, d));
    // Delta(I - v^*v)^c e^{c tr v^*v} = exp(c sum (log(1 - s) + s)) <= 1
    double acc = 0.0;
    for (int i = 0; i < s2.size(); ++i) {
      if (!(s2(i) < 1.0)) return 0.0;
      acc += std::log1p(-s2(i)) + s2(i);
    }
    return std::exp(0.5 * dim * std::log(kPi / c) + c * acc);
  }
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  v.resize(q, q);
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < q; ++i) {
      const double re = box(rng);
      v(i, j) = Complex(re, d == 2 ? box(rng) : 0.0);
    }
  }
  return std::ldexp(ball_density(v, d, c), dim);
}

}  // namespace detail

Estimate kappa_mu(const StructureParams& params, std::size_t n_samples, std::uint64_t seed, int threads) {
  if (params.q() == 1) return {kappa_mu_exact(params), 0.0};
  const double c = params.mu() - params.rho();
  const MeanAccumulator acc = chunked_monte_carlo<MeanAccumulator>(
      n_samples, seed, "kappa_mu", threads, [&](Rng& rng, std::size_t count, MeanAccumulator& a) {
        Matrix v;
        for (std::size_t i = 0; i < count; ++i) a.add(detail::ball_importance_draw(params.q(), params.d(), c, rng, v));
      });
  return acc.estimate();
}

Estimate bessel_integral_mc(const StructureParams& params, const Matrix& x, std::size_t n_samples,
                            std::uint64_t seed, int threads) {
  require_square(x, params.q(), "bessel_integral_mc");
  const double c = params.mu() - params.rho();
  const RatioAccumulator acc = chunked_monte_carlo<RatioAccumulator>(
      n_samples, seed, "bessel_integral_mc", threads, [&](Rng& rng, std::size_t count, RatioAccumulator& a) {
        Matrix v;
        for (std::size_t i = 0; i < count; ++i) {
          const double w = detail::ball_importance_draw(params.q(), params.d(), c, rng, v);
          a.add(w * std::cos(2.0 * frob_inner(v, x)), w);
        }
      });
  return acc.ratio();
}

Estimate gaussian_tail_H(const StructureParams& params, const Matrix& x, double r, std::size_t n_samples,
                         std::uint64_t seed, int threads) {
  require_square(x, params.q(), "gaussian_tail_H");
  if (r < 0.0) throw DomainError("gaussian_tail_H: radius must be nonnegative");
  const int d = params.d();
  const double volume = std::pow(kPi, 0.5 * params.real_dim());
  if (params.q() == 1) {
    if (d == 1) {
      const double x0 = x(0, 0).real();
      return {0.5 * std::sqrt(kPi) * (std::erfc(r - x0) + std::erfc(r + x0)), 0.0};
    }
    // 2|x + G|^2 is noncentral chi-square with 2 degrees of freedom.
    if (r == 0.0) return {volume, 0.0};
    const boost::math::non_central_chi_squared dist(2.0, 2.0 * std::norm(x(0, 0)));
    return {volume * boost::math::cdf(boost::math::complement(dist, 2.0 * r * r)), 0.0};
  }
  const MeanAccumulator acc = chunked_monte_carlo<MeanAccumulator>(
      n_samples, seed, "gaussian_tail_H", threads, [&](Rng& rng, std::size_t count, MeanAccumulator& a) {
        for (std::size_t i = 0; i < count; ++i) {
          const Matrix v = x + gaussian_matrix(params.q(), params.q(), d, std::sqrt(0.5), rng);
          a.add(spectral_norm(v) >= r ? 1.0 : 0.0);
        }
      });
  const Estimate p = acc.estimate();
  return {volume * p.value, volume * p.std_error};
}

GapEnvelope theorem1_gap(const StructureParams& params, const ConeMatrix& y) {
  require_cone_index(params, "theorem1_gap");
  if (y.dim() != params.q()) throw DimensionError("theorem1_gap: argument has the wrong size");
  const double mu = params.mu();
  const double tr = y.trace();
  const SeriesValue j = bessel_series(params, HermitianMatrix(mu * y.matrix(), params.d()));
  return {std::abs(j.value - std::exp(-tr)), std::min(1.0, tr * tr) / mu};
}

namespace {

struct Prop3Parts {
  double value;
  double exp_norm;  // e^<x,x>
  double norm4;     // ||x||^4
  double h;
};

Prop3Parts prop3_parts(const StructureParams& params, const Matrix& x, std::size_t n_samples,
                       std::uint64_t seed, int threads) {
  require_cone_index(params, "prop3_envelope");
  require_square(x, params.q(), "prop3_envelope");
  const double c = params.mu() - params.rho();
  const Matrix gram = x.adjoint() * x;
  const SeriesValue j = bessel_series(params, HermitianMatrix(-c * gram, params.d()));
  const double n2 = frob_inner(x, x);
  const Estimate h = gaussian_tail_H(params, x, std::sqrt(c), n_samples, seed, threads);
  return {j.value, std::exp(n2), n2 * n2, h.value};
}

}  // namespace

Envelope prop3_envelope(const StructureParams& params, const Matrix& x, double c_emp, std::size_t n_samples,
                        std::uint64_t seed, int threads) {
  const Prop3Parts p = prop3_parts(params, x, n_samples, seed, threads);
  const double mu = params.mu();
  return {p.exp_norm * (1.0 - c_emp / mu * (1.0 + p.norm4) - p.h), p.value, p.exp_norm * (1.0 + c_emp / mu)};
}

double prop3_required_constant(const StructureParams& params, const Matrix& x, std::size_t n_samples,
                               std::uint64_t seed, int threads) {
  const Prop3Parts p = prop3_parts(params, x, n_samples, seed, threads);
  const double mu = params.mu();
  const double ratio = p.value / p.exp_norm;
  const double for_upper = mu * (ratio - 1.0);
  const double for_lower = mu * (1.0 - p.h - ratio) / (1.0 + p.norm4);
  return std::max({0.0, for_upper, for_lower});
}

}  // namespace conewalk
