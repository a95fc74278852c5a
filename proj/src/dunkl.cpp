#include "conewalk/dunkl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "conewalk/errors.hpp"
#include "conewalk/jack.hpp"

namespace conewalk {

ChamberPoint::ChamberPoint(std::vector<double> xi) : xi_(std::move(xi)) {
  if (xi_.empty()) throw DimensionError("chamber point needs at least one coordinate");
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    if (!(xi_[i] >= 0.0)) throw DomainError(fmt::format("chamber point has negative entry {}", xi_[i]));
    if (i > 0 && xi_[i] > xi_[i - 1]) throw DomainError("chamber point entries must be non-increasing");
  }
}

std::vector<double> ChamberPoint::squared() const {
  std::vector<double> out(xi_.size());
  std::transform(xi_.begin(), xi_.end(), out.begin(), [](double x) { return x * x; });
  return out;
}

double ChamberPoint::squared_norm() const {
  double s = 0.0;
  for (double x : xi_) s += x * x * x * x;
  return std::sqrt(s);
}

BMultiplicity BMultiplicity::from_structure(const StructureParams& params) {
  const double d = params.d();
  return {params.mu() - 0.5 * (d * (params.q() - 1) + 1.0), 0.5 * d};
}

namespace {

void require_pair(const ChamberPoint& xi, const ChamberPoint& eta, int q) {
  if (xi.size() != q || eta.size() != q) {
    throw DimensionError(fmt::format("chamber points of length {} and {} for q = {}", xi.size(), eta.size(), q));
  }
}

void require_large_mu(const StructureParams& params, const char* what) {
  if (!(params.mu() > 2.0 * params.rho())) {
    throw DomainError(fmt::format("{}: needs mu > 2 rho = {}, got {}", what, 2.0 * params.rho(), params.mu()));
  }
}

// eta u diag(xi^2) u^* eta for a Haar u.
Matrix orbit_point(const std::vector<double>& xi2, const std::vector<double>& eta, int d, Rng& rng) {
  const int q = static_cast<int>(xi2.size());
  const Matrix u = haar_unitary(q, d, rng);
  RealVector x(q), e(q);
  for (int i = 0; i < q; ++i) {
    x(i) = xi2[static_cast<std::size_t>(i)];
    e(i) = eta[static_cast<std::size_t>(i)];
  }
  const Matrix inner = u * x.cast<Complex>().asDiagonal() * u.adjoint();
  const Matrix y = e.cast<Complex>().asDiagonal() * inner * e.cast<Complex>().asDiagonal();
  return 0.5 * (y + y.adjoint());
}

struct PairedAccumulator {
  MeanAccumulator value;
  MeanAccumulator diff;
  void merge(const PairedAccumulator& o) {
    value.merge(o.value);
    diff.merge(o.diff);
  }
};

}  // namespace

Estimate bessel_B_mc(const ChamberPoint& xi, const ChamberPoint& eta, const StructureParams& params,
                     std::size_t n_samples, std::uint64_t seed, int threads) {
  const int q = params.q();
  require_pair(xi, eta, q);
  require_large_mu(params, "bessel_B_mc");
  const std::vector<double> xi2 = xi.squared();
  if (q == 1) {
    Matrix y(1, 1);
    y(0, 0) = 0.25 * xi2[0] * eta.values()[0] * eta.values()[0];
    return {bessel_series(params, HermitianMatrix(y, params.d())).value, 0.0};
  }
  const MeanAccumulator acc = chunked_monte_carlo<MeanAccumulator>(
      n_samples, seed, "bessel_B_mc", threads, [&](Rng& rng, std::size_t count, MeanAccumulator& a) {
        for (std::size_t i = 0; i < count; ++i) {
          const Matrix y = 0.25 * orbit_point(xi2, eta.values(), params.d(), rng);
          a.add(bessel_series(params, HermitianMatrix(y, params.d())).value);
        }
      });
  return acc.estimate();
}

SeriesValue hyper_0F0(double alpha, std::span<const double> xi, std::span<const double> eta, double tol) {
  if (!(alpha > 0.0)) throw DomainError(fmt::format("hyper_0F0: alpha = {} must be positive", alpha));
  if (xi.size() != eta.size() || xi.empty()) throw DimensionError("hyper_0F0: arguments must have equal length");
  const int n = static_cast<int>(xi.size());
  double xi_sum = 0.0, eta_max = 0.0;
  for (int i = 0; i < n; ++i) {
    xi_sum += std::abs(xi[static_cast<std::size_t>(i)]);
    eta_max = std::max(eta_max, std::abs(eta[static_cast<std::size_t>(i)]));
  }
  const double z = xi_sum * eta_max;
  if (z == 0.0) return {1.0, 0.0, 0};

  // |C_l(xi) C_l(eta) / C_l(1)| <= C_l(|xi|) max|eta|^k, and the C_l(|xi|)
  // of one weight sum to (sum |xi|)^k.
  const int K = choose_truncation(z, 1.0, tol, kSeriesWeightCap, "hyper_0F0");
  std::vector<double> xs(xi.size()), es(eta.size()), ones(xi.size(), 1.0);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    xs[i] = xi[i] / xi_sum;
    es[i] = eta[i] / eta_max;
  }
  const auto table = JackTable::get(alpha, n, K);
  const std::vector<double> cx = table->evaluate(xs, K);
  const std::vector<double> ce = table->evaluate(es, K);
  const std::vector<double> c1 = table->evaluate(ones, K);

  double sum = 0.0;
  double shell_factor = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) shell_factor *= z / k;
    double shell = 0.0;
    for (std::size_t i = table->weight_begin(k); i < table->weight_end(k); ++i) shell += cx[i] * ce[i] / c1[i];
    sum += shell_factor * shell;
  }
  return {sum, exponential_tail(z, K), K};
}

double harish_chandra_exact(std::span<const double> xi2, std::span<const double> eta2) {
  if (xi2.size() != eta2.size() || xi2.empty()) {
    throw DimensionError("harish_chandra_exact: arguments must have equal length");
  }
  const int q = static_cast<int>(xi2.size());
  auto check_separated = [](std::span<const double> v, const char* name) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (std::abs(v[i] - v[j]) < 1e-6 * scale || scale == 0.0) {
          throw IllConditionedError(fmt::format(
              "harish_chandra_exact: entries {} and {} of {} nearly coincide; use hyper_0F0", i, j, name));
        }
      }
    }
  };
  if (q == 1) return std::exp(-xi2[0] * eta2[0]);
  check_separated(xi2, "xi2");
  check_separated(eta2, "eta2");

  double vandermonde = 1.0;
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      vandermonde *= (xi2[static_cast<std::size_t>(i)] - xi2[static_cast<std::size_t>(j)]) *
                     (eta2[static_cast<std::size_t>(i)] - eta2[static_cast<std::size_t>(j)]);
    }
  }
  double factorials = 1.0;
  for (int j = 2; j < q; ++j) factorials *= std::tgamma(j + 1.0);

  std::vector<int> w(static_cast<std::size_t>(q));
  std::iota(w.begin(), w.end(), 0);
  double alternating = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) inversions += w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(j)];
    }
    double dot = 0.0;
    for (int i = 0; i < q; ++i) dot += xi2[static_cast<std::size_t>(i)] * eta2[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])];
    alternating += (inversions % 2 == 0 ? 1.0 : -1.0) * std::exp(-dot);
  } while (std::next_permutation(w.begin(), w.end()));

  // The integral is exp(t <.,.>) at t = -1; the t^{-q(q-1)/2} of the HCIZ
  // formula contributes this sign.
  const double sign = (q * (q - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * factorials * alternating / vandermonde;
}

Estimate orbit_exp_mc(const ChamberPoint& xi, const ChamberPoint& eta, int d, std::size_t n_samples,
                      std::uint64_t seed, int threads) {
  require_supported_d(d);
  if (xi.size() != eta.size()) throw DimensionError("orbit_exp_mc: arguments must have equal length");
  const std::vector<double> xi2 = xi.squared();
  const MeanAccumulator acc = chunked_monte_carlo<MeanAccumulator>(
      n_samples, seed, "orbit_exp_mc", threads, [&](Rng& rng, std::size_t count, MeanAccumulator& a) {
        for (std::size_t i = 0; i < count; ++i) a.add(std::exp(-orbit_point(xi2, eta.values(), d, rng).trace().real()));
      });
  return acc.estimate();
}

double type_A_limit(const ChamberPoint& xi, const ChamberPoint& eta, int d) {
  require_supported_d(d);
  std::vector<double> minus_xi2 = xi.squared();
  const std::vector<double> eta2 = eta.squared();
  if (d == 2) {
    try {
      return harish_chandra_exact(minus_xi2, eta2);
    } catch (const IllConditionedError&) {
      // fall through to the series
    }
  }
  for (double& x : minus_xi2) x = -x;
  return hyper_0F0(2.0 / d, minus_xi2, eta2).value;
}

DunklGap corollary_gap(const StructureParams& params, const ChamberPoint& xi, const ChamberPoint& eta,
                       std::size_t n_samples, std::uint64_t seed, int threads) {
  const int q = params.q();
  require_pair(xi, eta, q);
  require_large_mu(params, "corollary_gap");
  const double mu = params.mu();
  const std::vector<double> xi2 = xi.squared();

  DunklGap out;
  out.a_value = type_A_limit(xi, eta, params.d());
  const double s = xi.squared_norm() * eta.squared_norm();
  out.envelope = std::min(1.0, s * s) / mu;

  const PairedAccumulator acc = chunked_monte_carlo<PairedAccumulator>(
      n_samples, seed, "corollary_gap", threads, [&](Rng& rng, std::size_t count, PairedAccumulator& a) {
        for (std::size_t i = 0; i < count; ++i) {
          const Matrix y = orbit_point(xi2, eta.values(), params.d(), rng);
          const double b = bessel_series(params, HermitianMatrix(mu * y, params.d())).value;
          a.value.add(b);
          a.diff.add(b - std::exp(-y.trace().real()));
        }
      });
  const Estimate value = acc.value.estimate();
  const Estimate diff = acc.diff.estimate();
  out.b_value = value.value;
  out.b_stderr = value.std_error;
  out.gap = std::abs(diff.value);
  out.gap_stderr = diff.std_error;
  return out;
}

}  // namespace conewalk
