#pragma once

// Bessel functions of Dunkl type for the root systems B_q and A_{q-1}.
//
// The B_q function with multiplicity k(mu, d) is reached only through the
// average of the cone Bessel function over the conjugation orbit,
//   psi_eta(xi) = int_{U_q} J_mu(eta u xi^2 u^* eta / 4) du,
// and the A-type function is the Jack series 0F0.

#include <cstdint>
#include <span>
#include <vector>

#include "conewalk/bessel.hpp"
#include "conewalk/linalg.hpp"
#include "conewalk/random.hpp"

namespace conewalk {

/// Point of the Weyl chamber xi_1 >= ... >= xi_q >= 0.
class ChamberPoint {
 public:
  explicit ChamberPoint(std::vector<double> xi);

  const std::vector<double>& values() const noexcept { return xi_; }
  int size() const noexcept { return static_cast<int>(xi_.size()); }
  std::vector<double> squared() const;
  /// Euclidean norm of (xi_1^2, ..., xi_q^2).
  double squared_norm() const;

 private:
  std::vector<double> xi_;
};

/// Multiplicity on the B_q roots: k1 on +-e_i, k2 on +-e_i +- e_j.
struct BMultiplicity {
  double k1 = 0.0;
  double k2 = 0.0;

  /// k(mu, d) = (mu - (d(q-1) + 1)/2, d/2).
  static BMultiplicity from_structure(const StructureParams& params);
  /// Inverse map: mu = k1 + (q-1) k2 + 1/2.
  double mu(int q) const { return k1 + (q - 1) * k2 + 0.5; }
};

/// Haar-average of J_mu(eta u xi^2 u^* eta / 4). Requires mu > 2 rho.
Estimate bessel_B_mc(const ChamberPoint& xi, const ChamberPoint& eta, const StructureParams& params,
                     std::size_t n_samples, std::uint64_t seed, int threads = 0);

/// 0F0^alpha(xi, eta) = sum_lambda C_l(xi) C_l(eta) / (C_l(1) |l|!).
SeriesValue hyper_0F0(double alpha, std::span<const double> xi, std::span<const double> eta,
                      double tol = kDefaultSeriesTol);

/// int_{U_q(C)} exp(-<eta2, u diag(xi2) u^*>) du as an alternating sum over
/// S_q. Throws IllConditionedError when two entries of xi2 or of eta2 are
/// closer than 1e-6 times the largest entry.
double harish_chandra_exact(std::span<const double> xi2, std::span<const double> eta2);

/// Haar Monte Carlo of int_{U_q} exp(-tr(eta u xi^2 u^* eta)) du over U_q(F_d).
Estimate orbit_exp_mc(const ChamberPoint& xi, const ChamberPoint& eta, int d, std::size_t n_samples,
                      std::uint64_t seed, int threads = 0);

/// J^A_{d/2}(-xi^2, eta^2), i.e. 0F0^{2/d}; for d = 2 with separated entries
/// the alternating sum is used instead of the series.
double type_A_limit(const ChamberPoint& xi, const ChamberPoint& eta, int d);

struct DunklGap {
  double gap = 0.0;         ///< |psi_eta(2 sqrt(mu) xi) - J^A_{d/2}(-xi^2, eta^2)|
  double gap_stderr = 0.0;
  double envelope = 0.0;    ///< min(1, (|xi^2| |eta^2|)^2) / mu
  double b_value = 0.0;     ///< plain Monte Carlo of psi_eta(2 sqrt(mu) xi)
  double b_stderr = 0.0;
  double a_value = 0.0;
  double normalized() const { return envelope > 0.0 ? gap / envelope : 0.0; }
};

/// The gap is estimated from the paired differences
/// J_mu(mu y_u) - exp(-tr y_u), y_u = eta u xi^2 u^* eta, whose Haar mean is
/// exactly psi - J^A. Requires mu > 2 rho.
DunklGap corollary_gap(const StructureParams& params, const ChamberPoint& xi, const ChamberPoint& eta,
                       std::size_t n_samples, std::uint64_t seed, int threads = 0);

}  // namespace conewalk
