#pragma once

// Experiments for the limit theorems of the hypergroup walks: laws of large
// numbers along index schedules mu_k -> infinity and, for q = 1, the
// free energy and rate function of the squared walk.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conewalk/hypergroup.hpp"
#include "conewalk/linalg.hpp"
#include "conewalk/random.hpp"
#include "conewalk/report.hpp"

namespace conewalk {

/// Index and step schedules k -> (mu_k, n_k), k >= 1.
struct Schedule {
  enum class MuFamily { Power, Exponential };        // c k^b, c 2^k
  enum class StepFamily { Linear, Power, LogSquare };  // k, ceil(k^b), ceil((ln k)^2)

  MuFamily mu_family = MuFamily::Power;
  double mu_c = 1.0;
  double mu_b = 1.0;
  StepFamily step_family = StepFamily::Linear;
  double step_b = 1.0;

  double mu(int k) const;
  /// ln mu_k, finite even where mu_k overflows.
  double log_mu(int k) const;
  /// n_k, at least 1.
  long long n(int k) const;
  std::string name() const;
  /// Throws DomainError unless mu_k > rho - 1 for k = 1..k_max.
  void validate(int q, int d, int k_max) const;
};

/// sigma^2(nu) = sum w_i s_i^2.
ConeMatrix second_moment(const RadialLaw& nu);

/// sum w_i exp(-<x, s_i>).
double laplace_transform(const RadialLaw& nu, const ConeMatrix& x);
/// Sample mean of exp(-<x, y_j>).
double laplace_transform(std::span<const ConeMatrix> sample, const ConeMatrix& x);

/// Basis of H_q made of cone elements: the diagonal units and
/// I + (l e_ij + conj(l) e_ji)/2 for i < j, l in {1} (d = 1) or {1, i} (d = 2).
std::vector<ConeMatrix> cone_basis(int q, int d);
inline std::vector<ConeMatrix> cone_basis(const StructureParams& params) {
  return cone_basis(params.q(), params.d());
}
/// Condition number of the Gram matrix <b_i, b_j>.
double gram_condition(const std::vector<ConeMatrix>& basis);

/// Finite-k diagnostic for one limit condition. The verdict is heuristic:
/// the log of the monitored ratio must be non-decreasing over the upper half
/// of a log-spaced grid on [10, k_max] and gain at least ln 2 across it.
struct ConditionDiagnostic {
  std::string condition;
  std::vector<int> ks;
  std::vector<double> log_ratio;
  bool diverging = false;
  int failing_power = 0;  ///< condition (1): first a in 1..8 that fails, else 0
};

inline constexpr int kConditionHorizon = 1000;

/// (1) mu_k / k^a -> inf for all a, (2) mu_k / (n_k ln k)^2 -> inf,
/// (3) n_k / (ln k)^2 -> inf. Requires k_max >= 10.
std::vector<ConditionDiagnostic> schedule_conditions(const Schedule& schedule, int k_max);

/// For each k: P(||S_k/sqrt(k) - sqrt(sigma^2)|| > epsilon) over replicate
/// walks with index mu_k (rows "tail_prob", "mean_deviation").
ExperimentReport wlln_experiment(const RadialLaw& nu, const Schedule& schedule, const std::vector<int>& ks,
                                 std::size_t replicates, double epsilon, std::uint64_t seed, int threads = 0);

/// One path: d_k = ||S_{n_k}/sqrt(n_k) - sqrt(sigma^2)|| for k = 1..k_max with
/// walks of index mu_k driven by the substream (seed, "slln", path), plus
/// the running tail sup_{j >= k} d_j and the condition diagnostics.
ExperimentReport slln_experiment(const RadialLaw& nu, const Schedule& schedule, int k_max, std::uint64_t seed,
                                 std::uint64_t path = 0);
/// The deviations d_1..d_{k_max} of the same path, index 0 unused.
std::vector<double> slln_deviations(const RadialLaw& nu, const Schedule& schedule, int k_max,
                                    std::uint64_t seed, std::uint64_t path = 0);

/// (1/n) ln E exp(t S_n^2) for q = 1 walks of index mu, delta-method error.
Estimate free_energy_empirical(const RadialLaw& nu, double mu, long long n, double t, std::size_t replicates,
                               std::uint64_t seed, int threads = 0);

/// c(t) = ln sum w_i exp(t s_i^2), q = 1.
double free_energy_limit(const RadialLaw& nu, double t);

/// I(s) = sup_t (s t - c(t)) over [t_lo, t_hi] by golden-section search;
/// +infinity when the objective still increases at a bound.
double rate_function(const RadialLaw& nu, double s, double t_lo = -60.0, double t_hi = 60.0);

}  // namespace conewalk
