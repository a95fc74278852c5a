#pragma once

// Bessel hypergroup convolution on the cone and the random walks built on it.
//
// For r, s in the cone, delta_r * delta_s is the law of
//   t = sqrt(r^2 + s^2 + s v r + r v^* s)
// where v has density Delta(I - v^*v)^(mu - rho) / kappa_mu on the ball D_q.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "conewalk/linalg.hpp"
#include "conewalk/random.hpp"

namespace conewalk {

/// Finitely supported probability measure on the cone.
class RadialLaw {
 public:
  struct Atom {
    double weight;
    ConeMatrix point;
  };

  /// Weights must be positive and sum to 1 within 1e-12; all atoms share
  /// (q, d); the measure may not be the point mass at 0.
  explicit RadialLaw(std::vector<Atom> atoms);

  static RadialLaw dirac(const ConeMatrix& point) { return RadialLaw({Atom{1.0, point}}); }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  int q() const noexcept { return atoms_.front().point.dim(); }
  int d() const noexcept { return atoms_.front().point.d(); }
  /// Largest Hilbert-Schmidt norm among the atoms.
  double max_norm() const noexcept { return max_norm_; }
  const ConeMatrix& draw(Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  double max_norm_ = 0.0;
};

struct WalkPath {
  int q = 0;
  int d = 0;
  double mu = 0.0;
  std::vector<ConeMatrix> steps;  ///< steps[0] = 0
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

/// Proposals a single sample_ball call may spend before giving up.
inline constexpr long kMaxBallProposals = 1000000;

/// Draw from Delta(I - v^*v)^(mu - rho) / kappa_mu on D_q by rejection.
/// mu - rho >= 1: Gaussian proposal; 0 <= mu - rho < 1: uniform proposal;
/// -1 < mu - rho < 0: Beta proposal for the squared singular values.
/// Throws SamplingError when no proposal is accepted within the budget.
BallMatrix sample_ball(const StructureParams& params, Rng& rng);

/// One draw from delta_r *_mu delta_s. Exact when r or s is zero.
ConeMatrix convolve_sample(const ConeMatrix& r, const ConeMatrix& s, const StructureParams& params, Rng& rng);

/// Monte Carlo estimate of (delta_r *_mu delta_s)(f).
Estimate convolve_expectation(const std::function<double(const ConeMatrix&)>& f, const ConeMatrix& r,
                              const ConeMatrix& s, const StructureParams& params, std::size_t n_samples,
                              std::uint64_t seed, int threads = 0);

/// S_0 = 0, S_{k+1} ~ delta_{S_k} *_mu nu.
WalkPath walk_simulate(const RadialLaw& nu, const StructureParams& params, int n_steps, Rng& rng);

/// U sigma-embedding: u iota(sigma) for sigma ~ nu and Haar u in U_p.
RectMatrix radial_matrix_sample(const RadialLaw& nu, int p, Rng& rng);

/// S_k = phi_p(X_1 + ... + X_k) for independent radial X_l with
/// phi_p(X_l) ~ nu; recorded with mu = p d / 2.
WalkPath orbit_walk_simulate(const RadialLaw& nu, int p, int n_steps, Rng& rng);

/// Independent replicate paths; replicate i uses the substream (seed, label, i).
std::vector<WalkPath> walk_replicates(const RadialLaw& nu, const StructureParams& params, int n_steps,
                                      std::size_t replicates, std::uint64_t seed, std::string_view label,
                                      int threads = 0);
std::vector<WalkPath> orbit_walk_replicates(const RadialLaw& nu, int p, int n_steps, std::size_t replicates,
                                            std::uint64_t seed, std::string_view label, int threads = 0);

}  // namespace conewalk
