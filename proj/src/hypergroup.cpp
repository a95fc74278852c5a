#include "conewalk/hypergroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "conewalk/errors.hpp"

namespace conewalk {

RadialLaw::RadialLaw(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("radial law needs at least one atom");
  const int q = atoms_.front().point.dim();
  const int d = atoms_.front().point.d();
  double total = 0.0;
  bool nonzero = false;
  for (const Atom& a : atoms_) {
    if (!(a.weight > 0.0) || a.weight > 1.0) {
      throw DomainError(fmt::format("atom weight {} outside (0, 1]", a.weight));
    }
    if (a.point.dim() != q || a.point.d() != d) throw DimensionError("atoms of a radial law must share (q, d)");
    total += a.weight;
    cumulative_.push_back(total);
    const double norm = hs_norm(a.point.matrix());
    max_norm_ = std::max(max_norm_, norm);
    nonzero = nonzero || norm > 0.0;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError(fmt::format("atom weights sum to {}, not 1", total));
  if (!nonzero) throw DomainError("the point mass at 0 is excluded");
}

const ConeMatrix& RadialLaw::draw(Rng& rng) const {
  if (atoms_.size() == 1) return atoms_.front().point;
  const double u = std::uniform_real_distribution<double>(0.0, cumulative_.back())(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
  return atoms_[idx].point;
}

namespace {

double beta_draw(double a, double b, Rng& rng) {
  const double x = std::gamma_distribution<double>(a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(b, 1.0)(rng);
  return x / (x + y);
}

// Squared singular values x_i ~ Beta(d/2, c + 1), accepted with probability
// prod_{i<j} |x_i - x_j|^d; then v = u diag(sqrt x) w^* with u, w Haar.
bool propose_jacobi(int q, int d, double c, Rng& rng, Matrix& v) {
  RealVector x(q);
  for (int i = 0; i < q; ++i) x(i) = beta_draw(0.5 * d, c + 1.0, rng);
  double accept = 1.0;
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) accept *= std::pow(std::abs(x(i) - x(j)), d);
  }
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= accept) return false;
  const Matrix u = haar_unitary(q, d, rng);
  const Matrix w = haar_unitary(q, d, rng);
  v = u * x.cwiseSqrt().cast<Complex>().asDiagonal() * w.adjoint();
  return true;
}

bool propose_gaussian(int q, int d, double c, Rng& rng, Matrix& v) {
  v = gaussian_matrix(q, q, d, std::sqrt(0.5 / c), rng);
  const RealVector s2 = eigenvalues_of(HermitianMatrix(v.adjoint() * v, d));
  double log_accept = 0.0;
  for (int i = 0; i < q; ++i) {
    if (!(s2(i) < 1.0 - 1e-14)) return false;
    log_accept += c * (std::log1p(-s2(i)) + s2(i));
  }
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::exp(log_accept);
}

bool propose_uniform(int q, int d, double c, Rng& rng, Matrix& v) {
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  v.resize(q, q);
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < q; ++i) {
      const double re = box(rng);
      v(i, j) = Complex(re, d == 2 ? box(rng) : 0.0);
    }
  }
  const RealVector s2 = eigenvalues_of(HermitianMatrix(v.adjoint() * v, d));
  double log_det = 0.0;
  for (int i = 0; i < q; ++i) {
    if (!(s2(i) < 1.0 - 1e-14)) return false;
    log_det += std::log1p(-s2(i));
  }
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::exp(c * log_det);
}

bool is_zero(const ConeMatrix& a) { return a.matrix().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

BallMatrix sample_ball(const StructureParams& params, Rng& rng) {
  const int q = params.q();
  const int d = params.d();
  const double c = params.mu() - params.rho();
  Matrix v;
  for (long n = 0; n < kMaxBallProposals; ++n) {
    bool ok = false;
    if (c >= 1.0) {
      ok = propose_gaussian(q, d, c, rng, v);
    } else if (c >= 0.0) {
      ok = propose_uniform(q, d, c, rng, v);
    } else {
      ok = propose_jacobi(q, d, c, rng, v);
    }
    if (ok) {
      if (d == 1) v = v.real().cast<Complex>();
      // Rounding in the Jacobi branch can put singular values at 1.
      if (spectral_norm(v) < 1.0 - 1e-14) return BallMatrix(v, d);
    }
  }
  throw SamplingError(fmt::format("sample_ball: no acceptance in {} proposals (q = {}, d = {}, mu = {})",
                                  kMaxBallProposals, q, d, params.mu()));
}

ConeMatrix convolve_sample(const ConeMatrix& r, const ConeMatrix& s, const StructureParams& params, Rng& rng) {
  if (r.dim() != params.q() || s.dim() != params.q()) throw DimensionError("convolve_sample: wrong matrix size");
  if (is_zero(r)) return s;
  if (is_zero(s)) return r;
  const Matrix v = sample_ball(params, rng).matrix();
  const Matrix& rm = r.matrix();
  const Matrix& sm = s.matrix();
  // r^2 + s^2 + s v r + r v^* s = (r + v^* s)^* (r + v^* s) + s (I - v v^*) s,
  // a sum of two PSD terms, which keeps rounding errors small.
  const Matrix a = rm + v.adjoint() * sm;
  const Matrix t2 = a.adjoint() * a + sm * (Matrix::Identity(params.q(), params.q()) - v * v.adjoint()) * sm;
  return psd_sqrt(ConeMatrix(0.5 * (t2 + t2.adjoint()), params.d()));
}

Estimate convolve_expectation(const std::function<double(const ConeMatrix&)>& f, const ConeMatrix& r,
                              const ConeMatrix& s, const StructureParams& params, std::size_t n_samples,
                              std::uint64_t seed, int threads) {
  const MeanAccumulator acc = chunked_monte_carlo<MeanAccumulator>(
      n_samples, seed, "convolve_expectation", threads, [&](Rng& rng, std::size_t count, MeanAccumulator& a) {
        for (std::size_t i = 0; i < count; ++i) a.add(f(convolve_sample(r, s, params, rng)));
      });
  return acc.estimate();
}

WalkPath walk_simulate(const RadialLaw& nu, const StructureParams& params, int n_steps, Rng& rng) {
  if (n_steps < 0) throw DomainError("walk_simulate: negative step count");
  if (nu.q() != params.q() || nu.d() != params.d()) throw DimensionError("walk_simulate: law and params disagree");
  WalkPath path{params.q(), params.d(), params.mu(), {}, 0, 0};
  path.steps.reserve(static_cast<std::size_t>(n_steps) + 1);
  path.steps.push_back(ConeMatrix::zero(params.q(), params.d()));
  for (int k = 0; k < n_steps; ++k) {
    path.steps.push_back(convolve_sample(path.steps.back(), nu.draw(rng), params, rng));
  }
  return path;
}

RectMatrix radial_matrix_sample(const RadialLaw& nu, int p, Rng& rng) {
  if (p < nu.q()) throw DomainError(fmt::format("radial_matrix_sample: p = {} below q = {}", p, nu.q()));
  const ConeMatrix& sigma = nu.draw(rng);
  return RectMatrix(haar_unitary(p, nu.d(), rng) * embed_top(sigma.matrix(), p), nu.d());
}

WalkPath orbit_walk_simulate(const RadialLaw& nu, int p, int n_steps, Rng& rng) {
  if (n_steps < 0) throw DomainError("orbit_walk_simulate: negative step count");
  if (p < nu.q()) throw DomainError(fmt::format("orbit_walk_simulate: p = {} below q = {}", p, nu.q()));
  WalkPath path{nu.q(), nu.d(), 0.5 * p * nu.d(), {}, 0, 0};
  path.steps.push_back(ConeMatrix::zero(nu.q(), nu.d()));
  Matrix sum = Matrix::Zero(p, nu.q());
  for (int k = 0; k < n_steps; ++k) {
    sum += radial_matrix_sample(nu, p, rng).matrix();
    path.steps.push_back(phi_p(RectMatrix(sum, nu.d())));
  }
  return path;
}

namespace {

template <class Simulate>
std::vector<WalkPath> replicate_paths(std::size_t replicates, std::uint64_t seed, std::string_view label,
                                      int threads, Simulate&& simulate) {
  std::vector<WalkPath> paths(replicates);
  parallel_for(replicates, threads, [&](std::size_t i) {
    Rng rng = make_rng(seed, label, i);
    paths[i] = simulate(rng);
    paths[i].seed = seed;
    paths[i].replicate = i;
  });
  return paths;
}

}  // namespace

std::vector<WalkPath> walk_replicates(const RadialLaw& nu, const StructureParams& params, int n_steps,
                                      std::size_t replicates, std::uint64_t seed, std::string_view label,
                                      int threads) {
  return replicate_paths(replicates, seed, label, threads,
                         [&](Rng& rng) { return walk_simulate(nu, params, n_steps, rng); });
}

std::vector<WalkPath> orbit_walk_replicates(const RadialLaw& nu, int p, int n_steps, std::size_t replicates,
                                            std::uint64_t seed, std::string_view label, int threads) {
  return replicate_paths(replicates, seed, label, threads,
                         [&](Rng& rng) { return orbit_walk_simulate(nu, p, n_steps, rng); });
}

}  // namespace conewalk
