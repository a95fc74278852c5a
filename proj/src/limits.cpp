#include "conewalk/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "conewalk/errors.hpp"

namespace conewalk {

double Schedule::log_mu(int k) const {
  if (k < 1) throw DomainError("schedules start at k = 1");
  if (!(mu_c > 0.0)) throw DomainError("schedule constant must be positive");
  return mu_family == MuFamily::Power ? std::log(mu_c) + mu_b * std::log(k)
                                      : std::log(mu_c) + k * std::log(2.0);
}

double Schedule::mu(int k) const { return std::exp(log_mu(k)); }

long long Schedule::n(int k) const {
  if (k < 1) throw DomainError("schedules start at k = 1");
  double v = 0.0;
  switch (step_family) {
    case StepFamily::Linear: v = k; break;
    case StepFamily::Power: v = std::ceil(std::pow(k, step_b) - 1e-12); break;
    case StepFamily::LogSquare: v = std::ceil(std::pow(std::log(k), 2) - 1e-12); break;
  }
  return std::max(1LL, static_cast<long long>(v));
}

std::string Schedule::name() const {
  const std::string m = mu_family == MuFamily::Power ? fmt::format("mu={}*k^{}", mu_c, mu_b)
                                                     : fmt::format("mu={}*2^k", mu_c);
  std::string s;
  switch (step_family) {
    case StepFamily::Linear: s = "n=k"; break;
    case StepFamily::Power: s = fmt::format("n=ceil(k^{})", step_b); break;
    case StepFamily::LogSquare: s = "n=ceil(ln(k)^2)"; break;
  }
  return m + "," + s;
}

void Schedule::validate(int q, int d, int k_max) const {
  require_supported_d(d);
  const double floor = d * (q - 0.5) + 1.0 - 1.0;  // rho - 1
  for (int k = 1; k <= k_max; ++k) {
    if (!(mu(k) > floor)) {
      throw DomainError(fmt::format("schedule {}: mu_{} = {} not above rho - 1 = {}", name(), k, mu(k), floor));
    }
  }
}

ConeMatrix second_moment(const RadialLaw& nu) {
  Matrix sum = Matrix::Zero(nu.q(), nu.q());
  for (const auto& a : nu.atoms()) sum += a.weight * a.point.matrix() * a.point.matrix();
  return ConeMatrix(0.5 * (sum + sum.adjoint()), nu.d());
}

double laplace_transform(const RadialLaw& nu, const ConeMatrix& x) {
  double sum = 0.0;
  for (const auto& a : nu.atoms()) sum += a.weight * std::exp(-frob_inner(x.matrix(), a.point.matrix()));
  return sum;
}

double laplace_transform(std::span<const ConeMatrix> sample, const ConeMatrix& x) {
  if (sample.empty()) throw DomainError("laplace_transform: empty sample");
  double sum = 0.0;
  for (const ConeMatrix& y : sample) sum += std::exp(-frob_inner(x.matrix(), y.matrix()));
  return sum / static_cast<double>(sample.size());
}

std::vector<ConeMatrix> cone_basis(int q, int d) {
  require_supported_d(d);
  std::vector<ConeMatrix> basis;
  for (int i = 0; i < q; ++i) {
    Matrix e = Matrix::Zero(q, q);
    e(i, i) = 1.0;
    basis.emplace_back(e, d);
  }
  std::vector<Complex> units{Complex(1.0, 0.0)};
  if (d == 2) units.emplace_back(0.0, 1.0);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      for (const Complex l : units) {
        Matrix m = Matrix::Identity(q, q);
        m(i, j) = 0.5 * l;
        m(j, i) = 0.5 * std::conj(l);
        basis.emplace_back(m, d);
      }
    }
  }
  return basis;
}

double gram_condition(const std::vector<ConeMatrix>& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(i, j) = frob_inner(basis[static_cast<std::size_t>(i)].matrix(), basis[static_cast<std::size_t>(j)].matrix());
    }
  }
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
  if (!(ev(0) > 0.0)) return std::numeric_limits<double>::infinity();
  return ev(n - 1) / ev(0);
}

namespace {

std::vector<int> log_grid(int lo, int hi, int points) {
  std::vector<int> ks;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const int k = static_cast<int>(std::lround(std::exp((1.0 - t) * std::log(lo) + t * std::log(hi))));
    if (ks.empty() || k > ks.back()) ks.push_back(k);
  }
  return ks;
}

// Rounding in n_k makes the ratios jitter slightly; allow for it.
constexpr double kMonotoneSlack = 0.05;

bool diverging(const std::vector<double>& log_ratio) {
  const std::size_t mid = log_ratio.size() / 2;
  for (std::size_t i = mid + 1; i < log_ratio.size(); ++i) {
    if (log_ratio[i] < log_ratio[i - 1] - kMonotoneSlack) return false;
  }
  return log_ratio.back() - log_ratio[mid] >= std::log(2.0);
}

ConditionDiagnostic diagnose(std::string name, const std::vector<int>& ks, const std::function<double(int)>& f) {
  ConditionDiagnostic c;
  c.condition = std::move(name);
  c.ks = ks;
  for (int k : ks) c.log_ratio.push_back(f(k));
  c.diverging = diverging(c.log_ratio);
  return c;
}

}  // namespace

std::vector<ConditionDiagnostic> schedule_conditions(const Schedule& schedule, int k_max) {
  if (k_max < 10) throw DomainError("schedule_conditions: k_max must be at least 10");
  const std::vector<int> ks = log_grid(10, k_max, 25);
  auto lnln = [](int k) { return std::log(std::log(static_cast<double>(k))); };

  ConditionDiagnostic first;
  for (int a = 1; a <= 8; ++a) {
    first = diagnose("mu_k/k^a", ks, [&](int k) { return schedule.log_mu(k) - a * std::log(k); });
    if (!first.diverging) {
      first.failing_power = a;
      break;
    }
  }
  first.condition = first.failing_power > 0 ? fmt::format("mu_k/k^{}", first.failing_power) : "mu_k/k^8";
  return {first,
          diagnose("mu_k/(n_k ln k)^2", ks,
                   [&](int k) {
                     return schedule.log_mu(k) - 2.0 * std::log(static_cast<double>(schedule.n(k))) - 2.0 * lnln(k);
                   }),
          diagnose("n_k/(ln k)^2", ks,
                   [&](int k) { return std::log(static_cast<double>(schedule.n(k))) - 2.0 * lnln(k); })};
}

namespace {

double deviation(const ConeMatrix& s, double steps, const Matrix& root) {
  return hs_norm(s.matrix() / std::sqrt(steps) - root);
}

}  // namespace

ExperimentReport wlln_experiment(const RadialLaw& nu, const Schedule& schedule, const std::vector<int>& ks,
                                 std::size_t replicates, double epsilon, std::uint64_t seed, int threads) {
  if (ks.empty() || replicates == 0) throw DomainError("wlln_experiment: empty k grid or no replicates");
  const int k_max = *std::max_element(ks.begin(), ks.end());
  schedule.validate(nu.q(), nu.d(), k_max);
  const Matrix root = psd_sqrt(second_moment(nu)).matrix();
  const auto reps = static_cast<double>(replicates);

  ExperimentReport report;
  report.seed = seed;
  for (int k : ks) {
    if (k < 1) throw DomainError("wlln_experiment: k must be positive");
    const StructureParams params(nu.q(), nu.d(), schedule.mu(k));
    const auto paths = walk_replicates(nu, params, k, replicates, seed, fmt::format("wlln/{}", k), threads);
    double hits = 0.0;
    MeanAccumulator dev;
    for (const WalkPath& p : paths) {
      const double dk = deviation(p.steps.back(), k, root);
      hits += dk > epsilon ? 1.0 : 0.0;
      dev.add(dk);
    }
    const double prob = hits / reps;
    const auto r = static_cast<long long>(replicates);
    report.rows.push_back({"wlln", k, params.mu(), k, r, "tail_prob", prob, std::sqrt(prob * (1.0 - prob) / reps)});
    report.rows.push_back({"wlln", k, params.mu(), k, r, "mean_deviation", dev.mean, dev.estimate().std_error});
  }
  return report;
}

std::vector<double> slln_deviations(const RadialLaw& nu, const Schedule& schedule, int k_max, std::uint64_t seed,
                                    std::uint64_t path) {
  if (k_max < 1) throw DomainError("slln: k_max must be positive");
  schedule.validate(nu.q(), nu.d(), k_max);
  const Matrix root = psd_sqrt(second_moment(nu)).matrix();
  Rng rng = make_rng(seed, "slln", path);
  std::vector<double> d(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 1; k <= k_max; ++k) {
    const long long n = schedule.n(k);
    const WalkPath w = walk_simulate(nu, StructureParams(nu.q(), nu.d(), schedule.mu(k)), static_cast<int>(n), rng);
    d[static_cast<std::size_t>(k)] = deviation(w.steps.back(), static_cast<double>(n), root);
  }
  return d;
}

ExperimentReport slln_experiment(const RadialLaw& nu, const Schedule& schedule, int k_max, std::uint64_t seed,
                                 std::uint64_t path) {
  const std::vector<double> d = slln_deviations(nu, schedule, k_max, seed, path);
  std::vector<double> tail(d.size(), 0.0);
  for (int k = k_max; k >= 1; --k) {
    const auto i = static_cast<std::size_t>(k);
    tail[i] = std::max(d[i], i + 1 < d.size() ? tail[i + 1] : 0.0);
  }
  ExperimentReport report;
  report.seed = seed;
  for (int k = 1; k <= k_max; ++k) {
    const auto i = static_cast<std::size_t>(k);
    report.rows.push_back({"slln", k, schedule.mu(k), schedule.n(k), 1, "deviation", d[i], 0.0});
    report.rows.push_back({"slln", k, schedule.mu(k), schedule.n(k), 1, "tail_sup", tail[i], 0.0});
  }
  const auto conditions = schedule_conditions(schedule, std::max(k_max, kConditionHorizon));
  for (std::size_t c = 0; c < conditions.size(); ++c) {
    const ConditionDiagnostic& cond = conditions[c];
    const std::string tag = fmt::format("condition{}", c + 1);
    for (std::size_t j = 0; j < cond.ks.size(); ++j) {
      const int k = cond.ks[j];
      report.rows.push_back({"slln_" + tag, k, schedule.mu(k), schedule.n(k), 0, "log_ratio", cond.log_ratio[j], 0.0});
    }
    report.rows.push_back({"slln_" + tag, cond.ks.back(), 0.0, 0, 0, "diverging_heuristic",
                           cond.diverging ? 1.0 : 0.0, 0.0});
  }
  return report;
}

Estimate free_energy_empirical(const RadialLaw& nu, double mu, long long n, double t, std::size_t replicates,
                               std::uint64_t seed, int threads) {
  if (nu.q() != 1) throw UnsupportedRankError("free energy is only defined for q = 1");
  if (n < 1) throw DomainError("free_energy_empirical: n must be positive");
  if (t == 0.0) return {0.0, 0.0};
  const StructureParams params(1, nu.d(), mu);
  const MeanAccumulator acc = chunked_monte_carlo<MeanAccumulator>(
      replicates, seed, "free_energy", threads, [&](Rng& rng, std::size_t count, MeanAccumulator& a) {
        for (std::size_t i = 0; i < count; ++i) {
          const double s = walk_simulate(nu, params, static_cast<int>(n), rng).steps.back().trace();
          a.add(std::exp(t * s * s));
        }
      });
  const Estimate m = acc.estimate();
  const auto nn = static_cast<double>(n);
  return {std::log(m.value) / nn, m.std_error / (m.value * nn)};
}

namespace {

void require_rank_one(const RadialLaw& nu) {
  if (nu.q() != 1) throw UnsupportedRankError("free energy is only defined for q = 1");
}

// Tilted mean of s^2 and log-partition at t.
std::pair<double, double> tilted(const RadialLaw& nu, double t) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& a : nu.atoms()) top = std::max(top, t * std::pow(a.point.trace(), 2));
  double z = 0.0, m = 0.0;
  for (const auto& a : nu.atoms()) {
    const double s2 = std::pow(a.point.trace(), 2);
    const double w = a.weight * std::exp(t * s2 - top);
    z += w;
    m += w * s2;
  }
  return {m / z, top + std::log(z)};
}

}  // namespace

double free_energy_limit(const RadialLaw& nu, double t) {
  require_rank_one(nu);
  return tilted(nu, t).second;
}

double rate_function(const RadialLaw& nu, double s, double t_lo, double t_hi) {
  require_rank_one(nu);
  if (!(t_lo < t_hi)) throw DomainError("rate_function: empty search interval");
  auto f = [&](double t) { return s * t - tilted(nu, t).second; };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = t_lo, b = t_hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10 * (1.0 + std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  const double t = 0.5 * (a + b);
  const double edge = 1e-6 * (t_hi - t_lo);
  const double slope_hi = s - tilted(nu, t_hi).first;
  const double slope_lo = s - tilted(nu, t_lo).first;
  if ((t_hi - t < edge && slope_hi > 1e-9) || (t - t_lo < edge && slope_lo < -1e-9)) {
    return std::numeric_limits<double>::infinity();
  }
  double best = f(t);
  if (t_lo <= 0.0 && 0.0 <= t_hi) best = std::max(best, 0.0);
  return best;
}

}  // namespace conewalk
