#include "conewalk/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "conewalk/bessel.hpp"
#include "conewalk/dunkl.hpp"
#include "conewalk/errors.hpp"
#include "conewalk/hypergroup.hpp"
#include "conewalk/jack.hpp"
#include "conewalk/limits.hpp"
#include "conewalk/partitions.hpp"
#include "conewalk/stats.hpp"

namespace conewalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
double log_uniform(Rng& rng, double a, double b) { return std::exp(uniform(rng, std::log(a), std::log(b))); }

struct Tracker {
  InequalityCheck check;
  double tol;

  Tracker(std::string name, double t) : tol(t) { check.name = std::move(name); }
  void record(double excess) {
    check.worst_excess = std::max(check.worst_excess, excess);
    if (excess > tol) ++check.violations;
  }
  // lhs <= rhs up to tol (1 + |lhs| + |rhs|)
  void le(double lhs, double rhs) { record((lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs))); }
  // lhs <= rhs (1 + tol)
  void le_relative(double lhs, double rhs) { record(rhs > 0.0 ? (lhs - rhs) / rhs : (lhs > 0.0 ? 1.0 : 0.0)); }
};

Matrix random_square(int q, int d, Rng& rng) { return gaussian_matrix(q, q, d, 1.0, rng); }

}  // namespace

std::vector<InequalityCheck> inequality_suites(std::size_t samples, std::uint64_t seed, double tol) {
  Rng rng = make_rng(seed, "inequalities", 0);
  Tracker exp_power("exp lower bound (1 - z/r)^r <= e^-z", tol);
  Tracker exp_gap("exp difference 0 <= e^-z - (1 - z/r)^r <= z^2 e^-z / r", tol);
  Tracker exp_sandwich("exp sandwich (1 + z/r)^r <= e^z <= (1 + z/r)^(r + z/2)", tol);
  Tracker det1("matrix difference for Delta(I - v^*v/mu)^mu", tol);
  Tracker det2("matrix sandwich for Delta(I + v^*v/mu)^mu", tol);
  Tracker zonal("|Z_l(-y)| <= Z_l(y)", tol);
  Tracker poch("|1 - mu^|l| / (mu)_l| <= dq 2^(dq(q-1)/2) |l|^2 / mu", tol);
  Tracker poch_bound("mu^|l| / (mu)_l <= 2^(dq(q-1)/2)", tol);

  for (std::size_t i = 0; i < samples; ++i) {
    {
      const double r = log_uniform(rng, 0.05, 200.0);
      const double z = uniform(rng, -3.0 * r, r);
      exp_power.le(std::pow(1.0 - z / r, r), std::exp(-z));
    }
    {
      const double r = log_uniform(rng, 1.0, 200.0);
      const double z = uniform(rng, -r, r);
      const double diff = std::exp(-z) - std::pow(1.0 - z / r, r);
      exp_gap.le(0.0, diff);
      exp_gap.le(diff, z * z * std::exp(-z) / r);
    }
    {
      const double r = uniform(rng, 1e-3, 50.0);
      const double z = uniform(rng, 1e-3, 50.0);
      exp_sandwich.le(std::pow(1.0 + z / r, r), std::exp(z));
      exp_sandwich.le(std::exp(z), std::pow(1.0 + z / r, r + z / 2.0));
    }
    const int q = 1 + static_cast<int>(i % 3);
    const int d = 1 + static_cast<int>((i / 3) % 2);
    const Matrix eye = Matrix::Identity(q, q);
    {
      const double mu = 1.0 + log_uniform(rng, 1e-2, 1e3);
      Matrix v = random_square(q, d, rng);
      v /= spectral_norm(v);
      // half the draws fill sqrt(mu) D_q, the rest stay at unit scale
      const double scale = i % 2 == 0 ? std::sqrt(mu) * uniform(rng, 0.0, 1.0)
                                      : std::min(uniform(rng, 0.0, 3.0), std::sqrt(mu) * 0.999);
      v *= scale;
      const Matrix a = v.adjoint() * v;
      const double vv = frob_inner(v, v);
      const double lhs = std::exp(-vv) - delta_power(HermitianMatrix(eye - a / mu, d), mu);
      det1.le(0.0, lhs);
      det1.le(lhs, (a * a).trace().real() / mu * std::exp(-vv));
    }
    {
      const double mu = log_uniform(rng, 1e-2, 1e3);
      const Matrix v = random_square(q, d, rng) * uniform(rng, 0.0, 2.0);
      const Matrix a = v.adjoint() * v;
      const HermitianMatrix shifted(eye + a / mu, d);
      const double m = eigenvalues_of(HermitianMatrix(a, d))(0);
      const double e = std::exp(frob_inner(v, v));
      det2.le(delta_power(shifted, mu), e);
      det2.le(e, delta_power(shifted, mu + m / 2.0));
    }
    if (q >= 2) {
      const double alpha = 2.0 / d;
      const Matrix b = random_square(q, d, rng);
      Matrix y = b * b.adjoint();
      y *= uniform(rng, 0.1, 5.0) / y.trace().real();
      const RealVector xi = eigenvalues_of(HermitianMatrix(y, d));
      std::vector<double> plus(static_cast<std::size_t>(q)), minus(static_cast<std::size_t>(q));
      for (int j = 0; j < q; ++j) {
        plus[static_cast<std::size_t>(j)] = xi(j);
        minus[static_cast<std::size_t>(j)] = -xi(j);
      }
      const auto table = JackTable::get(alpha, q, 8);
      const std::vector<double> cp = table->evaluate(plus, 8), cm = table->evaluate(minus, 8);
      double worst = -1.0;
      for (std::size_t j = 0; j < cp.size(); ++j) {
        worst = std::max(worst, cp[j] > 0.0 ? (std::abs(cm[j]) - cp[j]) / cp[j] : 0.0);
      }
      zonal.record(worst);
    }  // q = 1 is trivial: Z_l(-y) = (-1)^|l| Z_l(y)
    {
      const StructureParams params(q, d, 10.0);
      const double mu = log_uniform(rng, params.rho(), 1e3);
      const int k = static_cast<int>(uniform(rng, 0.0, 9.0));
      const std::vector<Partition> parts = partitions_of_weight(std::min(k, 8), q);
      const Partition& lambda =
          parts[std::min(parts.size() - 1, static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(parts.size()))))];
      const double ratio = std::pow(mu, lambda.weight()) / gen_pochhammer(mu, lambda, params.alpha());
      const double two = std::pow(2.0, d * q * (q - 1) / 2.0);
      poch.le(std::abs(1.0 - ratio), d * q * two * lambda.weight() * lambda.weight() / mu);
      poch_bound.le(ratio, two);
    }
  }
  std::vector<InequalityCheck> out;
  for (Tracker* t : {&exp_power, &exp_gap, &exp_sandwich, &det1, &det2, &zonal, &poch, &poch_bound}) {
    t->check.samples = samples;
    out.push_back(t->check);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

// 1. q = 1 series against the classical Bessel function.
Outcome classical_identity(const AcceptanceOptions&) {
  double worst = 0.0;
  for (double mu : {2.0, 5.0, 10.0}) {
    const StructureParams p(1, 1, mu);
    for (int i = 0; i <= 16; ++i) {
      const double x = 0.25 * i;
      Matrix m(1, 1);
      m(0, 0) = x * x / 4.0;
      const double series = bessel_series(p, HermitianMatrix(m, 1)).value;
      worst = std::max(worst, std::abs(series - bessel_classical(mu - 1.0, x).value));
    }
  }
  return {worst <= 1e-9, fmt::format("max |J_mu(x^2/4) - j_(mu-1)(x)| = {:.3g} (tol 1e-9)", worst)};
}

// 2. sum_{|l| = k} Z_l(y) = (tr y)^k.
Outcome zonal_normalization(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "criterion", 2);
  double worst = 0.0;
  for (int q : {2, 3}) {
    for (int d : {1, 2}) {
      const StructureParams p(q, d, 50.0);
      for (int trial = 0; trial < 100; ++trial) {
        const Matrix b = random_square(q, d, rng);
        Matrix y = b * b.adjoint();
        y *= uniform(rng, 0.2, 4.0) / y.trace().real();
        const HermitianMatrix h(y, d);
        const double tr = y.trace().real();
        for (int k = 0; k <= 8; ++k) {
          double sum = 0.0;
          for (const Partition& lambda : partitions_of_weight(k, q)) sum += zonal_Z(lambda, h, p);
          worst = std::max(worst, std::abs(sum - std::pow(tr, k)) / std::pow(tr, k));
        }
      }
    }
  }
  return {worst <= 1e-8, fmt::format("max relative error {:.3g} (tol 1e-8)", worst)};
}

// 3. inequality suites
Outcome inequalities(const AcceptanceOptions& o) {
  const auto checks = inequality_suites(10000, derive_seed(o.seed, "criterion", 3));
  bool ok = true;
  std::size_t violations = 0;
  double worst = -1e300;
  for (const InequalityCheck& c : checks) {
    ok = ok && c.violations == 0;
    violations += c.violations;
    worst = std::max(worst, c.worst_excess);
  }
  return {ok, fmt::format("{} families x 10^4 draws, {} violations, worst relative excess {:.3g}", checks.size(),
                          violations, worst)};
}

// 4. mu |J_mu(mu y) - e^-tr y| / min(1, (tr y)^2) stays within a factor 4
// of its mu = 16 value.
Outcome theorem_stability(const AcceptanceOptions&) {
  const std::vector<std::pair<double, double>> grid{{0.05, 0.02}, {0.2, 0.1}, {0.5, 0.25}, {1.0, 0.5}, {1.5, 0.5},
                                                    {2.0, 1.0},   {3.0, 1.0}, {4.0, 2.0},   {5.0, 3.0}, {6.0, 4.0}};
  double lo = 1e300, hi = 0.0;
  for (const auto& [a, b] : grid) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    const ConeMatrix y(m, 1);
    const double base = theorem1_gap(StructureParams(2, 1, 16.0), y).normalized();
    for (double mu : {32.0, 64.0, 128.0, 256.0}) {
      const double r = theorem1_gap(StructureParams(2, 1, mu), y).normalized() / base;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo >= 0.25 && hi <= 4.0,
          fmt::format("normalized gap / its mu=16 value in [{:.3f}, {:.3f}] over {} points", lo, hi, grid.size())};
}

// 5. kappa_mu: q = 1 closed form against quadrature, q = 2 rate of
// mu^(dq^2/2) kappa_mu -> pi^(dq^2/2).
Outcome kappa_asymptotics(const AcceptanceOptions& o) {
  boost::math::quadrature::tanh_sinh<double> ts;
  double worst = 0.0;
  for (int d : {1, 2}) {
    for (double mu : {1.2, 2.5, 5.0, 10.0, 40.0}) {
      const StructureParams p(1, d, mu);
      const double c = mu - p.rho();
      double quad = 0.0;
      if (d == 1) {
        quad = ts.integrate([c](double v, double vc) {
          const double gap = std::abs(vc) < 0.5 ? std::abs(vc) * (2.0 - std::abs(vc)) : 1.0 - v * v;
          return std::pow(gap, c);
        }, -1.0, 1.0);
      } else {
        // s = |v|^2; the complement is 1 - s near s = 1 and -s near s = 0
        quad = kPi * ts.integrate([c](double s, double sc) { return std::pow(sc > 0.0 ? sc : 1.0 - s, c); }, 0.0, 1.0);
      }
      worst = std::max(worst, std::abs(kappa_mu(p, 0, o.seed).value - quad) / quad);
    }
  }
  bool ok = worst <= 1e-8;
  std::string detail = fmt::format("q=1 max relative error {:.3g} (tol 1e-8)", worst);
  for (int d : {1, 2}) {
    std::vector<double> xs, ys;
    bool resolved = true;
    for (double mu : {16.0, 32.0, 64.0, 128.0, 256.0}) {
      const StructureParams p(2, d, mu);
      const double power = 0.5 * p.real_dim();
      const Estimate k = kappa_mu(p, 200000, derive_seed(o.seed, "criterion5", static_cast<std::uint64_t>(mu * d)),
                                  o.threads);
      const double scale = std::pow(mu, power);
      const double diff = std::abs(scale * k.value - std::pow(kPi, power));
      resolved = resolved && diff > 3.0 * scale * k.std_error;
      xs.push_back(std::log(mu));
      ys.push_back(std::log(diff));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    ok = ok && resolved && slope <= -0.8;
    detail += fmt::format("; q=2 d={} slope {:.3f}{}", d, slope, resolved ? "" : " (differences not resolved)");
  }
  return {ok, detail};
}

// 6. series against the integral representation.
Outcome series_vs_integral(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "criterion", 6);
  const StructureParams p(2, 1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Matrix x = gaussian_matrix(2, 2, 1, 0.6, rng);
    const Matrix xx = x.adjoint() * x;
    const double series = bessel_series(p, HermitianMatrix(0.5 * (xx + xx.adjoint()), 1)).value;
    const Estimate mc = bessel_integral_mc(p, x, 1000000, derive_seed(o.seed, "criterion6", i), o.threads);
    worst = std::max(worst, std::abs(series - mc.value) / mc.std_error);
  }
  return {worst <= 3.0, fmt::format("max |series - integral| = {:.2f} standard errors (tol 3)", worst)};
}

// 7. q = 1, p = 8: hypergroup convolution against the sphere.
Outcome orbit_consistency(const AcceptanceOptions& o) {
  const StructureParams p(1, 1, 4.0);
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  const ConeMatrix unit(one, 1);
  const std::size_t n = 100000;
  Rng rng = make_rng(o.seed, "criterion", 7);
  std::vector<double> hyper(n), sphere(n);
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < n; ++i) {
    hyper[i] = convolve_sample(unit, unit, p, rng).trace();
    double first = 0.0, norm2 = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double g = normal(rng);
      if (j == 0) first = g;
      norm2 += g * g;
    }
    sphere[i] = std::sqrt(2.0 + 2.0 * first / std::sqrt(norm2));
  }
  const double crit = ks_critical_value(n, n, 0.01);
  const double ks1 = ks_statistic(hyper, sphere);

  const RadialLaw nu = RadialLaw::dirac(unit);
  const auto walks = walk_replicates(nu, p, 2, n, o.seed, "criterion7/walk", o.threads);
  const auto orbits = orbit_walk_replicates(nu, 8, 2, n, o.seed, "criterion7/orbit", o.threads);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = walks[i].steps[2].trace();
    b[i] = orbits[i].steps[2].trace();
  }
  const double ks2 = ks_statistic(a, b);
  return {ks1 < crit && ks2 < crit,
          fmt::format("KS convolution {:.4f}, 2-step walk {:.4f}, 1% critical value {:.4f}", ks1, ks2, crit)};
}

// 8. alternating sum, 0F0 series and Haar Monte Carlo for d = 2, q = 2.
Outcome harish_triangle(const AcceptanceOptions& o) {
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs{
      {{1.0, 0.5}, {2.0, 1.0}}, {{1.5, 0.8}, {1.2, 0.4}}, {{0.9, 0.3}, {2.5, 1.5}},
      {{2.0, 0.6}, {0.8, 0.3}}, {{1.2, 0.2}, {1.6, 0.9}}};
  double worst_exact = 0.0, worst_mc = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x2, e2] = pairs[i];
    std::vector<double> minus = x2;
    for (double& v : minus) v = -v;
    const double exact = harish_chandra_exact(x2, e2);
    const double series = hyper_0F0(1.0, minus, e2).value;
    const ChamberPoint xi({std::sqrt(x2[0]), std::sqrt(x2[1])});
    const ChamberPoint eta({std::sqrt(e2[0]), std::sqrt(e2[1])});
    const Estimate mc = orbit_exp_mc(xi, eta, 2, 200000, derive_seed(o.seed, "criterion8", i), o.threads);
    worst_exact = std::max(worst_exact, std::abs(exact - series));
    worst_mc = std::max({worst_mc, std::abs(mc.value - exact) / mc.std_error, std::abs(mc.value - series) / mc.std_error});
  }
  return {worst_exact <= 1e-6 && worst_mc <= 3.0,
          fmt::format("|exact - series| <= {:.3g} (tol 1e-6); Monte Carlo within {:.2f} standard errors (tol 3)",
                      worst_exact, worst_mc)};
}

Matrix scalar_matrix(double x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return m;
}

// 9. weak law along mu_k = k.
Outcome weak_law(const AcceptanceOptions& o) {
  const RadialLaw nu = RadialLaw::dirac(ConeMatrix(scalar_matrix(1.0), 1));
  Schedule s;
  const ExperimentReport r = wlln_experiment(nu, s, {25, 100, 400}, 200, 0.1, o.seed, o.threads);
  std::vector<double> tail;
  for (const ReportRow& row : r.rows) {
    if (row.statistic == "tail_prob") tail.push_back(row.value);
  }
  const bool ok = tail[2] <= 0.05 && tail[1] <= tail[0] && tail[2] <= tail[1];
  return {ok, fmt::format("tail probabilities {:.3f}, {:.3f}, {:.3f} at k = 25, 100, 400", tail[0], tail[1], tail[2])};
}

// 10. strong law trend along mu_k = 2^k, n_k = k.
Outcome strong_law(const AcceptanceOptions& o) {
  const RadialLaw nu = RadialLaw::dirac(ConeMatrix(scalar_matrix(1.0), 1));
  Schedule s;
  s.mu_family = Schedule::MuFamily::Exponential;
  int success = 0;
  for (std::uint64_t path = 0; path < 20; ++path) {
    const auto d = slln_deviations(nu, s, 20, o.seed, path);
    success += d[20] < d[5] ? 1 : 0;
  }
  return {success >= 18, fmt::format("{} of 20 paths have d_20 < d_5 (need 18)", success)};
}

// 11. free energy and rate function of the Bernoulli law.
Outcome large_deviations(const AcceptanceOptions& o) {
  const RadialLaw nu({{0.5, ConeMatrix(scalar_matrix(0.0), 1)}, {0.5, ConeMatrix(scalar_matrix(1.0), 1)}});
  double worst_c = 0.0;
  for (double t : {-1.0, 1.0}) {
    const Estimate c = free_energy_empirical(nu, std::pow(2.0, 20), 20, t, 10000,
                                             derive_seed(o.seed, "criterion11", t > 0), o.threads);
    worst_c = std::max(worst_c, std::abs(c.value - free_energy_limit(nu, t)));
  }
  double worst_i = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double s = 0.1 * i;
    const double closed = s * std::log(2.0 * s) + (1.0 - s) * std::log(2.0 * (1.0 - s));
    worst_i = std::max(worst_i, std::abs(rate_function(nu, s) - closed));
  }
  const double at_half = rate_function(nu, 0.5);
  return {worst_c <= 0.05 && worst_i <= 1e-3 && at_half <= 1e-6,
          fmt::format("|c_20 - c| <= {:.4f} (tol 0.05); |I - entropy| <= {:.3g} (tol 1e-3); I(0.5) = {:.3g}", worst_c,
                      worst_i, at_half)};
}

// 12. Dunkl gap as mu doubles.
Outcome dunkl_stability(const AcceptanceOptions& o) {
  const std::vector<std::pair<ChamberPoint, ChamberPoint>> pairs{
      {ChamberPoint({1.2, 0.6}), ChamberPoint({1.0, 0.5})}, {ChamberPoint({0.8, 0.5}), ChamberPoint({1.4, 0.3})}};
  bool ok = true;
  double lo = 1e300, hi = 0.0;
  for (int d : {1, 2}) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      double base = 0.0, base_se = 0.0;
      for (double mu : {64.0, 128.0, 256.0}) {
        const DunklGap g = corollary_gap(StructureParams(2, d, mu), pairs[i].first, pairs[i].second, 50000,
                                         derive_seed(o.seed, "criterion12", static_cast<std::uint64_t>(mu * 10 + d)),
                                         o.threads);
        const double r = g.normalized();
        const double se = g.gap_stderr / g.envelope;
        if (mu == 64.0) {
          base = r;
          base_se = se;
          continue;
        }
        ok = ok && r <= 4.0 * base + 3.0 * (se + 4.0 * base_se) && r >= base / 4.0 - 3.0 * (se + base_se / 4.0);
        lo = std::min(lo, r / base);
        hi = std::max(hi, r / base);
      }
    }
  }
  return {ok, fmt::format("normalized gap / its mu=64 value in [{:.3f}, {:.3f}]", lo, hi)};
}

struct Criterion {
  const char* name;
  double budget;
  Outcome (*run)(const AcceptanceOptions&);
};

const Criterion kCriteria[kAcceptanceCriteria] = {
    {"q=1 classical identity", 5.0, classical_identity},
    {"zonal normalization", 30.0, zonal_normalization},
    {"inequality suites", 60.0, inequalities},
    {"large-index Bessel stability", 120.0, theorem_stability},
    {"kappa_mu asymptotics", 120.0, kappa_asymptotics},
    {"series vs integral representation", 120.0, series_vs_integral},
    {"orbit consistency", 120.0, orbit_consistency},
    {"Harish-Chandra triangle", 120.0, harish_triangle},
    {"weak law of large numbers", 180.0, weak_law},
    {"strong law trend", 120.0, strong_law},
    {"large deviations", 180.0, large_deviations},
    {"Dunkl gap stability", 180.0, dunkl_stability},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kAcceptanceCriteria) throw DomainError(fmt::format("no acceptance criterion {}", id));
  const Criterion& c = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = c.name;
  result.budget_seconds = c.budget;
  const auto start = Clock::now();
  try {
    const Outcome outcome = c.run(options);
    result.passed = outcome.passed;
    result.detail = outcome.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = fmt::format("error: {}", e.what());
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (result.seconds > result.budget_seconds) {
    result.passed = false;
    result.detail += fmt::format("; over time budget");
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kAcceptanceCriteria; ++id) {
    results.push_back(run_criterion(id, options));
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_result_line(const CriterionResult& r) {
  return fmt::format("{}  {:>2}  {:<34} ({:.1f} s / {:.0f} s)  {}", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds,
                     r.budget_seconds, r.detail);
}

}  // namespace conewalk
