#include <cmath>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "conewalk/errors.hpp"
#include "conewalk/limits.hpp"
#include "support/generators.hpp"

using namespace conewalk;
using conewalk::testing::random_cone;

namespace {

ConeMatrix scalar(double x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return ConeMatrix(m, 1);
}

RadialLaw bernoulli() { return RadialLaw({{0.5, scalar(0.0)}, {0.5, scalar(1.0)}}); }

Schedule power_schedule(double c, double b, Schedule::StepFamily steps = Schedule::StepFamily::Linear,
                        double step_b = 1.0) {
  Schedule s;
  s.mu_family = Schedule::MuFamily::Power;
  s.mu_c = c;
  s.mu_b = b;
  s.step_family = steps;
  s.step_b = step_b;
  return s;
}

Schedule doubling_schedule(Schedule::StepFamily steps = Schedule::StepFamily::Linear) {
  Schedule s;
  s.mu_family = Schedule::MuFamily::Exponential;
  s.step_family = steps;
  return s;
}

// Legendre transform on a dense grid, independent of the library search.
double grid_rate(const RadialLaw& nu, double s) {
  double best = -1e300;
  for (int i = -200000; i <= 200000; ++i) {
    const double t = i * 1e-4;
    best = std::max(best, s * t - free_energy_limit(nu, t));
  }
  return best;
}

}  // namespace

TEST_CASE("schedules") {
  const Schedule a = power_schedule(2.0, 1.5);
  CHECK(a.mu(4) == doctest::Approx(16.0));
  CHECK(a.n(7) == 7);
  const Schedule b = doubling_schedule(Schedule::StepFamily::LogSquare);
  CHECK(b.mu(10) == doctest::Approx(1024.0));
  CHECK(b.n(1) == 1);
  CHECK(b.n(20) == static_cast<long long>(std::ceil(std::pow(std::log(20.0), 2))));
  CHECK(std::isfinite(b.log_mu(5000)));
  CHECK(power_schedule(1.0, 0.5, Schedule::StepFamily::Power, 0.5).n(10) == 4);
  CHECK_THROWS_AS(power_schedule(0.4, 0.0).validate(1, 1, 5), DomainError);
  CHECK_NOTHROW(power_schedule(0.6, 0.0).validate(1, 1, 5));
  CHECK_THROWS_AS(power_schedule(1.0, 1.0).validate(2, 2, 5), DomainError);  // rho - 1 = 3
}

TEST_CASE("second moment and Laplace transform") {
  Rng rng(3);
  const ConeMatrix s = random_cone(2, 2, rng);
  CHECK((second_moment(RadialLaw::dirac(s)).matrix() - s.matrix() * s.matrix()).norm() <= 1e-14);
  const RadialLaw half({{0.5, ConeMatrix::zero(2, 1)}, {0.5, ConeMatrix::identity(2, 1)}});
  CHECK((second_moment(half).matrix() - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-15);

  const RadialLaw mix({{0.3, random_cone(2, 1, rng)}, {0.7, random_cone(2, 1, rng)}});
  const Matrix sigma2 = second_moment(mix).matrix();
  Matrix mean = Matrix::Zero(2, 2);
  Matrix sq = Matrix::Zero(2, 2);
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const Matrix& x = mix.draw(rng).matrix();
    const Matrix x2 = x * x;
    mean += x2;
    sq += x2.cwiseProduct(x2);
  }
  mean /= n;
  sq /= n;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double se = std::sqrt((sq(i, j).real() - std::pow(mean(i, j).real(), 2)) / n);
      CHECK(std::abs(mean(i, j).real() - sigma2(i, j).real()) <= 3 * se + 1e-15);
    }
  }

  CHECK(laplace_transform(mix, ConeMatrix::zero(2, 1)) == 1.0);
  const ConeMatrix x = random_cone(2, 2, rng);
  CHECK(laplace_transform(RadialLaw::dirac(s), x) == doctest::Approx(std::exp(-frob_inner(x.matrix(), s.matrix()))));
  const std::vector<ConeMatrix> sample{s, s, x};
  const double emp = laplace_transform(sample, x);
  CHECK(emp == doctest::Approx((2 * std::exp(-frob_inner(x.matrix(), s.matrix())) +
                                std::exp(-frob_inner(x.matrix(), x.matrix()))) / 3));
  CHECK(emp > 0.0);
  CHECK(emp <= 1.0);
}

TEST_CASE("Taylor remainder of the Laplace transform is fourth order") {
  // int exp(-<sx, sx>) dnu = L_{nu o s^2}(x^2) = 1 - tr(x sigma^2 x) + R(x) with
  // R(hx)/h^4 -> (1/2) int tr(x s^2 x)^2 dnu.
  Rng rng(8);
  for (int d : {1, 2}) {
    const ConeMatrix a = random_cone(2, d, rng), b = random_cone(2, d, rng);
    const RadialLaw nu({{0.4, a}, {0.6, b}});
    const Matrix a2 = a.matrix() * a.matrix(), b2 = b.matrix() * b.matrix();
    const RadialLaw squares({{0.4, ConeMatrix(a2, d)}, {0.6, ConeMatrix(b2, d)}});
    const Matrix sigma2 = second_moment(nu).matrix();
    Matrix x0 = random_cone(2, d, rng).matrix();
    x0 /= std::sqrt(hs_norm(x0 * sigma2 * x0));
    const double lead = 0.5 * (0.4 * std::pow((x0 * a2 * x0).trace().real(), 2) +
                               0.6 * std::pow((x0 * b2 * x0).trace().real(), 2));
    double prev_error = 1e300;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
      const Matrix x = h * x0;
      const double remainder = laplace_transform(squares, ConeMatrix(x * x, d)) - 1.0 + (x * sigma2 * x).trace().real();
      const double error = std::abs(remainder / std::pow(h, 4) - lead);
      CAPTURE(h);
      CHECK(error < prev_error);
      prev_error = error;
    }
    CHECK(prev_error <= 0.05 * lead);
  }
}

TEST_CASE("cone basis") {
  const auto b1 = cone_basis(1, 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].matrix()(0, 0) == 1.0);
  for (int q : {1, 2, 3, 4}) {
    for (int d : {1, 2}) {
      const auto basis = cone_basis(StructureParams(q, d, 20.0));
      CHECK(basis.size() == static_cast<std::size_t>(q + d * q * (q - 1) / 2));
      for (const ConeMatrix& m : basis) CHECK(eigenvalues_of(m.hermitian()).minCoeff() >= 0.0);
      const double cond = gram_condition(basis);
      CHECK(std::isfinite(cond));
      CHECK(cond < 1e5);
    }
  }
  const auto b21 = cone_basis(2, 1);
  CHECK(b21[2].matrix()(0, 1) == Complex(0.5, 0.0));
  CHECK(b21[2].matrix()(0, 0) == Complex(1.0, 0.0));
  // duplicating an element makes the Gram matrix singular
  std::vector<ConeMatrix> dup = b21;
  dup.push_back(b21[0]);
  CHECK(gram_condition(dup) > 1e12);
}

TEST_CASE("schedule condition diagnostics") {
  for (const auto& c : schedule_conditions(doubling_schedule(), kConditionHorizon)) {
    CAPTURE(c.condition);
    CHECK(c.diverging);
  }
  const auto quad = schedule_conditions(power_schedule(1.0, 2.0), kConditionHorizon);
  CHECK_FALSE(quad[0].diverging);
  CHECK(quad[0].failing_power == 2);  // k^2 / k^2 stays bounded
  const auto logsq = schedule_conditions(doubling_schedule(Schedule::StepFamily::LogSquare), kConditionHorizon);
  CHECK(logsq[0].diverging);
  CHECK(logsq[1].diverging);
  CHECK_FALSE(logsq[2].diverging);
  CHECK_THROWS_AS(schedule_conditions(doubling_schedule(), 9), DomainError);
}

TEST_CASE("weak law") {
  const RadialLaw nu = RadialLaw::dirac(scalar(1.0));
  const ExperimentReport r = wlln_experiment(nu, power_schedule(1.0, 1.0), {25, 100, 400}, 200, 0.1, 2024);
  std::vector<double> tail;
  for (const ReportRow& row : r.rows) {
    if (row.statistic == "tail_prob") tail.push_back(row.value);
  }
  REQUIRE(tail.size() == 3);
  CHECK(tail[2] <= 0.05);
  CHECK(tail[1] <= tail[0]);
  CHECK(tail[2] <= tail[1]);

  const ExperimentReport again = wlln_experiment(nu, power_schedule(1.0, 1.0), {25, 100, 400}, 200, 0.1, 2024, 3);
  std::ostringstream a, b;
  write_report_csv(a, r, 1);
  write_report_csv(b, again, 1);
  CHECK(a.str() == b.str());
}

TEST_CASE("strong law trend") {
  const RadialLaw nu = RadialLaw::dirac(scalar(1.0));
  int success = 0;
  for (std::uint64_t path = 0; path < 20; ++path) {
    const auto d = slln_deviations(nu, doubling_schedule(), 20, 99, path);
    success += d[20] < d[5] ? 1 : 0;
  }
  CHECK(success >= 18);

  Rng crng(4);
  const ConeMatrix c = random_cone(2, 2, crng);
  const auto d1 = slln_deviations(RadialLaw::dirac(c), power_schedule(5.0, 1.0), 1, 1);
  CHECK(d1[1] <= 1e-12);

  const ExperimentReport rep = slln_experiment(nu, doubling_schedule(), 20, 99, 3);
  int verdicts = 0;
  for (const ReportRow& row : rep.rows) verdicts += row.statistic == "diverging_heuristic" ? 1 : 0;
  CHECK(verdicts == 3);
  double last_sup = 1e300;
  for (const ReportRow& row : rep.rows) {
    if (row.statistic == "tail_sup") {
      CHECK(row.value <= last_sup);
      last_sup = row.value;
    }
  }
}

TEST_CASE("free energy") {
  const RadialLaw one = RadialLaw::dirac(scalar(1.0));
  CHECK(free_energy_empirical(bernoulli(), 10.0, 5, 0.0, 100, 1).value == 0.0);
  CHECK(free_energy_empirical(one, 1e6, 1, 0.7, 100, 1).value == doctest::Approx(0.7).epsilon(1e-12));
  for (double t : {-1.0, 1.0}) {
    const Estimate e = free_energy_empirical(bernoulli(), std::pow(2.0, 20), 20, t, 10000, 17);
    CAPTURE(t);
    CHECK(std::abs(e.value - std::log((1.0 + std::exp(t)) / 2.0)) <= 0.05);
    CHECK(e.std_error < 0.01);
  }
  Rng rng(1);
  CHECK_THROWS_AS(free_energy_empirical(RadialLaw::dirac(random_cone(2, 1, rng)), 9.0, 3, 1.0, 10, 1),
                  UnsupportedRankError);
  CHECK_THROWS_AS(free_energy_limit(RadialLaw::dirac(random_cone(2, 1, rng)), 1.0), UnsupportedRankError);

  for (double t : {-3.0, 0.0, 0.5, 2.0}) {
    CHECK(free_energy_limit(one, t) == doctest::Approx(t));
    CHECK(free_energy_limit(bernoulli(), t) == doctest::Approx(std::log((1.0 + std::exp(t)) / 2.0)).epsilon(1e-14));
  }
  const RadialLaw mix({{0.2, scalar(0.3)}, {0.5, scalar(1.1)}, {0.3, scalar(2.0)}});
  CHECK(free_energy_limit(mix, 0.0) == 0.0);
  for (double t = -5.0; t <= 5.0; t += 0.25) {
    const double h = 0.1;
    CHECK(free_energy_limit(mix, t + h) - 2 * free_energy_limit(mix, t) + free_energy_limit(mix, t - h) >= -1e-10);
  }
  const double h = 1e-5;
  const double slope = (free_energy_limit(mix, h) - free_energy_limit(mix, -h)) / (2 * h);
  CHECK(std::abs(slope - second_moment(mix).trace()) <= 1e-6);
}

TEST_CASE("rate function") {
  const RadialLaw one = RadialLaw::dirac(scalar(1.0));
  CHECK(rate_function(one, 1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::isinf(rate_function(one, 2.0)));
  CHECK(std::isinf(rate_function(bernoulli(), -0.1)));

  for (int i = 1; i <= 9; ++i) {
    const double s = 0.1 * i;
    const double closed = s * std::log(2 * s) + (1 - s) * std::log(2 * (1 - s));
    const double got = rate_function(bernoulli(), s);
    CAPTURE(s);
    CHECK(std::abs(got - closed) <= 1e-3);
    CHECK(std::abs(got - grid_rate(bernoulli(), s)) <= 1e-6);
    CHECK(got >= 0.0);
  }
  CHECK(rate_function(bernoulli(), 0.5) <= 1e-6);

  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const double w = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const RadialLaw nu({{w, scalar(std::uniform_real_distribution<double>(0.0, 1.0)(rng))},
                        {1 - w, scalar(std::uniform_real_distribution<double>(1.0, 2.0)(rng))}});
    CHECK(rate_function(nu, second_moment(nu).trace()) <= 1e-6);
    for (double s : {0.3, 1.0, 2.5}) CHECK(rate_function(nu, s) >= 0.0);
  }
}
