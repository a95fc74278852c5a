#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "conewalk/errors.hpp"
#include "conewalk/jack.hpp"
#include "oracles/jack_monomial.hpp"
#include "support/generators.hpp"

using namespace conewalk;
using conewalk::testing::random_cone;
using conewalk::testing::uniform;

namespace {

std::vector<double> random_vector(int n, Rng& rng, double lo = -1.0, double hi = 2.0) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

double relative_error(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("partition basics") {
  const Partition p({3, 1, 0, 0});
  CHECK(p.length() == 2);
  CHECK(p.weight() == 4);
  CHECK(p.conjugate() == Partition({2, 1, 1}));
  CHECK(p[5] == 0);
  CHECK_THROWS_AS(Partition({1, 2}), DomainError);
  CHECK_THROWS_AS(Partition({2, -1}), DomainError);
}

TEST_CASE("partitions_of_weight") {
  const auto zero = partitions_of_weight(0, 3);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].empty());

  const auto three = partitions_of_weight(3, 2);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == Partition({3}));
  CHECK(three[1] == Partition({2, 1}));

  // Brute force: every non-increasing triple (a, b, c) summing to 8.
  int brute = 0;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c <= b; ++c) brute += a + b + c == 8 ? 1 : 0;
  CHECK(brute == 10);
  const auto eight = partitions_of_weight(8, 3);
  CHECK(eight.size() == 10);
  CHECK(std::is_sorted(eight.begin(), eight.end(), std::greater<>()));
  for (const Partition& p : eight) {
    CHECK(p.weight() == 8);
    CHECK(p.length() <= 3);
  }
}

TEST_CASE("gen_pochhammer") {
  CHECK(gen_pochhammer(3.3, Partition(), 2.0) == 1.0);
  const double mu = 4.7;
  CHECK(gen_pochhammer(mu, Partition({2}), 2.0) == doctest::Approx(mu * (mu + 1)));
  CHECK(gen_pochhammer(mu, Partition({1, 1}), 1.0) == doctest::Approx(mu * (mu - 1.0)));
  CHECK(gen_pochhammer(mu, Partition({1, 1}), 2.0) == doctest::Approx(mu * (mu - 0.5)));
  CHECK(gen_pochhammer(5.0, Partition({2, 1}), 2.0) == doctest::Approx(135.0));
}

TEST_CASE("jack_C small cases") {
  const std::vector<double> xi{0.3, -1.2, 2.5};
  for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
    CHECK(jack_C(Partition({1}), alpha, xi) == doctest::Approx(0.3 - 1.2 + 2.5));
  }
  // Zonal polynomials of degree 2 in two variables (alpha = 2).
  const std::vector<double> x2{1.5, 0.5};
  CHECK(jack_C(Partition({2}), 2.0, x2) ==
        doctest::Approx(1.5 * 1.5 + 0.5 * 0.5 + 2.0 / 3.0 * 1.5 * 0.5));
  CHECK(jack_C(Partition({1, 1}), 2.0, x2) == doctest::Approx(4.0 / 3.0 * 1.5 * 0.5));
  CHECK_THROWS_AS(jack_C(Partition({1, 1, 1}), 2.0, x2), DomainError);
}

TEST_CASE("jack_C agrees with the monomial-expansion oracle") {
  Rng rng(17);
  // lambda = (2), alpha = 2, xi = (1, 1)
  const std::vector<double> ones{1.0, 1.0};
  CHECK(jack_C(Partition({2}), 2.0, ones) == doctest::Approx(oracle::jack_C({2}, 2.0, ones)).epsilon(1e-13));

  for (int n : {1, 2, 3, 4}) {
    for (double alpha : {0.5, 1.0, 2.0, 2.0 / 3.0}) {
      const std::vector<double> xi = random_vector(n, rng);
      for (int k = 0; k <= 7; ++k) {
        for (const Partition& lambda : partitions_of_weight(k, n)) {
          const double got = jack_C(lambda, alpha, xi);
          const double want = oracle::jack_C(lambda.parts(), alpha, xi);
          CAPTURE(lambda.to_string());
          CAPTURE(alpha);
          CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
        }
      }
    }
  }
}

TEST_CASE("normalization: sum of C over |lambda| = k is (sum xi)^k") {
  Rng rng(23);
  for (int n : {1, 2, 3, 5}) {
    for (double alpha : {1.0, 2.0, 0.7}) {
      const auto table = JackTable::get(alpha, n, 12);
      for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> xi = random_vector(n, rng, 0.0, 1.0);
        double s = 0.0;
        for (double x : xi) s += x;
        const std::vector<double> c = table->evaluate(xi);
        for (int k = 0; k <= 12; ++k) {
          double total = 0.0;
          for (std::size_t i = table->weight_begin(k); i < table->weight_end(k); ++i) total += c[i];
          CHECK(relative_error(total, std::pow(s, k)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("homogeneity and symmetry") {
  Rng rng(29);
  for (double alpha : {1.0, 2.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> xi = random_vector(3, rng);
      const double c = uniform(rng, 0.2, 3.0);
      std::vector<double> scaled = xi;
      for (double& x : scaled) x *= c;
      for (const Partition& lambda : partitions_of_weight(6, 3)) {
        const double base = jack_C(lambda, alpha, xi);
        CHECK(std::abs(jack_C(lambda, alpha, scaled) - std::pow(c, 6) * base) <=
              1e-10 * (1e-6 + std::abs(std::pow(c, 6) * base)) + 1e-12);
        std::vector<double> perm = xi;
        std::next_permutation(perm.begin(), perm.end());
        CHECK(std::abs(jack_C(lambda, alpha, perm) - base) <= 1e-12 * (1.0 + std::abs(base)));
      }
    }
  }
}

TEST_CASE("zonal_Z is conjugation invariant and dominated at -y") {
  Rng rng(31);
  for (int d : {1, 2}) {
    const StructureParams params(3, d, 10.0);
    CHECK(zonal_Z(Partition({2, 1}), HermitianMatrix::identity(3, d), params) ==
          doctest::Approx(jack_C(Partition({2, 1}), params.alpha(), std::vector<double>{1, 1, 1})));
    for (int trial = 0; trial < 10; ++trial) {
      const ConeMatrix y = random_cone(3, d, rng);
      const Matrix u = haar_unitary(3, d, rng);
      const HermitianMatrix rotated(u * y.matrix() * u.adjoint(), d);
      const HermitianMatrix negated(-y.matrix(), d);
      for (int k = 1; k <= 5; ++k) {
        for (const Partition& lambda : partitions_of_weight(k, 3)) {
          const double z = zonal_Z(lambda, y.hermitian(), params);
          CHECK(std::abs(zonal_Z(lambda, rotated, params) - z) <= 1e-10 * (1.0 + std::abs(z)));
          CHECK(std::abs(zonal_Z(lambda, negated, params)) <= z * (1.0 + 1e-10));
        }
      }
    }
  }
}

TEST_CASE("table cache is shared and concurrent fills agree") {
  const auto a = JackTable::get(2.0, 2, 20);
  const auto b = JackTable::get(2.0, 2, 31);
  CHECK(a.get() == b.get());
  CHECK(a->max_weight() == 32);

  std::vector<std::shared_ptr<const JackTable>> got(8);
  parallel_for(got.size(), 4, [&](std::size_t i) { got[i] = JackTable::get(1.0 / 3.0, 3, 10); });
  for (const auto& t : got) CHECK(t.get() == got[0].get());
}
