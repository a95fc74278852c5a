#pragma once

#include <vector>

namespace conewalk {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Inputs are
/// copied and sorted.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value c(alpha) sqrt((n + m)/(n m)) with
/// c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

/// Asymptotic Kolmogorov tail probability P(K > lambda).
double kolmogorov_tail(double lambda);

/// One-sample KS statistic of `sample` against a continuous CDF.
template <class Cdf>
double ks_statistic_one_sample(std::vector<double> sample, Cdf&& cdf);

}  // namespace conewalk

#include <algorithm>
#include <cmath>

template <class Cdf>
double conewalk::ks_statistic_one_sample(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    sup = std::max({sup, (i + 1.0) / n - f, f - i / n});
  }
  return sup;
}
