#include "conewalk/jack.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <fmt/format.h>

#include "conewalk/errors.hpp"

namespace conewalk {

namespace {

constexpr int kWeightGranularity = 16;

// Hooks of box (i, j), 1-based, in a partition with conjugate `conj`.
double upper_hook(const Partition& p, const Partition& conj, int i, int j, double alpha) {
  return conj[j - 1] - i + alpha * (p[i - 1] - j + 1);
}

double lower_hook(const Partition& p, const Partition& conj, int i, int j, double alpha) {
  return conj[j - 1] - i + 1 + alpha * (p[i - 1] - j);
}

double strip_coefficient(const Partition& lambda, const Partition& mu, double alpha) {
  const Partition lc = lambda.conjugate();
  const Partition mc = mu.conjugate();
  double beta = 1.0;
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda[i - 1]; ++j) {
      const bool same_column = lc[j - 1] == mc[j - 1];
      beta *= same_column ? upper_hook(lambda, lc, i, j, alpha) : lower_hook(lambda, lc, i, j, alpha);
      if (j <= mu[i - 1]) {
        beta /= same_column ? upper_hook(mu, mc, i, j, alpha) : lower_hook(mu, mc, i, j, alpha);
      }
    }
  }
  return beta;
}

// Partitions mu with n-1 parts interlacing lambda: lambda_{i+1} <= mu_i <= lambda_i.
void interlacing(const Partition& lambda, int n, int i, std::vector<int>& mu,
                 std::vector<Partition>& out) {
  if (i == n - 1) {
    out.emplace_back(mu);
    return;
  }
  for (int m = lambda[i]; m >= lambda[i + 1]; --m) {
    mu.push_back(m);
    interlacing(lambda, n, i + 1, mu, out);
    mu.pop_back();
  }
}

}  // namespace

JackTable::JackTable(double alpha, int n_vars, int max_weight)
    : alpha_(alpha), n_vars_(n_vars), max_weight_(max_weight) {
  weight_offsets_.push_back(0);
  std::map<std::vector<int>, std::size_t> index;
  for (int k = 0; k <= max_weight; ++k) {
    for (Partition& p : partitions_of_weight(k, n_vars)) {
      index.emplace(p.parts(), partitions_.size());
      partitions_.push_back(std::move(p));
    }
    weight_offsets_.push_back(partitions_.size());
  }

  j_to_c_.resize(partitions_.size());
  for (std::size_t idx = 0; idx < partitions_.size(); ++idx) {
    const Partition& p = partitions_[idx];
    const Partition conj = p.conjugate();
    const int k = p.weight();
    double log_j = 0.0;
    for (int i = 1; i <= p.length(); ++i) {
      for (int j = 1; j <= p[i - 1]; ++j) {
        log_j += std::log(upper_hook(p, conj, i, j, alpha)) + std::log(lower_hook(p, conj, i, j, alpha));
      }
    }
    j_to_c_[idx] = std::exp(k * std::log(alpha) + std::lgamma(k + 1.0) - log_j);
  }

  strips_.resize(static_cast<std::size_t>(n_vars));
  strip_offsets_.resize(static_cast<std::size_t>(n_vars));
  for (int n = 1; n <= n_vars; ++n) {
    auto& strips = strips_[static_cast<std::size_t>(n - 1)];
    auto& offsets = strip_offsets_[static_cast<std::size_t>(n - 1)];
    offsets.push_back(0);
    std::vector<Partition> smaller;
    std::vector<int> scratch;
    for (const Partition& lambda : partitions_) {
      if (lambda.length() <= n) {
        smaller.clear();
        interlacing(lambda, n, 0, scratch, smaller);
        for (const Partition& mu : smaller) {
          strips.push_back(Strip{index.at(mu.parts()), lambda.weight() - mu.weight(),
                                 strip_coefficient(lambda, mu, alpha)});
        }
      }
      offsets.push_back(strips.size());
    }
  }
}

std::shared_ptr<const JackTable> JackTable::get(double alpha, int n_vars, int max_weight) {
  if (!(alpha > 0.0)) throw DomainError(fmt::format("Jack parameter alpha must be positive, got {}", alpha));
  if (n_vars < 1) throw DomainError("Jack polynomials need at least one variable");
  if (max_weight < 0) throw DomainError("weight cap must be nonnegative");
  const int rounded =
      std::max(kWeightGranularity, (max_weight + kWeightGranularity - 1) / kWeightGranularity * kWeightGranularity);

  static std::mutex mutex;
  static std::map<std::tuple<double, int, int>, std::shared_ptr<const JackTable>> cache;
  const auto key = std::make_tuple(alpha, n_vars, rounded);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  // Built outside the lock; if two threads race, the first insertion wins and
  // both tables are identical anyway.
  auto table = std::make_shared<const JackTable>(alpha, n_vars, rounded);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

std::optional<std::size_t> JackTable::index_of(const Partition& p) const {
  if (p.weight() > max_weight_ || p.length() > n_vars_) return std::nullopt;
  for (std::size_t i = weight_begin(p.weight()); i < weight_end(p.weight()); ++i) {
    if (partitions_[i] == p) return i;
  }
  return std::nullopt;
}

std::vector<double> JackTable::evaluate(std::span<const double> xi, int up_to_weight) const {
  if (static_cast<int>(xi.size()) != n_vars_) {
    throw DimensionError(fmt::format("expected {} variables, got {}", n_vars_, xi.size()));
  }
  if (up_to_weight < 0 || up_to_weight > max_weight_) up_to_weight = max_weight_;
  const std::size_t count = weight_end(up_to_weight);

  std::vector<double> prev(partitions_.size(), 0.0);
  std::vector<double> cur(partitions_.size(), 0.0);
  std::vector<double> powers(static_cast<std::size_t>(up_to_weight) + 1);
  prev[0] = 1.0;  // J of the empty partition in zero variables
  for (int n = 1; n <= n_vars_; ++n) {
    const double x = xi[static_cast<std::size_t>(n - 1)];
    powers[0] = 1.0;
    for (std::size_t m = 1; m < powers.size(); ++m) powers[m] = powers[m - 1] * x;
    const auto& strips = strips_[static_cast<std::size_t>(n - 1)];
    const auto& offsets = strip_offsets_[static_cast<std::size_t>(n - 1)];
    for (std::size_t i = 0; i < count; ++i) {
      double sum = 0.0;
      for (std::size_t s = offsets[i]; s < offsets[i + 1]; ++s) {
        const Strip& st = strips[s];
        sum += prev[st.from] * powers[static_cast<std::size_t>(st.degree)] * st.beta;
      }
      cur[i] = sum;
    }
    std::swap(prev, cur);
  }
  for (std::size_t i = 0; i < count; ++i) prev[i] *= j_to_c_[i];
  return prev;
}

double jack_C(const Partition& lambda, double alpha, std::span<const double> xi) {
  if (lambda.length() > static_cast<int>(xi.size())) {
    throw DomainError(fmt::format("partition {} has more parts than the {} variables",
                                  lambda.to_string(), xi.size()));
  }
  const auto table = JackTable::get(alpha, static_cast<int>(xi.size()), lambda.weight());
  const std::vector<double> values = table->evaluate(xi, lambda.weight());
  return values[*table->index_of(lambda)];
}

double zonal_Z(const Partition& lambda, const HermitianMatrix& x, const StructureParams& params) {
  if (x.dim() != params.q()) {
    throw DimensionError(fmt::format("argument is {}x{} but q = {}", x.dim(), x.dim(), params.q()));
  }
  const RealVector ev = eigenvalues_of(x);
  return jack_C(lambda, params.alpha(), std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double gen_pochhammer(double mu, const Partition& lambda, double alpha) {
  double out = 1.0;
  for (int j = 0; j < lambda.length(); ++j) {
    const double a = mu - j / alpha;
    for (int m = 0; m < lambda[j]; ++m) out *= a + m;
  }
  return out;
}

}  // namespace conewalk
