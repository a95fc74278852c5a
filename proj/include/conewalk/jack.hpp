#pragma once

// Jack polynomials in the C normalization, sum_{|l|=k} C_l(xi) = (sum xi)^k.
//
// Evaluation uses the branching rule over horizontal strips: the J-normalized
// polynomial in n variables is a weighted sum of J-polynomials in n-1
// variables. The strip coefficients depend only on (lambda, alpha) and are
// tabulated once per (alpha, n_vars, weight cap) in a process-wide cache.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "conewalk/linalg.hpp"
#include "conewalk/partitions.hpp"

namespace conewalk {

class JackTable {
 public:
  /// Shared table for partitions of weight <= max_weight with at most
  /// n_vars parts. Thread safe; concurrent callers observe the same table.
  static std::shared_ptr<const JackTable> get(double alpha, int n_vars, int max_weight);

  double alpha() const noexcept { return alpha_; }
  int n_vars() const noexcept { return n_vars_; }
  int max_weight() const noexcept { return max_weight_; }

  /// Ordered by weight, reverse lexicographic within a weight.
  const std::vector<Partition>& partitions() const noexcept { return partitions_; }
  /// Index range [first, last) of the partitions of weight k.
  std::size_t weight_begin(int k) const { return weight_offsets_.at(static_cast<std::size_t>(k)); }
  std::size_t weight_end(int k) const { return weight_offsets_.at(static_cast<std::size_t>(k) + 1); }
  std::optional<std::size_t> index_of(const Partition& p) const;

  /// C_l(xi) for every tabulated partition of weight <= up_to_weight
  /// (default: all). xi must have n_vars entries; entries beyond the
  /// evaluated prefix are left at zero.
  std::vector<double> evaluate(std::span<const double> xi, int up_to_weight = -1) const;

  JackTable(double alpha, int n_vars, int max_weight);

 private:
  struct Strip {
    std::size_t from;  // index of the smaller partition
    int degree;        // |lambda| - |mu|
    double beta;
  };

  double alpha_;
  int n_vars_;
  int max_weight_;
  std::vector<Partition> partitions_;
  std::vector<std::size_t> weight_offsets_;
  // j_to_c_[i] converts J_lambda to C_lambda.
  std::vector<double> j_to_c_;
  // strips_[n-1] lists, for each partition with at most n parts, the
  // horizontal strips removing variable n. Flattened with offsets.
  std::vector<std::vector<Strip>> strips_;
  std::vector<std::vector<std::size_t>> strip_offsets_;
};

/// C-normalized Jack polynomial C_lambda^alpha(xi). Throws DomainError if
/// lambda has more parts than xi has entries or alpha <= 0.
double jack_C(const Partition& lambda, double alpha, std::span<const double> xi);

/// Z_lambda(x) = C_lambda^{2/d}(eigenvalues of x).
double zonal_Z(const Partition& lambda, const HermitianMatrix& x, const StructureParams& params);

/// (mu)_lambda = prod_j (mu - (j-1)/alpha)_{lambda_j}.
double gen_pochhammer(double mu, const Partition& lambda, double alpha);

}  // namespace conewalk
