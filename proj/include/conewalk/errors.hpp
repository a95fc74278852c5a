#pragma once

#include <stdexcept>
#include <string>

namespace conewalk {

/// Shape mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of an operation (index too small, matrix not
/// positive definite, partition too long, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated series could not certify the requested tail bound below the
/// weight cap. Carries the best bound that was achieved.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

/// Rejection sampler gave up (acceptance rate too small).
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Near-coincident eigenvalues make an alternating-sum formula unusable.
class IllConditionedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation restricted to a particular rank.
class UnsupportedRankError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace conewalk
