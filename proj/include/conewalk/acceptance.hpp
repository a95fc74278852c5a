#pragma once

// The acceptance suite: twelve property and oracle checks run with a fixed
// master seed, each with its own time budget. Shared by `conewalk check` and
// the acceptance test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conewalk {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  int threads = 0;
};

inline constexpr int kAcceptanceCriteria = 12;

/// Runs criterion `id` (1..12). Exceptions are caught and reported as
/// failures. A run over its budget fails.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// All criteria in order; `on_result` sees each result as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  inequality suites  (12.3 s / 60 s)  <detail>"
std::string format_result_line(const CriterionResult& result);

/// Outcome of one randomized inequality family.
struct InequalityCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  ///< largest (lhs - rhs) / (1 + |lhs| + |rhs|) seen
};

/// The scalar exponential inequalities, their matrix extensions, the
/// zonal sign bound and the Pochhammer ratio bounds, each on `samples`
/// random draws, with relative slack `tol`.
std::vector<InequalityCheck> inequality_suites(std::size_t samples, std::uint64_t seed, double tol = 1e-10);

}  // namespace conewalk
