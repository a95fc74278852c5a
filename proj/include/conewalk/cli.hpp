#pragma once

// Run configuration and subcommand drivers behind the conewalk executable.
//
// A config file is one flat JSON object; unknown keys are rejected. Command
// line flags override individual fields. Every CSV starts with a comment
// line holding the config hash and master seed.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace conewalk {

/// Invalid configuration. `where` is "path:line" for file errors or the
/// offending flag.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Where each field was set: "path:line" or "--flag".
using ConfigOrigins = std::map<std::string, std::string>;

struct AtomConfig {
  double weight = 1.0;
  std::vector<std::vector<double>> real;
  std::vector<std::vector<double>> imag;  ///< empty for real matrices
  bool operator==(const AtomConfig&) const = default;
};

struct RunConfig {
  std::string experiment;
  int q = 1;
  int d = 1;
  double mu = 5.0;

  // schedule for lln / slln
  std::string schedule_mu = "power";  ///< "power" (c k^b) or "doubling" (c 2^k)
  double schedule_c = 1.0;
  double schedule_b = 1.0;
  std::string schedule_n = "linear";  ///< "linear", "power" or "log_square"
  double schedule_n_b = 1.0;

  std::vector<AtomConfig> atoms;  ///< empty: the point mass at the identity

  std::string grid;               ///< "a:b:step" or "v1,v2,..."
  std::string s_grid = "0.1:0.9:0.1";
  std::vector<double> direction;  ///< bessel: diagonal direction, default identity
  std::vector<double> xi;         ///< dunkl chamber points
  std::vector<double> eta;

  std::uint64_t samples = 10000;
  std::uint64_t replicates = 200;
  int steps = 10;
  int p = 0;  ///< walk: orbit walk in M_{p,q} when positive
  int k_max = 20;
  double epsilon = 0.1;
  long long n = 20;
  double tol = 1e-12;

  std::uint64_t seed = 20240601;
  std::string out;
  int threads = 0;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a config document; `source` names it in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "config",
                       ConfigOrigins* origins = nullptr);
RunConfig load_config(const std::string& path, ConfigOrigins* origins = nullptr);

/// Sorted-key JSON echo of every field; parse_config(config_echo(c)) == c.
std::string config_echo(const RunConfig& config);

/// FNV-1a hash of the echo without the fields that cannot change results
/// (out, threads).
std::uint64_t config_hash(const RunConfig& config);

/// Expands "a:b:step" (inclusive, rounding-safe) or a comma list.
std::vector<double> parse_grid(const std::string& spec, const std::string& where);

/// Checks structure, measure and experiment-specific fields before any
/// computation; throws ConfigError located through `origins` when given.
void validate_config(const RunConfig& config, const ConfigOrigins* origins = nullptr);

/// Runs one experiment subcommand, writing CSV to `os`.
void run_experiment(const RunConfig& config, std::ostream& os);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;

/// Validates, runs and writes <out>/<experiment>.csv plus <out>/config.json
/// (or CSV to `os` when out is empty). Returns the exit code; messages go
/// to `err`.
int run_command(const RunConfig& config, std::ostream& os, std::ostream& err,
                const ConfigOrigins* origins = nullptr);

/// The acceptance suite as a table (and <out>/check.csv); exit 0 iff every
/// criterion passes.
int run_check(const RunConfig& config, std::ostream& os);

}  // namespace conewalk
