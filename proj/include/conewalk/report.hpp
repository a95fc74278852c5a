#pragma once

// CSV output. Every file starts with a comment line carrying the config hash
// and master seed; floats are written with 17 significant digits so that
// identical runs produce identical bytes.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace conewalk {

struct ReportRow {
  std::string experiment;
  int k = 0;
  double mu = 0.0;
  long long n = 0;
  long long replicates = 0;
  std::string statistic;
  double value = 0.0;
  double std_error = 0.0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  std::string config_echo;  ///< filled by the caller, e.g. the CLI
};

/// "{:.17g}", with inf/-inf/nan spelled out.
std::string format_number(double x);

/// "# conewalk config_hash=<16 hex digits> seed=<seed>"
void write_csv_preamble(std::ostream& os, std::uint64_t config_hash, std::uint64_t seed);

/// Writes one CSV line; cells are emitted verbatim.
void write_csv_line(std::ostream& os, const std::vector<std::string>& cells);

/// Preamble, header experiment,k,mu,n,replicates,statistic,value,stderr,seed
/// and one line per row.
void write_report_csv(std::ostream& os, const ExperimentReport& report, std::uint64_t config_hash);

}  // namespace conewalk
