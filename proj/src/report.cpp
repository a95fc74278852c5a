#include "conewalk/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace conewalk {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

void write_csv_preamble(std::ostream& os, std::uint64_t config_hash, std::uint64_t seed) {
  os << fmt::format("# conewalk config_hash={:016x} seed={}\n", config_hash, seed);
}

void write_csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) os << ',';
    os << cells[i];
  }
  os << '\n';
}

void write_report_csv(std::ostream& os, const ExperimentReport& report, std::uint64_t config_hash) {
  write_csv_preamble(os, config_hash, report.seed);
  write_csv_line(os, {"experiment", "k", "mu", "n", "replicates", "statistic", "value", "stderr", "seed"});
  for (const ReportRow& r : report.rows) {
    write_csv_line(os, {r.experiment, std::to_string(r.k), format_number(r.mu), std::to_string(r.n),
                        std::to_string(r.replicates), r.statistic, format_number(r.value),
                        format_number(r.std_error), std::to_string(report.seed)});
  }
}

}  // namespace conewalk
