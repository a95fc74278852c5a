#include "conewalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "conewalk/acceptance.hpp"
#include "conewalk/bessel.hpp"
#include "conewalk/dunkl.hpp"
#include "conewalk/errors.hpp"
#include "conewalk/hypergroup.hpp"
#include "conewalk/limits.hpp"
#include "conewalk/report.hpp"

namespace conewalk {

using nlohmann::json;

namespace {

const char* const kExperiments[] = {"bessel", "dunkl", "walk", "lln", "slln", "ldp", "check"};

int line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Line of the first `"key" :` in the document.
int line_of_key(const std::string& text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = 0;
  while ((pos = text.find(quoted, pos)) != std::string::npos) {
    std::size_t after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return line_at(text, pos);
    pos += quoted.size();
  }
  return 1;
}

int as_int(const json& v) {
  if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("integer out of range");
  }
  return static_cast<int>(x);
}

std::uint64_t as_uint(const json& v) {
  if (!v.is_number_unsigned()) throw std::invalid_argument("expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double as_double(const json& v) {
  if (!v.is_number()) throw std::invalid_argument("expected a number");
  return v.get<double>();
}

std::string as_string(const json& v) {
  if (!v.is_string()) throw std::invalid_argument("expected a string");
  return v.get<std::string>();
}

std::vector<double> as_list(const json& v) {
  if (!v.is_array()) throw std::invalid_argument("expected an array of numbers");
  std::vector<double> out;
  for (const json& x : v) out.push_back(as_double(x));
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& v) {
  if (!v.is_array()) throw std::invalid_argument("expected an array of rows");
  std::vector<std::vector<double>> out;
  for (const json& row : v) out.push_back(as_list(row));
  return out;
}

AtomConfig as_atom(const json& v) {
  if (!v.is_object()) throw std::invalid_argument("each atom must be an object");
  AtomConfig a;
  bool have_point = false;
  for (const auto& [key, value] : v.items()) {
    if (key == "weight") {
      a.weight = as_double(value);
    } else if (key == "matrix") {
      a.real = as_matrix(value);
      have_point = true;
    } else if (key == "diag") {
      const std::vector<double> diag = as_list(value);
      a.real.assign(diag.size(), std::vector<double>(diag.size(), 0.0));
      for (std::size_t i = 0; i < diag.size(); ++i) a.real[i][i] = diag[i];
      have_point = true;
    } else if (key == "imag") {
      a.imag = as_matrix(value);
    } else {
      throw std::invalid_argument(fmt::format("unknown atom field \"{}\"", key));
    }
  }
  if (!have_point) throw std::invalid_argument("atom needs \"matrix\" or \"diag\"");
  return a;
}

using Setter = std::function<void(RunConfig&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment", [](RunConfig& c, const json& v) { c.experiment = as_string(v); }},
      {"q", [](RunConfig& c, const json& v) { c.q = as_int(v); }},
      {"d", [](RunConfig& c, const json& v) { c.d = as_int(v); }},
      {"mu", [](RunConfig& c, const json& v) { c.mu = as_double(v); }},
      {"schedule_mu", [](RunConfig& c, const json& v) { c.schedule_mu = as_string(v); }},
      {"schedule_c", [](RunConfig& c, const json& v) { c.schedule_c = as_double(v); }},
      {"schedule_b", [](RunConfig& c, const json& v) { c.schedule_b = as_double(v); }},
      {"schedule_n", [](RunConfig& c, const json& v) { c.schedule_n = as_string(v); }},
      {"schedule_n_b", [](RunConfig& c, const json& v) { c.schedule_n_b = as_double(v); }},
      {"atoms",
       [](RunConfig& c, const json& v) {
         if (!v.is_array()) throw std::invalid_argument("expected an array of atoms");
         c.atoms.clear();
         for (const json& a : v) c.atoms.push_back(as_atom(a));
       }},
      {"grid", [](RunConfig& c, const json& v) { c.grid = as_string(v); }},
      {"s_grid", [](RunConfig& c, const json& v) { c.s_grid = as_string(v); }},
      {"direction", [](RunConfig& c, const json& v) { c.direction = as_list(v); }},
      {"xi", [](RunConfig& c, const json& v) { c.xi = as_list(v); }},
      {"eta", [](RunConfig& c, const json& v) { c.eta = as_list(v); }},
      {"samples", [](RunConfig& c, const json& v) { c.samples = as_uint(v); }},
      {"replicates", [](RunConfig& c, const json& v) { c.replicates = as_uint(v); }},
      {"steps", [](RunConfig& c, const json& v) { c.steps = as_int(v); }},
      {"p", [](RunConfig& c, const json& v) { c.p = as_int(v); }},
      {"k_max", [](RunConfig& c, const json& v) { c.k_max = as_int(v); }},
      {"epsilon", [](RunConfig& c, const json& v) { c.epsilon = as_double(v); }},
      {"n", [](RunConfig& c, const json& v) {
         if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
         c.n = v.get<long long>();
       }},
      {"tol", [](RunConfig& c, const json& v) { c.tol = as_double(v); }},
      {"seed", [](RunConfig& c, const json& v) { c.seed = as_uint(v); }},
      {"out", [](RunConfig& c, const json& v) { c.out = as_string(v); }},
      {"threads", [](RunConfig& c, const json& v) { c.threads = as_int(v); }},
  };
  return table;
}

json atom_json(const AtomConfig& a) {
  json j = {{"weight", a.weight}, {"matrix", a.real}};
  if (!a.imag.empty()) j["imag"] = a.imag;
  return j;
}

json to_json(const RunConfig& c) {
  json atoms = json::array();
  for (const AtomConfig& a : c.atoms) atoms.push_back(atom_json(a));
  return json{{"experiment", c.experiment}, {"q", c.q},
              {"d", c.d},                   {"mu", c.mu},
              {"schedule_mu", c.schedule_mu}, {"schedule_c", c.schedule_c},
              {"schedule_b", c.schedule_b}, {"schedule_n", c.schedule_n},
              {"schedule_n_b", c.schedule_n_b}, {"atoms", atoms},
              {"grid", c.grid},             {"s_grid", c.s_grid},
              {"direction", c.direction},   {"xi", c.xi},
              {"eta", c.eta},               {"samples", c.samples},
              {"replicates", c.replicates}, {"steps", c.steps},
              {"p", c.p},                   {"k_max", c.k_max},
              {"epsilon", c.epsilon},       {"n", c.n},
              {"tol", c.tol},               {"seed", c.seed},
              {"out", c.out},               {"threads", c.threads}};
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source, ConfigOrigins* origins) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}:{}", source, line_at(text, e.byte == 0 ? 0 : e.byte - 1)),
                      "malformed JSON");
  }
  if (!j.is_object()) throw ConfigError(source + ":1", "the config must be a JSON object");
  RunConfig config;
  for (const auto& [key, value] : j.items()) {
    const std::string where = fmt::format("{}:{}", source, line_of_key(text, key));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where, fmt::format("unknown field \"{}\"", key));
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      throw ConfigError(where, fmt::format("field \"{}\": {}", key, e.what()));
    }
    if (origins != nullptr) (*origins)[key] = where;
  }
  return config;
}

RunConfig load_config(const std::string& path, ConfigOrigins* origins) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path, origins);
}

std::string config_echo(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

std::uint64_t config_hash(const RunConfig& config) {
  json j = to_json(config);
  j.erase("out");
  j.erase("threads");
  return label_hash(j.dump());
}

std::vector<double> parse_grid(const std::string& spec, const std::string& where) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw ConfigError(where, fmt::format("bad number \"{}\" in grid \"{}\"", s, spec));
    }
    return v;
  };
  std::vector<std::string> parts;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  if (spec.empty() || parts.empty()) throw ConfigError(where, "empty grid");
  std::vector<double> out;
  if (sep == ':') {
    if (parts.size() != 3) throw ConfigError(where, fmt::format("grid \"{}\" is not a:b:step", spec));
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError(where, fmt::format("grid \"{}\" needs a <= b and step > 0", spec));
    const auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 1000000) throw ConfigError(where, "grid has more than 10^6 points");
    for (long long i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    for (const std::string& p : parts) out.push_back(number(p));
  }
  return out;
}

namespace {

std::string origin(const ConfigOrigins* origins, const std::string& key) {
  if (origins != nullptr) {
    const auto it = origins->find(key);
    if (it != origins->end()) return it->second;
  }
  return fmt::format("field \"{}\"", key);
}

RadialLaw build_law(const RunConfig& c) {
  if (c.atoms.empty()) return RadialLaw::dirac(ConeMatrix::identity(c.q, c.d));
  std::vector<RadialLaw::Atom> atoms;
  for (const AtomConfig& a : c.atoms) {
    const auto q = static_cast<std::size_t>(c.q);
    auto check_shape = [&](const std::vector<std::vector<double>>& m) {
      if (m.size() != q) throw DimensionError(fmt::format("atom matrix has {} rows, expected q = {}", m.size(), q));
      for (const auto& row : m) {
        if (row.size() != q) throw DimensionError(fmt::format("atom matrix row has {} entries, expected {}", row.size(), q));
      }
    };
    check_shape(a.real);
    if (!a.imag.empty()) {
      if (c.d != 2) throw DomainError("imaginary parts need d = 2");
      check_shape(a.imag);
    }
    Matrix m(c.q, c.q);
    for (int i = 0; i < c.q; ++i) {
      for (int j = 0; j < c.q; ++j) {
        const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        m(i, j) = Complex(a.real[ui][uj], a.imag.empty() ? 0.0 : a.imag[ui][uj]);
      }
    }
    const HermitianMatrix h(m, c.d);
    if (eigenvalues_of(h).minCoeff() < -kPsdTol * (1.0 + h.matrix().norm())) {
      throw DomainError("atom matrix is not positive semidefinite");
    }
    atoms.push_back({a.weight, ConeMatrix(h)});
  }
  return RadialLaw(std::move(atoms));
}

Schedule build_schedule(const RunConfig& c) {
  Schedule s;
  if (c.schedule_mu == "power") {
    s.mu_family = Schedule::MuFamily::Power;
  } else if (c.schedule_mu == "doubling") {
    s.mu_family = Schedule::MuFamily::Exponential;
  } else {
    throw DomainError(fmt::format("schedule_mu must be \"power\" or \"doubling\", got \"{}\"", c.schedule_mu));
  }
  if (c.schedule_n == "linear") {
    s.step_family = Schedule::StepFamily::Linear;
  } else if (c.schedule_n == "power") {
    s.step_family = Schedule::StepFamily::Power;
  } else if (c.schedule_n == "log_square") {
    s.step_family = Schedule::StepFamily::LogSquare;
  } else {
    throw DomainError(fmt::format("schedule_n must be \"linear\", \"power\" or \"log_square\", got \"{}\"", c.schedule_n));
  }
  s.mu_c = c.schedule_c;
  s.mu_b = c.schedule_b;
  s.step_b = c.schedule_n_b;
  if (!(s.mu_c > 0.0)) throw DomainError("schedule_c must be positive");
  return s;
}

std::vector<double> grid_or(const RunConfig& c, const std::string& fallback, const ConfigOrigins* origins) {
  return parse_grid(c.grid.empty() ? fallback : c.grid, origin(origins, "grid"));
}

std::vector<int> integer_grid(const RunConfig& c, const std::string& fallback, const ConfigOrigins* origins) {
  std::vector<int> ks;
  for (double v : grid_or(c, fallback, origins)) {
    if (v < 1.0 || v != std::floor(v) || v > 1e7) {
      throw ConfigError(origin(origins, "grid"), fmt::format("grid value {} is not a positive integer", v));
    }
    ks.push_back(static_cast<int>(v));
  }
  return ks;
}

// Runs `f`, turning library domain errors into ConfigErrors at `key`.
template <class F>
void located(const ConfigOrigins* origins, const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin(origins, key), e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(origin(origins, key), e.what());
  }
}

}  // namespace

void validate_config(const RunConfig& c, const ConfigOrigins* origins) {
  const std::string& e = c.experiment;
  if (std::find(std::begin(kExperiments), std::end(kExperiments), e) == std::end(kExperiments)) {
    throw ConfigError(origin(origins, "experiment"), fmt::format("unknown experiment \"{}\"", e));
  }
  if (e == "check") return;
  located(origins, "d", [&] { require_supported_d(c.d); });
  if (c.q < 1) throw ConfigError(origin(origins, "q"), "q must be at least 1");
  auto positive = [&](bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(origin(origins, key), what);
  };
  positive(c.samples > 0, "samples", "samples must be positive");
  positive(c.replicates > 0, "replicates", "replicates must be positive");
  positive(c.steps >= 0, "steps", "steps must be non-negative");
  positive(c.k_max >= 1, "k_max", "k_max must be positive");
  positive(c.epsilon > 0.0, "epsilon", "epsilon must be positive");
  positive(c.n >= 1, "n", "n must be positive");
  positive(c.tol > 0.0, "tol", "tol must be positive");
  positive(c.threads >= 0, "threads", "threads must be non-negative");
  positive(c.p >= 0, "p", "p must be non-negative");

  const bool uses_mu = e == "bessel" || e == "dunkl" || e == "ldp" || (e == "walk" && c.p == 0);
  if (uses_mu) located(origins, "mu", [&] { StructureParams(c.q, c.d, c.mu); });
  if (e != "bessel" && e != "dunkl") located(origins, "atoms", [&] { build_law(c); });

  if (e == "bessel") {
    grid_or(c, "0:4:0.25", origins);
    if (!c.direction.empty()) {
      if (static_cast<int>(c.direction.size()) != c.q) {
        throw ConfigError(origin(origins, "direction"), fmt::format("direction needs q = {} entries", c.q));
      }
      for (double v : c.direction) {
        if (!(v >= 0.0)) throw ConfigError(origin(origins, "direction"), "direction entries must be non-negative");
      }
    }
  } else if (e == "dunkl") {
    located(origins, "xi", [&] {
      const ChamberPoint xi(c.xi);
      if (xi.size() != c.q) throw DimensionError(fmt::format("xi needs q = {} entries", c.q));
    });
    located(origins, "eta", [&] {
      const ChamberPoint eta(c.eta);
      if (eta.size() != c.q) throw DimensionError(fmt::format("eta needs q = {} entries", c.q));
    });
    const std::vector<double> mus = c.grid.empty() ? std::vector<double>{c.mu} : grid_or(c, "", origins);
    for (double mu : mus) {
      const std::string key = c.grid.empty() ? "mu" : "grid";
      located(origins, key, [&] {
        const StructureParams p(c.q, c.d, mu);
        if (!(mu > 2.0 * p.rho())) throw DomainError(fmt::format("dunkl needs mu > 2 rho = {}, got {}", 2 * p.rho(), mu));
      });
    }
  } else if (e == "walk") {
    if (c.p > 0 && c.p < c.q) throw ConfigError(origin(origins, "p"), "p must be at least q");
  } else if (e == "lln") {
    const std::vector<int> ks = integer_grid(c, "25,100,400", origins);
    located(origins, "schedule_mu", [&] {
      build_schedule(c).validate(c.q, c.d, *std::max_element(ks.begin(), ks.end()));
    });
  } else if (e == "slln") {
    located(origins, "schedule_mu", [&] { build_schedule(c).validate(c.q, c.d, c.k_max); });
  } else if (e == "ldp") {
    if (c.q != 1) throw ConfigError(origin(origins, "q"), "ldp is only defined for q = 1");
    grid_or(c, "-1:1:0.5", origins);
    parse_grid(c.s_grid, origin(origins, "s_grid"));
  }
}

namespace {

void run_bessel(const RunConfig& c, std::ostream& os) {
  const StructureParams params(c.q, c.d, c.mu);
  const std::vector<double> direction = c.direction.empty() ? std::vector<double>(static_cast<std::size_t>(c.q), 1.0)
                                                            : c.direction;
  write_csv_line(os, {"t", "series", "tail_bound", "classical", "mc", "mc_stderr"});
  const std::vector<double> ts = grid_or(c, "0:4:0.25", nullptr);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    Matrix arg = Matrix::Zero(c.q, c.q);
    Matrix x = Matrix::Zero(c.q, c.q);
    for (int j = 0; j < c.q; ++j) {
      const double dj = direction[static_cast<std::size_t>(j)];
      arg(j, j) = 0.25 * t * t * dj;
      x(j, j) = 0.5 * t * std::sqrt(dj);
    }
    const SeriesValue s = bessel_series(params, HermitianMatrix(arg, c.d), c.tol);
    const double classical = c.q == 1 ? bessel_classical(c.mu - 1.0, t * std::sqrt(direction[0]), c.tol).value
                                      : std::numeric_limits<double>::quiet_NaN();
    const Estimate mc = bessel_integral_mc(params, x, c.samples, derive_seed(c.seed, "bessel", i), c.threads);
    write_csv_line(os, {format_number(t), format_number(s.value), format_number(s.tail_bound), format_number(classical),
                        format_number(mc.value), format_number(mc.std_error)});
  }
}

void run_dunkl(const RunConfig& c, std::ostream& os) {
  const ChamberPoint xi(c.xi), eta(c.eta);
  const std::vector<double> mus = c.grid.empty() ? std::vector<double>{c.mu} : grid_or(c, "", nullptr);
  write_csv_line(os, {"mu", "bessel_B", "bessel_B_stderr", "psi_scaled", "psi_scaled_stderr", "type_A", "gap",
                      "gap_stderr", "envelope", "normalized"});
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const StructureParams params(c.q, c.d, mus[i]);
    const Estimate b = bessel_B_mc(xi, eta, params, c.samples, derive_seed(c.seed, "dunkl/B", i), c.threads);
    const DunklGap g = corollary_gap(params, xi, eta, c.samples, derive_seed(c.seed, "dunkl/gap", i), c.threads);
    write_csv_line(os, {format_number(mus[i]), format_number(b.value), format_number(b.std_error),
                        format_number(g.b_value), format_number(g.b_stderr), format_number(g.a_value),
                        format_number(g.gap), format_number(g.gap_stderr), format_number(g.envelope),
                        format_number(g.normalized())});
  }
}

void run_walk(const RunConfig& c, std::ostream& os) {
  const RadialLaw nu = build_law(c);
  const std::vector<WalkPath> paths =
      c.p > 0 ? orbit_walk_replicates(nu, c.p, c.steps, c.replicates, c.seed, "walk", c.threads)
              : walk_replicates(nu, StructureParams(c.q, c.d, c.mu), c.steps, c.replicates, c.seed, "walk", c.threads);
  std::vector<std::string> header{"replicate", "k", "mu", "trace", "hs_norm"};
  for (int j = 1; j <= c.q; ++j) header.push_back(fmt::format("eig_{}", j));
  write_csv_line(os, header);
  for (const WalkPath& path : paths) {
    for (std::size_t k = 0; k < path.steps.size(); ++k) {
      const ConeMatrix& s = path.steps[k];
      std::vector<std::string> row{std::to_string(path.replicate), std::to_string(k), format_number(path.mu),
                                   format_number(s.trace()), format_number(hs_norm(s.matrix()))};
      const RealVector ev = s.eigenvalues();
      for (int j = 0; j < c.q; ++j) row.push_back(format_number(ev(j)));
      write_csv_line(os, row);
    }
  }
}

void run_ldp(const RunConfig& c, std::ostream& os) {
  const RadialLaw nu = build_law(c);
  write_csv_line(os, {"quantity", "arg", "value", "stderr", "flag"});
  const std::vector<double> ts = grid_or(c, "-1:1:0.5", nullptr);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Estimate e = free_energy_empirical(nu, c.mu, c.n, ts[i], c.replicates, derive_seed(c.seed, "ldp", i),
                                             c.threads);
    // relative error of the moment-generating estimate is n * stderr
    const bool unstable = e.std_error * static_cast<double>(c.n) > 0.2;
    write_csv_line(os, {"c_k", format_number(ts[i]), format_number(e.value), format_number(e.std_error),
                        unstable ? "relative_error_above_20pct" : ""});
  }
  for (double t : ts) write_csv_line(os, {"c", format_number(t), format_number(free_energy_limit(nu, t)), "0", ""});
  for (double s : parse_grid(c.s_grid, "s_grid")) {
    write_csv_line(os, {"I", format_number(s), format_number(rate_function(nu, s)), "0", ""});
  }
}

}  // namespace

void run_experiment(const RunConfig& c, std::ostream& os) {
  write_csv_preamble(os, config_hash(c), c.seed);
  const std::string& e = c.experiment;
  if (e == "bessel") {
    run_bessel(c, os);
  } else if (e == "dunkl") {
    run_dunkl(c, os);
  } else if (e == "walk") {
    run_walk(c, os);
  } else if (e == "lln") {
    ExperimentReport r = wlln_experiment(build_law(c), build_schedule(c), integer_grid(c, "25,100,400", nullptr),
                                         c.replicates, c.epsilon, c.seed, c.threads);
    std::ostringstream body;
    write_report_csv(body, r, config_hash(c));
    // the preamble is already out
    const std::string text = body.str();
    os << text.substr(text.find('\n') + 1);
  } else if (e == "slln") {
    const RadialLaw nu = build_law(c);
    const Schedule s = build_schedule(c);
    write_csv_line(os, {"experiment", "k", "mu", "n", "replicates", "statistic", "value", "stderr", "seed"});
    for (std::uint64_t path = 0; path < c.replicates; ++path) {
      ExperimentReport r = slln_experiment(nu, s, c.k_max, c.seed, path);
      for (const ReportRow& row : r.rows) {
        const bool condition = row.experiment.rfind("slln_condition", 0) == 0;
        if (condition && path > 0) continue;
        write_csv_line(os, {condition ? row.experiment : fmt::format("slln_path{}", path), std::to_string(row.k),
                            format_number(row.mu), std::to_string(row.n), std::to_string(row.replicates),
                            row.statistic, format_number(row.value), format_number(row.std_error),
                            std::to_string(c.seed)});
      }
    }
  } else if (e == "ldp") {
    run_ldp(c, os);
  } else {
    throw ConfigError("field \"experiment\"", fmt::format("\"{}\" is not an experiment", e));
  }
}

int run_command(const RunConfig& config, std::ostream& os, std::ostream& err, const ConfigOrigins* origins) {
  try {
    validate_config(config, origins);
    if (config.experiment == "check") return run_check(config, os);
    std::ostringstream csv;
    run_experiment(config, csv);
    if (config.out.empty()) {
      os << csv.str();
    } else {
      std::filesystem::create_directories(config.out);
      const std::filesystem::path dir(config.out);
      std::ofstream(dir / (config.experiment + ".csv")) << csv.str();
      std::ofstream(dir / "config.json") << config_echo(config);
      os << fmt::format("wrote {}\n", (dir / (config.experiment + ".csv")).string());
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << fmt::format(" (certified bound achieved: {:.6g})", e.achieved_bound())
        << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

int run_check(const RunConfig& config, std::ostream& os) {
  AcceptanceOptions options;
  options.seed = config.seed;
  options.threads = config.threads;
  const auto results = run_acceptance(options, [&](const CriterionResult& r) { os << format_result_line(r) << '\n' << std::flush; });
  int passed = 0;
  for (const CriterionResult& r : results) passed += r.passed ? 1 : 0;
  os << fmt::format("{} of {} criteria passed\n", passed, results.size());
  if (!config.out.empty()) {
    std::filesystem::create_directories(config.out);
    std::ofstream csv(std::filesystem::path(config.out) / "check.csv");
    write_csv_preamble(csv, config_hash(config), config.seed);
    write_csv_line(csv, {"id", "name", "passed", "seconds", "budget_seconds", "detail"});
    for (const CriterionResult& r : results) {
      write_csv_line(csv, {std::to_string(r.id), csv_quote(r.name), r.passed ? "1" : "0", format_number(r.seconds),
                           format_number(r.budget_seconds), csv_quote(r.detail)});
    }
  }
  return passed == static_cast<int>(results.size()) ? kExitOk : kExitFailure;
}

}  // namespace conewalk
