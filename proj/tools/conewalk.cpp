// conewalk: command line front end for the experiments and the acceptance
// check. Flags override fields of the --config file.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "conewalk/cli.hpp"

namespace {

template <class T>
void add_flag_value(CLI::App& app, const std::string& flag, std::optional<T>& target, const std::string& help) {
  app.add_option(flag, target, help);
}

template <class T>
void apply(const std::optional<T>& value, T& field, conewalk::ConfigOrigins& origins, const std::string& key,
           const std::string& flag) {
  if (!value) return;
  field = *value;
  origins[key] = flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on matrix cones: Bessel functions, Dunkl limits and laws of large numbers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed, samples, replicates;
  std::optional<std::string> out, grid;
  std::optional<int> threads, q, d, steps, k_max, p;
  std::optional<double> mu, epsilon, tol;
  std::optional<long long> n;
  std::optional<std::vector<double>> xi, eta;

  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  add_flag_value(app, "--seed", seed, "master seed");
  add_flag_value(app, "--out", out, "output directory (stdout when empty)");
  add_flag_value(app, "--threads", threads, "worker threads, 0 = CONEWALK_THREADS or all cores");
  add_flag_value(app, "--q", q, "rank");
  add_flag_value(app, "--d", d, "1 real, 2 complex");
  add_flag_value(app, "--mu", mu, "index");
  add_flag_value(app, "--grid", grid, "a:b:step or comma list");
  add_flag_value(app, "--samples", samples, "Monte Carlo samples");
  add_flag_value(app, "--replicates", replicates, "replicate paths");
  add_flag_value(app, "--steps", steps, "walk length");
  add_flag_value(app, "--k-max", k_max, "last schedule index");
  add_flag_value(app, "--p", p, "walk: orbit walk in p x q matrices when positive");
  add_flag_value(app, "--epsilon", epsilon, "lln tail threshold");
  add_flag_value(app, "--tol", tol, "series tail tolerance");
  add_flag_value(app, "--n", n, "ldp walk length");
  app.add_option("--xi", xi, "dunkl chamber point")->delimiter(',');
  app.add_option("--eta", eta, "dunkl chamber point")->delimiter(',');

  app.add_subcommand("bessel", "matrix Bessel function: series, classical and Monte Carlo");
  app.add_subcommand("dunkl", "Dunkl-type Bessel function against its type A limit");
  app.add_subcommand("walk", "sample paths of the radial random walk");
  app.add_subcommand("lln", "weak law of large numbers along a schedule");
  app.add_subcommand("slln", "strong law of large numbers along a schedule");
  app.add_subcommand("ldp", "free energy and rate function, q = 1");
  app.add_subcommand("check", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return conewalk::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  conewalk::RunConfig config;
  conewalk::ConfigOrigins origins;
  try {
    if (!config_path.empty()) config = conewalk::load_config(config_path, &origins);
    if (!config.experiment.empty() && config.experiment != command) {
      throw conewalk::ConfigError(origins["experiment"], "config is for \"" + config.experiment +
                                                             "\" but the subcommand is \"" + command + "\"");
    }
  } catch (const conewalk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return conewalk::kExitConfig;
  }
  config.experiment = command;
  apply(seed, config.seed, origins, "seed", "--seed");
  apply(out, config.out, origins, "out", "--out");
  apply(threads, config.threads, origins, "threads", "--threads");
  apply(q, config.q, origins, "q", "--q");
  apply(d, config.d, origins, "d", "--d");
  apply(mu, config.mu, origins, "mu", "--mu");
  apply(grid, config.grid, origins, "grid", "--grid");
  apply(samples, config.samples, origins, "samples", "--samples");
  apply(replicates, config.replicates, origins, "replicates", "--replicates");
  apply(steps, config.steps, origins, "steps", "--steps");
  apply(k_max, config.k_max, origins, "k_max", "--k-max");
  apply(p, config.p, origins, "p", "--p");
  apply(epsilon, config.epsilon, origins, "epsilon", "--epsilon");
  apply(tol, config.tol, origins, "tol", "--tol");
  apply(n, config.n, origins, "n", "--n");
  apply(xi, config.xi, origins, "xi", "--xi");
  apply(eta, config.eta, origins, "eta", "--eta");

  return conewalk::run_command(config, std::cout, std::cerr, &origins);
}
