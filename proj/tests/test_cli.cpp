#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "conewalk/cli.hpp"

using namespace conewalk;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run_command(c, out, err);
  return {code, out.str(), err.str()};
}

const char* kBernoulli = R"({
  "experiment": "ldp",
  "q": 1,
  "mu": 1000000,
  "atoms": [
    {"weight": 0.5, "diag": [0]},
    {"weight": 0.5, "diag": [1]}
  ],
  "grid": "-1:1:1",
  "s_grid": "0.25,0.5,0.75",
  "replicates": 4000,
  "n": 20
})";

}  // namespace

TEST_CASE("config echo round-trips") {
  RunConfig c;
  c.experiment = "dunkl";
  c.q = 2;
  c.d = 2;
  c.mu = 40.5;
  c.xi = {1.0, 0.25};
  c.eta = {0.5, 0.0};
  c.atoms = {{0.25, {{1, 0}, {0, 2}}, {{0, 0.5}, {-0.5, 0}}}, {0.75, {{3, 0}, {0, 0}}, {}}};
  c.grid = "40:80:20";
  c.seed = 7;
  c.out = "somewhere";
  CHECK(parse_config(config_echo(c)) == c);
  CHECK(parse_config(config_echo(RunConfig{})) == RunConfig{});
}

TEST_CASE("config hash ignores out and threads only") {
  RunConfig a, b;
  b.out = "x";
  b.threads = 3;
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 1;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("config errors carry the line") {
  ConfigOrigins origins;
  const std::string text = "{\n  \"q\": 2,\n  \"mu\": 9,\n  \"sigma\": 1\n}\n";
  try {
    parse_config(text, "run.json", &origins);
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(e.where() == "run.json:4");
  }
  try {
    parse_config("{\n  \"q\": 2,\n  \"mu\": ,\n}\n", "run.json");
    FAIL("malformed JSON accepted");
  } catch (const ConfigError& e) {
    CHECK(e.where() == "run.json:3");
  }
  CHECK_THROWS_AS(parse_config("{\"q\": 1.5}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"samples\": -1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"atoms": [{"weight": 1, "diag": [1], "shape": 2}]})"), ConfigError);

  parse_config("{\n\"q\": 2,\n\n\"mu\": 9\n}", "f", &origins);
  CHECK(origins.at("q") == "f:2");
  CHECK(origins.at("mu") == "f:4");
}

TEST_CASE("grids") {
  const std::vector<double> g = parse_grid("0:4:0.25", "grid");
  REQUIRE(g.size() == 17);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(parse_grid("0.1:0.9:0.1", "s").size() == 9);
  CHECK(parse_grid("1,2.5,7", "g") == std::vector<double>{1.0, 2.5, 7.0});
  CHECK_THROWS_AS(parse_grid("1:0:0.1", "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1:0", "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1", "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1,x", "g"), ConfigError);
}

TEST_CASE("bessel q = 1 matches the classical function") {
  RunConfig c;
  c.experiment = "bessel";
  c.mu = 5.0;
  c.samples = 4000;
  const Run r = run(c);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("# conewalk config_hash=", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 18);
  CHECK(rows[0] == std::vector<std::string>{"t", "series", "tail_bound", "classical", "mc", "mc_stderr"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double series = std::stod(rows[i][1]), classical = std::stod(rows[i][3]);
    const double mc = std::stod(rows[i][4]), se = std::stod(rows[i][5]);
    CHECK(std::abs(series - classical) <= 1e-9);
    CHECK(std::abs(mc - series) <= 5.0 * se + 1e-12);
  }
}

TEST_CASE("exit codes") {
  RunConfig c;
  c.experiment = "bessel";
  c.mu = 0.2;
  ConfigOrigins origins{{"mu", "run.json:3"}};
  std::ostringstream out, err;
  CHECK(run_command(c, out, err, &origins) == kExitConfig);
  CHECK(err.str().find("run.json:3") != std::string::npos);

  c.mu = 5.0;
  c.grid = "60";
  c.samples = 10;
  const Run r = run(c);
  CHECK(r.code == kExitConvergence);
  CHECK(r.err.find("certified bound achieved") != std::string::npos);

  c = RunConfig{};
  c.experiment = "ldp";
  c.q = 2;
  CHECK(run(c).code == kExitConfig);

  c = RunConfig{};
  c.experiment = "dunkl";
  c.q = 2;
  c.xi = {0.5, 1.0};
  c.eta = {1.0, 0.0};
  c.mu = 40.0;
  CHECK(run(c).code == kExitConfig);
  c.xi = {1.0, 0.5};
  c.mu = 3.0;
  CHECK(run(c).code == kExitConfig);

  c = RunConfig{};
  c.experiment = "walk";
  c.atoms = {{1.0, {{1, 2}, {2, 1}}, {}}};
  CHECK(run(c).code == kExitConfig);

  c = RunConfig{};
  c.experiment = "nonsense";
  CHECK(run(c).code == kExitConfig);
}

TEST_CASE("runs are byte-identical for a fixed seed") {
  RunConfig c;
  c.experiment = "walk";
  c.q = 2;
  c.d = 2;
  c.mu = 6.0;
  c.steps = 5;
  c.replicates = 6;
  c.threads = 1;
  const Run a = run(c);
  c.threads = 3;
  const Run b = run(c);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  c.seed += 1;
  CHECK(run(c).out != a.out);

  RunConfig l;
  l.experiment = "lln";
  l.grid = "5,10";
  l.replicates = 30;
  CHECK(run(l).out == run(l).out);
}

TEST_CASE("output directory holds the CSV and the config echo") {
  const auto dir = std::filesystem::temp_directory_path() / "conewalk_test_cli_out";
  std::filesystem::remove_all(dir);
  RunConfig c;
  c.experiment = "walk";
  c.steps = 2;
  c.replicates = 2;
  c.out = dir.string();
  REQUIRE(run(c).code == kExitOk);
  CHECK(std::filesystem::exists(dir / "walk.csv"));
  std::ifstream in(dir / "config.json");
  std::stringstream echo;
  echo << in.rdbuf();
  CHECK(parse_config(echo.str()) == c);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ldp on a Bernoulli law") {
  RunConfig c = parse_config(kBernoulli);
  const Run r = run(c);
  REQUIRE(r.code == kExitOk);
  bool saw_half = false;
  for (const auto& row : csv_rows(r.out)) {
    if (row[0] == "I" && std::stod(row[1]) == 0.5) {
      CHECK(std::abs(std::stod(row[2])) < 1e-8);
      saw_half = true;
    }
    if (row[0] == "I" && std::stod(row[1]) == 0.25) {
      CHECK(std::stod(row[2]) == doctest::Approx(0.25 * std::log(0.5) + 0.75 * std::log(1.5)).epsilon(1e-6));
    }
    if (row[0] == "c") {
      const double t = std::stod(row[1]);
      CHECK(std::stod(row[2]) == doctest::Approx(std::log((1 + std::exp(t)) / 2)).epsilon(1e-12));
    }
  }
  CHECK(saw_half);
}
