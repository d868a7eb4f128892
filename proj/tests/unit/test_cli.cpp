#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsp/cli.hpp"
#include "qsp/error.hpp"

using namespace qsp;
using namespace qsp::cli;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json oscillator_config() {
  return json::parse(R"({
    "grid": {"x_l": -6, "x_r": 6, "J": 96},
    "potential": {"name": "harmonic_driven",
                  "coupling": {"kind": "window_linear", "xh_l": -3, "xh_r": 3}},
    "initial": {"kind": "eigenstate", "n": 0},
    "target": {"kind": "eigenstate", "n": 1},
    "T": 1.0,
    "steps": 40,
    "control": {"kind": "piecewise_constant", "n_intervals": 4, "bounds": [-3, 3]},
    "cost": {"alpha": 1.0, "beta": 0.01},
    "optimizer": {"max_iter": 15, "init": "random"},
    "seed": 4
  })");
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("qsp_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("a two-node grid is rejected with the field name") {
  auto j = oscillator_config();
  j["grid"]["J"] = 2;
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("grid.J"));
}

TEST_CASE("every problem is reported at once") {
  auto j = oscillator_config();
  j["grid"]["J"] = 2;
  j["steps"] = 0;
  j["cost"]["alpha"] = -1;
  j["optimizer"]["method"] = "adam";
  try {
    parse_config(j);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK_THAT(msg, ContainsSubstring("grid.J"));
    CHECK_THAT(msg, ContainsSubstring("steps"));
    CHECK_THAT(msg, ContainsSubstring("cost.alpha"));
    CHECK_THAT(msg, ContainsSubstring("optimizer.method"));
  }
}

TEST_CASE("unknown potential names list the registered families") {
  auto j = oscillator_config();
  j["potential"]["name"] = "morse";
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("fluxonium") && ContainsSubstring("piecewise_custom"));
}

TEST_CASE("control window must lie inside the domain") {
  auto j = oscillator_config();
  j["potential"]["coupling"]["xh_r"] = 9.0;
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("potential.coupling"));
}

TEST_CASE("empty control bounds") {
  auto j = oscillator_config();
  j["control"]["bounds"] = {1.0, -1.0};
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("control.bounds"));
}

TEST_CASE("transmon defaults to a periodic grid") {
  const auto c = parse_config(json::parse(R"({"potential": {"name": "transmon", "E_C": 0.2, "E_J": 10,
                                                "energy_unit_factor": 2.0}, "T": 1})"));
  REQUIRE(c.grid);
  CHECK(c.grid->periodic());
  CHECK(c.bc == BoundaryKind::periodic);
  CHECK(c.pot->transmon_params()->e_j == 20.0);
  CHECK(c.pot->kinetic() == 4.0 * 0.4);
}

TEST_CASE("two-level configs build a qubit problem") {
  const auto c = parse_config(json::parse(R"({"model": "two_level", "T": 3.14159,
      "target": {"kind": "qubit", "amplitudes": [[0, 0], [0, 1]]}})"));
  const auto pb = build_two_level(c);
  CHECK(pb.psi0[0] == cplx(1.0));
  CHECK(pb.target[1] == cplx(0.0, 1.0));
  CHECK_THROWS_AS(build_problem(c), ValidationError);
}

TEST_CASE("unnormalized superposition coefficients are rejected") {
  auto j = oscillator_config();
  j["target"] = json::parse(R"({"kind": "superposition", "coeffs": [1, 1]})");
  CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("target.coeffs"));
}

TEST_CASE("solve is reproducible and echoes config and version") {
  const auto cfg = parse_config(oscillator_config());
  const auto a = scratch("solve_a"), b = scratch("solve_b");
  REQUIRE(run_solve(cfg, a) == exit_ok);
  REQUIRE(run_solve(cfg, b) == exit_ok);
  const auto ra = json::parse(slurp(a / "results.json"));
  const auto rb = json::parse(slurp(b / "results.json"));
  CHECK(ra["params"] == rb["params"]);
  CHECK(ra["final_cost"] == rb["final_cost"]);
  CHECK(ra["schema_version"] == results_schema_version);
  for (const char* key : {"version", "status", "seed", "final_cost", "terminal_cost", "control_cost",
                          "fidelity", "iterations", "termination", "params", "config"})
    CHECK(ra.contains(key));
  CHECK(ra["config"] == oscillator_config());
  for (const char* f : {"control.csv", "iterations.csv"}) {
    const auto text = slurp(a / f);
    CHECK_THAT(text, ContainsSubstring(version_string()));
    CHECK_THAT(text, ContainsSubstring("# config: "));
  }
  // A different seed changes the random start.
  const auto c = scratch("solve_c");
  REQUIRE(run_solve(cfg, c, 99) == exit_ok);
  CHECK(json::parse(slurp(c / "results.json"))["seed"] == 99);
}

TEST_CASE("harmonic spectrum is equally spaced") {
  auto j = oscillator_config();
  j["grid"] = json::parse(R"({"x_l": -10, "x_r": 10, "J": 801})");
  j["potential"]["coupling"] = json::parse(R"({"kind": "none"})");
  j["spectrum"] = json::parse(R"({"levels": 4})");
  const auto out = scratch("spectrum");
  REQUIRE(run_spectrum(parse_config(j), out) == exit_ok);
  std::ifstream in(out / "spectrum.csv");
  std::string line;
  std::vector<double> e;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    e.push_back(std::stod(line.substr(line.find(',') + 1)));
  }
  REQUIRE(e.size() == 4);
  for (int n = 1; n < 4; ++n) CHECK(std::abs(e[n] - e[n - 1] - 2.0) < 5e-3);
}

TEST_CASE("gradcheck exit codes") {
  auto cfg = parse_config(oscillator_config());
  CHECK(run_gradcheck(cfg, std::nullopt) == exit_ok);
  cfg.debug_flip_gradient_sign = true;
  CHECK(run_gradcheck(cfg, std::nullopt) == exit_threshold);
}
