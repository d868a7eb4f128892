#include <iostream>

#include <CLI11.hpp>

#include "qsp/cli.hpp"
#include "qsp/error.hpp"
#include "qsp/log.hpp"

int main(int argc, char** argv) {
  namespace cli = qsp::cli;
  CLI::App app{"Optimal control of 1D quantum states"};
  app.set_version_flag("--version", cli::version_string());
  app.require_subcommand(1);

  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "quiet, warn or info")
      ->check(CLI::IsMember({"quiet", "warn", "info"}));

  std::string config, out;
  std::optional<std::uint64_t> seed;

  auto* solve = app.add_subcommand("solve", "Optimize the control and write results");
  solve->add_option("--config", config)->required()->check(CLI::ExistingFile);
  solve->add_option("--out", out)->required();
  solve->add_option("--seed", seed, "Overrides the config seed");

  auto* grad = app.add_subcommand("gradcheck", "Compare adjoint and finite-difference gradients");
  grad->add_option("--config", config)->required()->check(CLI::ExistingFile);
  grad->add_option("--out", out);

  auto* spec = app.add_subcommand("spectrum", "Lowest eigenvalues of the static Hamiltonian");
  spec->add_option("--config", config)->required()->check(CLI::ExistingFile);
  spec->add_option("--out", out)->required();

  auto* sim = app.add_subcommand("simulate", "Forward evolution with a fixed control");
  sim->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_validation;
  }

  qsp::set_log_level(log_level == "quiet"  ? qsp::LogLevel::quiet
                     : log_level == "info" ? qsp::LogLevel::info
                                           : qsp::LogLevel::warn);

  cli::RunConfig cfg;
  try {
    cfg = cli::load_config(config);
  } catch (const qsp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_validation;
  }

  if (*solve) return cli::run_solve(cfg, out, seed);
  if (*grad) return cli::run_gradcheck(cfg, out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out));
  if (*spec) return cli::run_spectrum(cfg, out);
  return cli::run_simulate(cfg, out);
}
