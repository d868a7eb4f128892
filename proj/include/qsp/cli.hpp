#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsp/control_problem.hpp"
#include "qsp/optimizer.hpp"

namespace qsp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_threshold = 4;

inline constexpr int results_schema_version = 1;

std::string version_string();

/// Initial/target state description.
struct StateSpec {
  std::string kind = "eigenstate";  // eigenstate, gaussian, superposition, qubit,
                                    // even_superposition, qft_even, frqi
  int n = 0;
  double x0 = 0.0, sigma = 1.0, k0 = 0.0;
  std::vector<cplx> coeffs;
  int n_qubits = 1;
  std::vector<double> image_theta;
  int image_n = 0;
};

struct RunConfig {
  nlohmann::json echo;
  std::string model = "schrodinger1d";  // or two_level

  // schrodinger1d
  std::optional<Grid> grid;
  std::optional<Potential> pot;
  BoundaryKind bc = BoundaryKind::dirichlet;
  StateSpec initial, target;

  // two_level: H = (detuning/2) sigma_z + (eta/2) sigma_x
  double detuning = 0.0;
  int magnus_order = 2;

  ControlParametrization par;
  std::vector<double> control_params;  // explicit control for simulate / seed for solve
  double T = 1.0;
  int steps = 100;
  CostSpec cost;
  OptOptions opt;
  int starts = 1;
  std::uint64_t seed = 0;

  int snapshot_stride = 0;
  bool dump_kernel = false;
  std::vector<double> exterior_points;
  std::vector<cplx> exterior_s;
  std::optional<double> t_exit;

  std::vector<double> gradcheck_eps{1e-3, 1e-4, 1e-5};
  bool debug_flip_gradient_sign = false;
  double gradcheck_threshold = 1e-4;

  int levels = 10;
};

/// Parses and validates; throws ValidationError listing every problem found.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");

// Assembles the Schrodinger control problem (eigenstates, targets).
ProblemSpec build_problem(const RunConfig& cfg);
TwoLevelProblem build_two_level(const RunConfig& cfg);

// Each returns a process exit code and never throws for expected failures.
int run_solve(const RunConfig& cfg, const std::filesystem::path& out,
              std::optional<std::uint64_t> seed = std::nullopt);
int run_gradcheck(const RunConfig& cfg, const std::optional<std::filesystem::path>& out);
int run_spectrum(const RunConfig& cfg, const std::filesystem::path& out);
int run_simulate(const RunConfig& cfg, const std::filesystem::path& out);

}  // namespace qsp::cli
