#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qsp/control.hpp"
#include "qsp/control_problem.hpp"
#include "qsp/magnus.hpp"

namespace qsp {

enum class OptMethod { gd_armijo, lbfgs };
enum class InitKind { zero, random };

std::string to_string(OptMethod m);
OptMethod parse_opt_method(const std::string& name);

struct OptOptions {
  OptMethod method = OptMethod::lbfgs;
  int max_iter = 100;
  double tol = 1e-6;  // on the projected-gradient 2-norm
  int memory = 10;
  InitKind init = InitKind::zero;
  std::uint64_t seed = 0;
  double armijo_c = 1e-4;
  int max_backtracks = 40;
};

struct Evaluation {
  double cost = 0.0;
  std::vector<double> grad;  // empty when not requested
  double fidelity = std::numeric_limits<double>::quiet_NaN();
};

// eval(params, need_grad)
using Objective = std::function<Evaluation(std::span<const double>, bool)>;

struct IterRecord {
  int iter = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
  double fidelity = std::numeric_limits<double>::quiet_NaN();
};

struct OptResult {
  std::vector<double> params;
  std::vector<double> cost_history;  // accepted iterates, starting with the initial guess
  std::vector<std::vector<double>> iterates;
  std::vector<IterRecord> log;
  double final_cost = 0.0;
  double final_fidelity = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  std::string termination;  // "gradient_tol", "max_iter", "line_search"
};

// Zero, or uniform in [0.1 lo, 0.1 hi] from the seed.
std::vector<double> initial_params(const ControlParametrization& par, const OptOptions& opt);

/// Projected gradient with Armijo backtracking (Barzilai-Borwein trial step),
/// or projected L-BFGS. Gradient tolerance is tested before the iteration
/// cap. Throws NumericalError on a non-finite cost.
OptResult optimize(const Objective& f, const ControlParametrization& par, const OptOptions& opt,
                   std::vector<double> x0 = {});

// Objective from a Schrodinger control problem (adjoint gradients).
Objective make_objective(const ProblemSpec& spec);
OptResult optimize(const ProblemSpec& spec, const OptOptions& opt);

/// Finite-level state transfer: 1 - |<target, U(T) psi0>|^2 + (beta/2) int eta^2,
/// with every control Hamiltonian driven by the same scalar eta(t).
struct TwoLevelProblem {
  FiniteLevelSystem sys;
  CVector psi0;
  CVector target;
  double T = 1.0;
  int steps = 100;
  int order = 2;
  double beta = 0.0;
  ControlParametrization par;
};

double two_level_fidelity(const TwoLevelProblem& pb, std::span<const double> params);
Objective make_objective(const TwoLevelProblem& pb);

// Independent runs with seeds seed0, seed0+1, ...; the best final cost wins.
// Runs execute concurrently.
std::vector<OptResult> multi_start(const Objective& f, const ControlParametrization& par,
                                   const OptOptions& opt, int starts);

// iter,cost,grad_norm,step_size,fidelity
void write_iterations_csv(std::ostream& os, const OptResult& r);

}  // namespace qsp
