#pragma once

#include <span>
#include <vector>

#include "qsp/control.hpp"
#include "qsp/grid_state.hpp"
#include "qsp/potentials.hpp"
#include "qsp/propagator.hpp"

namespace qsp {

/// (alpha/p) int |v(T) - target|^p dx + (beta/q) int |eta|^q dt.
/// With phase_invariant (p = 2 only) the terminal term is minimised over a
/// global phase: (alpha/2)(|v|^2 + |target|^2 - 2 |<target, v>|).
struct CostSpec {
  double alpha = 1.0;
  double beta = 0.0;
  int p = 2;
  int q = 2;
  bool phase_invariant = false;
  // Multiply the control cost by the measure of the control window.
  bool space_extended = false;

  void validate() const;
};

struct ProblemSpec {
  Potential pot;
  Wavefunction psi_ini;
  Wavefunction target;
  double T = 1.0;
  int steps = 100;
  CostSpec cost;
  BoundaryKind bc = BoundaryKind::dirichlet;
  ControlParametrization par;

  const Grid& grid() const { return psi_ini.grid(); }
  // Collects every violation into one ValidationError.
  void validate() const;
  double control_measure() const;
};

double terminal_cost(const Wavefunction& psi_T, const Wavefunction& target, int p, double alpha,
                     bool phase_invariant = false);

// (beta/q) sum_n |eta_n|^q dt * measure
double control_cost(std::span<const double> eta_steps, double dt, int q, double beta,
                    double measure = 1.0);
double control_cost(const ControlSignal& eta, double T, int steps, int q, double beta,
                    double measure = 1.0);

struct CostResult {
  double total = 0.0;
  double terminal = 0.0;
  double control = 0.0;
  double overlap = 0.0;  // |<target, v(T)>|^2
  Trajectory traj;
};

CostResult total_cost(const ProblemSpec& spec, std::span<const double> params,
                      int store_stride = 1);

struct GradientResult {
  std::vector<double> grad;
  double cost = 0.0;
  double overlap = 0.0;
  bool exact = true;  // false when the finite-difference fallback was used
};

/// Discrete adjoint of the Crank-Nicolson scheme (including the boundary
/// memory terms). Falls back to central differences with a warning when
/// p != 2, q != 2, or the transparent tails depend on the control.
GradientResult adjoint_gradient(const ProblemSpec& spec, std::span<const double> params);

bool adjoint_supported(const ProblemSpec& spec);

// Central differences, parallel across parameters.
std::vector<double> fd_gradient(const ProblemSpec& spec, std::span<const double> params,
                                double eps);

struct GradcheckEntry {
  double eps = 0.0;
  std::vector<double> fd;
  double rel_error = 0.0;  // ||adjoint - fd||_inf / ||adjoint||_inf
};

struct GradcheckReport {
  std::vector<double> adjoint;
  std::vector<GradcheckEntry> sweep;
  std::size_t best = 0;
  double max_rel_error() const { return sweep.at(best).rel_error; }
};

GradcheckReport gradcheck(const ProblemSpec& spec, std::span<const double> params,
                          const std::vector<double>& eps_list = {1e-3, 1e-4, 1e-5},
                          bool flip_sign = false);

struct SemiSpectralResult {
  double terminal = 0.0;
  double control = 0.0;
  double total = 0.0;
  Wavefunction final_state;
};

/// Terminal state through the Laplace domain: on each interval of constant
/// control, solve (H - i s) v(s) = -i v_0 with the exterior symbol closing
/// the boundary, then invert on a Talbot contour. `shift` recentres the
/// contour (e.g. -i E for a packet of energy E).
SemiSpectralResult semi_spectral_cost(const ProblemSpec& spec, std::span<const double> params,
                                      int count = 32, cplx shift = 0.0);

// Laplace-domain resolvent solve for one s; exposed for tests.
Wavefunction laplace_resolvent(const Potential& pot, const Wavefunction& v0, BoundaryKind bc,
                               double eta, double t, cplx s);

}  // namespace qsp
