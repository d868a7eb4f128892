#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qsp/control.hpp"
#include "qsp/grid_state.hpp"
#include "qsp/potentials.hpp"

namespace qsp {

enum class BoundaryKind { dirichlet, tbc, periodic };

std::string to_string(BoundaryKind b);
BoundaryKind parse_boundary(const std::string& name);

/// Time history of one run. States are stored every `stride` steps (always
/// including the final one); boundary traces and controls at every step.
struct Trajectory {
  BoundaryKind bc = BoundaryKind::dirichlet;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Wavefunction> states;
  std::vector<cplx> trace_left;   // psi(x_l, t_n), n = 0..steps
  std::vector<cplx> trace_right;  // psi(x_r, t_n)
  std::vector<double> eta;        // control value used in step n
  std::vector<double> gauge;      // accumulated reference phase, psi = exp(-i gauge) phi

  const Wavefunction& final_state() const { return states.back(); }
  int steps() const { return static_cast<int>(eta.size()); }
};

struct EvolveOptions {
  BoundaryKind bc = BoundaryKind::dirichlet;
  int store_stride = 1;
  double t0 = 0.0;
};

/// Crank-Nicolson: (I + i dt/2 H) psi' = (I - i dt/2 H) psi with H frozen at
/// the step midpoint. With TBC closure the interior scheme runs against the
/// mean tail potential and the exact discrete boundary convolution closes
/// the last two nodes on each side.
Trajectory evolve(const Wavefunction& psi0, const Potential& pot, std::span<const double> eta_steps,
                  double T, const EvolveOptions& opt = {});
Trajectory evolve(const Wavefunction& psi0, const Potential& pot, const ControlSignal& eta,
                  double T, int steps, const EvolveOptions& opt = {});

// One step from time t. With TBC the step starts from an empty boundary history.
Wavefunction cn_step(const Wavefunction& psi, const Potential& pot, double t, double eta, double dt,
                     BoundaryKind bc);

// CSV snapshots t,x,re,im every `stride` stored states.
void write_snapshots_csv(std::ostream& os, const Trajectory& traj, int stride = 1);

}  // namespace qsp
