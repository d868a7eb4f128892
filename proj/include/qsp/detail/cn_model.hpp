#pragma once

// Internal: the fully assembled Crank-Nicolson scheme for one run, shared by
// the forward propagator and the adjoint sweep.

#include <span>
#include <vector>

#include "qsp/grid_state.hpp"
#include "qsp/potentials.hpp"
#include "qsp/propagator.hpp"

namespace qsp::detail {

/// Tridiagonal matrix with optional corner entries (cyclic systems).
/// lo[j] = A(j, j-1), up[j] = A(j, j+1), top_right = A(0, J-1),
/// bottom_left = A(J-1, 0).
struct Tridiag {
  std::vector<cplx> lo, di, up;
  cplx top_right{0.0};
  cplx bottom_left{0.0};
};

void solve_inplace(const Tridiag& a, std::vector<cplx>& rhs);
Tridiag conj_transpose(const Tridiag& a);

struct CnModel {
  Grid grid;
  BoundaryKind bc = BoundaryKind::dirichlet;
  double dt = 0.0;
  double t0 = 0.0;
  int steps = 0;
  double kin = 1.0;
  cplx h_up{0.0};  // H(j, j+1)
  cplx h_lo{0.0};  // H(j+1, j)
  double h_diag = 0.0;  // kinetic part of H(j, j)

  std::vector<double> eta;
  std::vector<double> coupling;   // c(x_j)
  std::vector<double> base;       // static base potential, empty if time dependent
  std::vector<double> v_gauge;    // per step
  std::vector<double> gauge;      // accumulated phase, size steps+1

  // TBC data: kernels of length steps+1 and lag-phase tables.
  std::vector<cplx> ell_l, ell_r;
  std::vector<double> ph_l, ph_r;  // size steps+1; all zero for static tails

  const Potential* pot = nullptr;

  // W_j = V(x_j, t_{n+1/2}, eta_n) - v_gauge_n
  std::vector<double> step_potential(int n) const;
  Tridiag lhs(int n, const std::vector<double>& w) const;
  // B_n phi restricted to the equation rows (boundary rows get 0).
  std::vector<cplx> apply_rhs(int n, const std::vector<double>& w, std::span<const cplx> phi) const;
  // Coefficient multiplying phi^{n+1-k} (node 1 or J-2) in the boundary row of step n.
  cplx hist(Side side, int n, int k) const;
  bool equation_row(int j) const;
};

CnModel build_model(const Grid& grid, const Potential& pot, std::span<const double> eta,
                    double dt, double t0, BoundaryKind bc);

}  // namespace qsp::detail
