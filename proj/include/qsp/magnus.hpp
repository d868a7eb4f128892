#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qsp/control.hpp"
#include "qsp/grid_state.hpp"

namespace qsp {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// H(t) = H_0 + sum_j h_j(t) H_j on a d-level system.
struct FiniteLevelSystem {
  CMatrix drift;
  std::vector<CMatrix> controls;

  int dim() const { return static_cast<int>(drift.rows()); }
  CMatrix hamiltonian(const std::vector<double>& h) const;
  // Throws ValidationError on non-Hermitian or mismatched matrices, or d < 2.
  void validate() const;
};

// h(t) returns one amplitude per control Hamiltonian.
using ControlFn = std::function<std::vector<double>(double)>;

struct MagnusResult {
  CMatrix omega;  // log U, anti-Hermitian
  CMatrix u;
  int order = 1;
};

/// Exponent for one step [t, t + delta]. Order 1 is the midpoint rule
/// -i H(t + delta/2) delta. Order 2 uses the two Gauss-Legendre nodes t_1 < t_2:
/// delta/2 (A_1 + A_2) - sqrt(3)/12 delta^2 [A_1, A_2], A = -i H.
CMatrix magnus_omega(const FiniteLevelSystem& sys, const ControlFn& h, double t, double delta,
                     int order);

// Commutator part of the order-2 exponent alone.
CMatrix magnus_second_term(const FiniteLevelSystem& sys, const ControlFn& h, double t,
                           double delta);

MagnusResult magnus_propagate(const FiniteLevelSystem& sys, const ControlFn& h, double T,
                              int steps, int order);

// Single scalar control driving every control Hamiltonian.
MagnusResult magnus_propagate(const FiniteLevelSystem& sys, const ControlSignal& eta, double T,
                              int steps, int order);

/// exp(-i H t) by eigendecomposition; H must be Hermitian, d <= 64.
CMatrix exact_expm(const CMatrix& h, double t);

// || U - U_target ||_F
double frobenius_objective(const CMatrix& u, const CMatrix& target);

// |<target, U psi0>|^2 for unit vectors.
double state_fidelity(const CMatrix& u, const CVector& psi0, const CVector& target);

// Pauli matrices.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace qsp
