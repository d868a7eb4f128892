#include "qsp/magnus.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsp/error.hpp"

namespace qsp {

namespace {

const cplx I{0.0, 1.0};

bool hermitian(const CMatrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace

CMatrix FiniteLevelSystem::hamiltonian(const std::vector<double>& h) const {
  if (h.size() != controls.size()) throw ValidationError("control amplitude count mismatch");
  CMatrix out = drift;
  for (std::size_t j = 0; j < controls.size(); ++j) out += h[j] * controls[j];
  return out;
}

void FiniteLevelSystem::validate() const {
  if (drift.rows() < 2 || drift.rows() != drift.cols())
    throw ValidationError("finite-level system needs a square drift of dimension >= 2");
  if (!hermitian(drift)) throw ValidationError("drift Hamiltonian is not Hermitian");
  for (const auto& c : controls) {
    if (c.rows() != drift.rows() || c.cols() != drift.cols())
      throw ValidationError("control Hamiltonian dimension mismatch");
    if (!hermitian(c)) throw ValidationError("control Hamiltonian is not Hermitian");
  }
}

CMatrix magnus_second_term(const FiniteLevelSystem& sys, const ControlFn& h, double t,
                           double delta) {
  const double off = std::sqrt(3.0) / 6.0 * delta;
  const CMatrix a1 = -I * sys.hamiltonian(h(t + delta / 2.0 - off));
  const CMatrix a2 = -I * sys.hamiltonian(h(t + delta / 2.0 + off));
  return -(std::sqrt(3.0) / 12.0) * delta * delta * (a1 * a2 - a2 * a1);
}

CMatrix magnus_omega(const FiniteLevelSystem& sys, const ControlFn& h, double t, double delta,
                     int order) {
  if (!(delta > 0.0)) throw ValidationError("Magnus step must be positive");
  if (order == 1) return -I * delta * sys.hamiltonian(h(t + delta / 2.0));
  if (order != 2) throw ValidationError("Magnus order must be 1 or 2");
  const double off = std::sqrt(3.0) / 6.0 * delta;
  const CMatrix a1 = -I * sys.hamiltonian(h(t + delta / 2.0 - off));
  const CMatrix a2 = -I * sys.hamiltonian(h(t + delta / 2.0 + off));
  return 0.5 * delta * (a1 + a2) - (std::sqrt(3.0) / 12.0) * delta * delta * (a1 * a2 - a2 * a1);
}

MagnusResult magnus_propagate(const FiniteLevelSystem& sys, const ControlFn& h, double T,
                              int steps, int order) {
  if (steps < 1) throw ValidationError("Magnus propagation needs steps >= 1");
  if (!(T > 0.0)) throw ValidationError("horizon T must be positive");
  sys.validate();
  const double delta = T / steps;
  MagnusResult r;
  r.order = order;
  r.u = CMatrix::Identity(sys.dim(), sys.dim());
  for (int n = 0; n < steps; ++n) {
    const CMatrix om = magnus_omega(sys, h, n * delta, delta, order);
    r.u = om.exp() * r.u;
  }
  r.omega = r.u.log();
  return r;
}

MagnusResult magnus_propagate(const FiniteLevelSystem& sys, const ControlSignal& eta, double T,
                              int steps, int order) {
  auto par = eta.par;
  par.horizon = T;
  const auto& params = eta.params;
  const std::size_t nc = sys.controls.size();
  return magnus_propagate(
      sys, [&](double t) { return std::vector<double>(nc, par.eval(params, t)); }, T, steps,
      order);
}

CMatrix exact_expm(const CMatrix& h, double t) {
  if (h.rows() != h.cols() || h.rows() > 64) throw ValidationError("exact_expm needs square d <= 64");
  if (!hermitian(h)) throw ValidationError("exact_expm needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& w = es.eigenvalues();
  CVector ph(w.size());
  for (int i = 0; i < w.size(); ++i) ph[i] = std::polar(1.0, -w[i] * t);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

double frobenius_objective(const CMatrix& u, const CMatrix& target) {
  return (u - target).norm();
}

double state_fidelity(const CMatrix& u, const CVector& psi0, const CVector& target) {
  return std::norm(target.dot(u * psi0));
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -I, I, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace qsp
