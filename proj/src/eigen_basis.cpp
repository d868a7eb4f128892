#include "qsp/eigen_basis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qsp/error.hpp"

namespace qsp {

CMatrix BandedHamiltonian::dense() const {
  const int n = dim();
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off[i];
    m(i + 1, i) = std::conj(off[i]);
  }
  if (bc == BoundaryKind::periodic) {
    m(0, n - 1) += corner;
    m(n - 1, 0) += std::conj(corner);
  }
  return m;
}

BandedHamiltonian hamiltonian_matrix(const Potential& pot, const Grid& grid, BoundaryKind bc,
                                     std::optional<double> n_g, double t, double eta) {
  if (pot.periodic() && bc != BoundaryKind::periodic)
    throw ValidationError("transmon Hamiltonian requires the periodic boundary");
  if (bc == BoundaryKind::tbc)
    throw ValidationError("eigenproblems need a dirichlet or periodic boundary");
  if ((bc == BoundaryKind::periodic) != grid.periodic())
    throw ValidationError("periodic boundary requires a periodic grid and vice versa");

  BandedHamiltonian h;
  h.grid = grid;
  h.bc = bc;
  h.n_g = n_g.value_or(pot.n_g());
  const double dx = grid.dx();
  const double kin = pot.kinetic();
  const cplx hop = -kin / (dx * dx) * std::polar(1.0, -h.n_g * dx);
  const int first = bc == BoundaryKind::periodic ? 0 : 1;
  const int last = bc == BoundaryKind::periodic ? grid.size() - 1 : grid.size() - 2;
  for (int j = first; j <= last; ++j)
    h.diag.push_back(2.0 * kin / (dx * dx) + pot.value(grid.node(j), t, eta));
  h.off.assign(h.diag.size() - 1, hop);
  // H(0, J-1) couples node 0 to its left neighbour J-1.
  if (bc == BoundaryKind::periodic) h.corner = std::conj(hop);
  return h;
}

namespace {

// Real symmetric tridiagonal problem for non-periodic grids: the Peierls
// phases are removed by the gauge psi_j = exp(i n_g (x_j - x_1)) chi_j.
bool gauge_real(const BandedHamiltonian& h) { return h.bc != BoundaryKind::periodic; }

void fix_phase(std::vector<cplx>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
  const cplx ph = std::abs(v[best]) > 0 ? std::conj(v[best]) / std::abs(v[best]) : cplx{1.0};
  for (auto& x : v) x *= ph;
}

Wavefunction embed(const BandedHamiltonian& h, const std::vector<cplx>& v) {
  const Grid& g = h.grid;
  std::vector<cplx> out(g.size(), cplx{0.0});
  const int first = h.bc == BoundaryKind::periodic ? 0 : 1;
  for (std::size_t i = 0; i < v.size(); ++i) out[first + i] = v[i];
  Wavefunction w(g, std::move(out));
  const double n = norm(w);
  w *= 1.0 / n;
  auto vals = w.values();
  std::vector<cplx> tmp(vals.begin(), vals.end());
  fix_phase(tmp);
  return Wavefunction(g, std::move(tmp));
}

Eigen::VectorXd real_diag(const BandedHamiltonian& h) {
  return Eigen::Map<const Eigen::VectorXd>(h.diag.data(), h.dim());
}

Eigen::VectorXd real_off(const BandedHamiltonian& h) {
  Eigen::VectorXd e(h.dim() - 1);
  for (int i = 0; i + 1 < h.dim(); ++i) e[i] = -std::abs(h.off[i]);
  return e;
}

}  // namespace

std::vector<double> eigenvalues(const BandedHamiltonian& h, int k) {
  if (k < 1 || k > h.dim()) throw ValidationError("requested eigenpair count out of range");
  Eigen::VectorXd w;
  if (gauge_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(real_diag(h), real_off(h), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
    w = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.dense(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    w = es.eigenvalues();
  }
  return std::vector<double>(w.data(), w.data() + k);
}

EigenBasis eigenstates(const BandedHamiltonian& h, int k) {
  if (k < 1 || k > h.dim()) throw ValidationError("requested eigenpair count out of range");
  EigenBasis b;
  b.bc = h.bc;
  if (gauge_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(real_diag(h), real_off(h), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
    const double dx = h.grid.dx();
    // off = -|off| e^{-i n_g dx}: undo the gauge on the real eigenvectors.
    const double twist = h.off.empty() ? 0.0 : -std::arg(-h.off[0]) / dx;
    for (int i = 0; i < k; ++i) {
      std::vector<cplx> v(h.dim());
      for (int j = 0; j < h.dim(); ++j)
        v[j] = es.eigenvectors()(j, i) * std::polar(1.0, twist * j * dx);
      b.energies.push_back(es.eigenvalues()[i]);
      b.states.push_back(embed(h, v));
    }
    return b;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.dense());
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  for (int i = 0; i < k; ++i) {
    std::vector<cplx> v(es.eigenvectors().col(i).data(),
                        es.eigenvectors().col(i).data() + h.dim());
    b.energies.push_back(es.eigenvalues()[i]);
    b.states.push_back(embed(h, v));
  }
  return b;
}

double transmon_asymptotic_levels(const TransmonParams& p, int n) {
  const double w0 = std::sqrt(8.0 * p.e_j * p.e_c);
  return w0 * (n + 0.5) - p.e_c / 12.0 * (6.0 * n * n + 6.0 * n + 3.0);
}

std::vector<cplx> expand_in_eigenbasis(const Wavefunction& psi, const EigenBasis& basis) {
  std::vector<cplx> a;
  a.reserve(basis.states.size());
  for (const auto& s : basis.states) a.push_back(inner_product(s, psi));
  return a;
}

void write_spectrum_csv(std::ostream& os, const std::vector<double>& energies,
                        const TransmonParams* transmon) {
  os.precision(12);
  os << (transmon ? "n,E_numeric,E_formula,rel_error\n" : "n,E_numeric\n");
  for (std::size_t n = 0; n < energies.size(); ++n) {
    os << n << ',' << energies[n];
    if (transmon) {
      const double f = -transmon->e_j + transmon_asymptotic_levels(*transmon, static_cast<int>(n));
      const double rel = std::abs(energies[n] - f) / std::abs(energies[n] + transmon->e_j);
      os << ',' << f << ',' << rel;
    }
    os << '\n';
  }
}

}  // namespace qsp
