#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "qsp/grid_state.hpp"
#include "qsp/magnus.hpp"
#include "qsp/potentials.hpp"
#include "qsp/propagator.hpp"

namespace qsp {

/// Discretized Hamiltonian  kin (-i d/dx - n_g)^2 + V  with second-order
/// central differences; n_g enters as a Peierls phase on the hopping terms.
/// Dirichlet matrices act on the interior nodes 1..J-2 (endpoints pinned to
/// zero); periodic ones on all J nodes with corner couplings.
struct BandedHamiltonian {
  Grid grid;
  BoundaryKind bc = BoundaryKind::dirichlet;
  std::vector<double> diag;
  std::vector<cplx> off;  // H(i, i+1)
  cplx corner{0.0};       // H(0, dim-1), periodic only
  double n_g = 0.0;

  int dim() const { return static_cast<int>(diag.size()); }
  CMatrix dense() const;
};

// Throws ValidationError for a transmon with a non-periodic boundary or a
// grid/boundary mismatch. `n_g` overrides the potential's offset charge.
BandedHamiltonian hamiltonian_matrix(const Potential& pot, const Grid& grid, BoundaryKind bc,
                                     std::optional<double> n_g = std::nullopt, double t = 0.0,
                                     double eta = 0.0);

struct EigenBasis {
  std::vector<double> energies;
  std::vector<Wavefunction> states;
  BoundaryKind bc = BoundaryKind::dirichlet;

  int size() const { return static_cast<int>(energies.size()); }
};

/// k lowest eigenpairs, orthonormal in the trapezoid inner product, with the
/// largest-magnitude component of each state real and positive.
EigenBasis eigenstates(const BandedHamiltonian& h, int k);

// The k lowest eigenvalues only.
std::vector<double> eigenvalues(const BandedHamiltonian& h, int k);

/// omega_0 (n + 1/2) - (E_C/12)(6 n^2 + 6 n + 3), omega_0 = sqrt(8 E_J E_C),
/// measured from the bottom of the cosine well.
double transmon_asymptotic_levels(const TransmonParams& p, int n);

std::vector<cplx> expand_in_eigenbasis(const Wavefunction& psi, const EigenBasis& basis);

/// spectrum.csv: n,E_numeric[,E_formula,rel_error]. With transmon params the
/// formula is shifted by -E_J to the absolute energy scale and rel_error is
/// relative to the numeric energy above the well bottom.
void write_spectrum_csv(std::ostream& os, const std::vector<double>& energies,
                        const TransmonParams* transmon);

}  // namespace qsp
