#pragma once

#include <iosfwd>
#include <vector>

#include "qsp/eigen_basis.hpp"
#include "qsp/magnus.hpp"

namespace qsp {

/// n-qubit state with 2^n amplitudes, qubit 0 most significant.
struct QubitState {
  int n_qubits = 1;
  std::vector<cplx> amplitudes;

  // Throws ValidationError unless 2^n amplitudes with unit norm (1e-12).
  static QubitState make(int n_qubits, std::vector<cplx> amps);
  CVector vector() const;
};

QubitState even_superposition(int n_qubits);

// Tensor product a (x) b, a on the more significant qubits.
QubitState tensor(const QubitState& a, const QubitState& b);

/// Entries w^{jk} / 2^{n/2}, w = exp(2 pi i / 2^n).
CMatrix qft_matrix(int n_qubits);
QubitState apply_qft(const QubitState& s);

/// 2^n x 2^n image of colour angles, row-major.
struct FRQIImage {
  int n = 1;
  std::vector<double> theta;
};

/// (1/2^n) sum_i (cos t_i |0> + sin t_i |1>) |i>, colour qubit most
/// significant: amplitude index c * 4^n + i.
QubitState frqi_encode(const FRQIImage& img);

// Angles folded to [0, pi/2]. Throws ValidationError when a pixel block's
// norm differs from 1/2^n by more than 1e-6.
std::vector<double> frqi_decode(const QubitState& s, int n);

// Whitespace/comma separated grayscale matrix with values in [0,1],
// mapped to theta = (pi/2) v. Must be 2^n x 2^n.
FRQIImage read_image_text(std::istream& is);

/// sum_i a_i phi_i over the first coeffs.size() eigenstates.
Wavefunction superposition_target(const std::vector<cplx>& coeffs, const EigenBasis& basis);

// One qubit on the two lowest levels: alpha|0> + beta|1> -> alpha phi_0 + beta phi_1.
Wavefunction qubit_to_wavefunction(const QubitState& s, const EigenBasis& basis);

}  // namespace qsp
