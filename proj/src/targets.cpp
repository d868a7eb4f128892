#include "qsp/targets.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

#include "qsp/error.hpp"

namespace qsp {

namespace {

double sq_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (cplx c : v) s += std::norm(c);
  return s;
}

}  // namespace

QubitState QubitState::make(int n_qubits, std::vector<cplx> amps) {
  if (n_qubits < 1 || n_qubits > 30) throw ValidationError("qubit count out of range");
  if (amps.size() != (std::size_t{1} << n_qubits))
    throw ValidationError("amplitude count must be 2^n");
  if (std::abs(sq_norm(amps) - 1.0) > 1e-12) throw ValidationError("qubit state is not normalized");
  return QubitState{n_qubits, std::move(amps)};
}

CVector QubitState::vector() const {
  return Eigen::Map<const CVector>(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size()));
}

QubitState even_superposition(int n_qubits) {
  if (n_qubits < 1) throw ValidationError("even_superposition needs n >= 1");
  const std::size_t d = std::size_t{1} << n_qubits;
  return QubitState{n_qubits, std::vector<cplx>(d, cplx{1.0 / std::sqrt(double(d))})};
}

QubitState tensor(const QubitState& a, const QubitState& b) {
  std::vector<cplx> out;
  out.reserve(a.amplitudes.size() * b.amplitudes.size());
  for (cplx x : a.amplitudes)
    for (cplx y : b.amplitudes) out.push_back(x * y);
  return QubitState{a.n_qubits + b.n_qubits, std::move(out)};
}

CMatrix qft_matrix(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 10) throw ValidationError("qft_matrix needs 1 <= n <= 10");
  const int d = 1 << n_qubits;
  CMatrix f(d, d);
  const double s = 1.0 / std::sqrt(double(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      // Reduce jk mod d first so the n=2 entries come out exactly (+-1, +-i).
      const int e = (j * k) % d;
      const int q = 4 * e;
      cplx w;
      if (q % d == 0) {
        static const cplx quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        w = quarter[q / d];
      } else {
        w = std::polar(1.0, 2.0 * std::numbers::pi * e / d);
      }
      f(j, k) = s * w;
    }
  return f;
}

QubitState apply_qft(const QubitState& s) {
  if (s.amplitudes.size() != (std::size_t{1} << s.n_qubits))
    throw ValidationError("apply_qft: dimension mismatch");
  const CVector out = qft_matrix(s.n_qubits) * s.vector();
  return QubitState{s.n_qubits, std::vector<cplx>(out.data(), out.data() + out.size())};
}

QubitState frqi_encode(const FRQIImage& img) {
  if (img.n < 1) throw ValidationError("FRQI image needs n >= 1");
  const std::size_t pix = std::size_t{1} << (2 * img.n);
  if (img.theta.size() != pix)
    throw ValidationError("FRQI image needs 4^n angles, got " + std::to_string(img.theta.size()));
  const double s = 1.0 / double(std::size_t{1} << img.n);
  std::vector<cplx> a(2 * pix);
  for (std::size_t i = 0; i < pix; ++i) {
    a[i] = s * std::cos(img.theta[i]);
    a[pix + i] = s * std::sin(img.theta[i]);
  }
  return QubitState{2 * img.n + 1, std::move(a)};
}

std::vector<double> frqi_decode(const QubitState& st, int n) {
  const std::size_t pix = std::size_t{1} << (2 * n);
  if (st.amplitudes.size() != 2 * pix) throw ValidationError("frqi_decode: wrong state size");
  const double s = 1.0 / double(std::size_t{1} << n);
  std::vector<double> theta(pix);
  for (std::size_t i = 0; i < pix; ++i) {
    const cplx c = st.amplitudes[i];
    const cplx d = st.amplitudes[pix + i];
    const double blk = std::sqrt(std::norm(c) + std::norm(d));
    if (std::abs(blk - s) > 1e-6)
      throw ValidationError("frqi_decode: pixel " + std::to_string(i) + " block norm " +
                            std::to_string(blk) + " is not 1/2^n");
    theta[i] = std::atan2(std::abs(d), std::abs(c));
  }
  return theta;
}

FRQIImage read_image_text(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw ValidationError("image: non-numeric entry");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const std::size_t side = rows.size();
  int n = 0;
  while ((std::size_t{1} << n) < side) ++n;
  if (side < 2 || (std::size_t{1} << n) != side) throw ValidationError("image must be 2^n x 2^n with n >= 1");
  FRQIImage img;
  img.n = n;
  for (const auto& r : rows) {
    if (r.size() != side) throw ValidationError("image rows must all have length 2^n");
    for (double v : r) {
      if (v < 0.0 || v > 1.0) throw ValidationError("image values must lie in [0,1]");
      img.theta.push_back(std::numbers::pi / 2.0 * v);
    }
  }
  return img;
}

Wavefunction superposition_target(const std::vector<cplx>& coeffs, const EigenBasis& basis) {
  if (coeffs.empty() || coeffs.size() > basis.states.size())
    throw ValidationError("superposition_target: coefficient count exceeds basis size");
  if (std::abs(sq_norm(coeffs) - 1.0) > 1e-9)
    throw ValidationError("superposition_target: coefficients are not normalized");
  Wavefunction out(basis.states[0].grid());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += coeffs[i] * basis.states[i];
  return normalized(std::move(out));
}

Wavefunction qubit_to_wavefunction(const QubitState& s, const EigenBasis& basis) {
  if (s.n_qubits != 1) throw ValidationError("only single-qubit states map onto two levels");
  return superposition_target(s.amplitudes, basis);
}

}  // namespace qsp
