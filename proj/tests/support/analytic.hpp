#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qsp/eigen_basis.hpp"
#include "qsp/grid_state.hpp"

namespace qsp::testing {

// Whole-line free Gaussian for i psi_t = -psi_xx, initial width sigma,
// centre x0, wavenumber k0.
inline cplx free_gaussian(double x, double t, double x0, double sigma, double k0) {
  const cplx a = 1.0 + cplx(0.0, t / (sigma * sigma));
  const double d = x - x0 - 2.0 * k0 * t;
  const cplx expo = -d * d / (4.0 * sigma * sigma * a) + cplx(0.0, k0 * (x - x0) - k0 * k0 * t + k0 * x0);
  return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) / std::sqrt(a) * std::exp(expo);
}

inline Wavefunction free_gaussian(const Grid& g, double t, double x0, double sigma, double k0) {
  return sample(g, [&](double x) { return free_gaussian(x, t, x0, sigma, k0); });
}

// exp(-i H t) psi for the Dirichlet free Laplacian on the grid, from the
// exact sine eigenmodes of the three-point stencil.
inline Wavefunction semidiscrete_free(const Wavefunction& psi, double t) {
  const Grid& g = psi.grid();
  const int J = g.size();
  const int M = J - 2;
  const double h = g.dx();
  std::vector<cplx> out(J, cplx{0.0});
  for (int m = 1; m <= M; ++m) {
    const double th = m * std::numbers::pi / (J - 1);
    cplx c{0.0};
    for (int j = 1; j <= M; ++j) c += std::sin(th * j) * psi[j];
    c *= 2.0 / (J - 1);
    const double lam = (2.0 - 2.0 * std::cos(th)) / (h * h);
    c *= std::polar(1.0, -lam * t);
    for (int j = 1; j <= M; ++j) out[j] += c * std::sin(th * j);
  }
  return Wavefunction(g, std::move(out));
}

}  // namespace qsp::testing
