#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsp/eigen_basis.hpp"
#include "qsp/error.hpp"

using namespace qsp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

TEST_CASE("particle in a box") {
  // Dirichlet box of length L: E_n = ((n + 1) pi / L)^2 up to O(dx^2).
  const auto g = make_grid(0.0, 1.0, 801);
  const auto h = hamiltonian_matrix(Potential::free(0.0, 1.0), g, BoundaryKind::dirichlet);
  CHECK(h.dim() == 799);
  const auto e = eigenvalues(h, 3);
  for (int n = 0; n < 3; ++n) CHECK_THAT(e[n], WithinRel(std::pow((n + 1) * pi, 2), 1e-4));
}

TEST_CASE("harmonic oscillator levels are equally spaced") {
  DrivenOscillatorParams p;
  p.x_l = -10;
  p.x_r = 10;
  const auto pot = Potential::harmonic_driven(p);
  const auto b = eigenstates(hamiltonian_matrix(pot, make_grid(-10.0, 10.0, 1001), BoundaryKind::dirichlet), 4);
  for (int n = 0; n < 4; ++n) CHECK_THAT(b.energies[n], WithinAbs(2.0 * n + 1.0, 2e-3));
  for (int i = 0; i < 4; ++i) {
    CHECK_THAT(norm(b.states[i]), WithinAbs(1.0, 1e-12));
    for (int j = 0; j < i; ++j) CHECK(std::abs(inner_product(b.states[i], b.states[j])) < 1e-10);
  }
  // Ground state has a positive peak.
  CHECK(b.states[0][500].real() > 0.0);
  const auto c = expand_in_eigenbasis(b.states[2], b);
  CHECK(std::abs(c[2] - 1.0) < 1e-10);
  CHECK(std::abs(c[1]) < 1e-10);
}

TEST_CASE("boundary and grid consistency") {
  const auto tr = Potential::transmon({1.0, 10.0, 0.0});
  const auto pg = make_periodic_grid(-pi, 2 * pi, 64);
  CHECK_THROWS_AS(hamiltonian_matrix(tr, pg, BoundaryKind::dirichlet), ValidationError);
  CHECK_THROWS_AS(hamiltonian_matrix(Potential::free(0.0, 1.0), make_grid(0.0, 1.0, 10), BoundaryKind::periodic),
                  ValidationError);
  CHECK_THROWS_AS(hamiltonian_matrix(Potential::free(0.0, 1.0), make_grid(0.0, 1.0, 10), BoundaryKind::tbc),
                  ValidationError);
  const auto h = hamiltonian_matrix(tr, pg, BoundaryKind::periodic);
  CHECK_THROWS_AS(eigenvalues(h, 0), ValidationError);
  CHECK_THROWS_AS(eigenvalues(h, 65), ValidationError);
}

TEST_CASE("offset charge enters as a Peierls phase") {
  const auto tr = Potential::transmon({1.0, 5.0, 0.3});
  const auto g = make_periodic_grid(-pi, 2 * pi, 128);
  const auto h = hamiltonian_matrix(tr, g, BoundaryKind::periodic);
  const CMatrix d = h.dense();
  CHECK((d - d.adjoint()).norm() < 1e-12);
  const auto a = eigenvalues(hamiltonian_matrix(tr, g, BoundaryKind::periodic, 0.3), 4);
  const auto b = eigenvalues(hamiltonian_matrix(tr, g, BoundaryKind::periodic, 1.3), 4);
  for (int i = 0; i < 4; ++i) CHECK_THAT(a[i], WithinAbs(b[i], 1e-9));
  // Free rotor with kin = 4: E = 4 (m - n_g)^2.
  const auto rotor = Potential::transmon({1.0, 1e-12, 0.0});
  const auto r = eigenvalues(hamiltonian_matrix(rotor, make_periodic_grid(-pi, 2 * pi, 512), BoundaryKind::periodic, 0.25), 3);
  CHECK_THAT(r[0], WithinAbs(4 * 0.0625, 1e-4));
  CHECK_THAT(r[1], WithinAbs(4 * 0.5625, 1e-4));
  CHECK_THAT(r[2], WithinAbs(4 * 1.5625, 1e-3));
}

TEST_CASE("transmon asymptotic formula") {
  const TransmonParams p{1.0, 50.0, 0.0};
  const double w0 = std::sqrt(8.0 * 50.0);
  CHECK_THAT(transmon_asymptotic_levels(p, 1) - transmon_asymptotic_levels(p, 0), WithinAbs(w0 - 1.0, 1e-12));
}

TEST_CASE("spectrum csv layout") {
  std::ostringstream a;
  write_spectrum_csv(a, {1.0, 3.0}, nullptr);
  CHECK(a.str().rfind("n,E_numeric\n0,1", 0) == 0);
  const TransmonParams p{1.0, 50.0, 0.0};
  std::ostringstream b;
  write_spectrum_csv(b, {-40.0, -21.0}, &p);
  CHECK(b.str().rfind("n,E_numeric,E_formula,rel_error\n", 0) == 0);
}
