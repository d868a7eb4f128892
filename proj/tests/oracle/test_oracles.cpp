#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "../support/analytic.hpp"
#include "qsp/control_problem.hpp"
#include "qsp/eigen_basis.hpp"
#include "qsp/magnus.hpp"
#include "qsp/spectral.hpp"

using namespace qsp;
using qsp::testing::free_gaussian;
using qsp::testing::semidiscrete_free;
using std::numbers::pi;

TEST_CASE("free Gaussian against the analytic whole-line solution") {
  const auto g = make_grid(-20.0, 20.0, 1601);
  const auto psi0 = free_gaussian(g, 0.0, -2.0, 1.0, 1.5);
  const auto pot = Potential::free(-20.0, 20.0);
  const auto tr = evolve(psi0, pot, std::vector<double>(1000, 0.0), 1.0);
  CHECK(l2_distance(tr.final_state(), free_gaussian(g, 1.0, -2.0, 1.0, 1.5)) < 2e-3);
}

TEST_CASE("Crank-Nicolson converges to the semi-discrete solution at second order") {
  const auto g = make_grid(-10.0, 10.0, 201);
  const auto psi0 = free_gaussian(g, 0.0, 0.0, 1.0, 1.0);
  const auto exact = semidiscrete_free(psi0, 1.0);
  const auto pot = Potential::free(-10.0, 10.0);
  double prev = 0.0;
  for (int n : {50, 100, 200}) {
    const double e = l2_distance(evolve(psi0, pot, std::vector<double>(n, 0.0), 1.0).final_state(), exact);
    if (prev > 0.0) {
      CHECK(prev / e > 3.6);
      CHECK(prev / e < 4.4);
    }
    prev = e;
  }
}

TEST_CASE("TBC run matches a wide Dirichlet domain") {
  const auto pk = [](double x) { return std::exp(-(x - 8.0) * (x - 8.0) / 4.0) * std::polar(1.0, 8.0 * x); };
  const auto g = make_grid(0.0, 20.0, 1001);
  const auto gw = make_grid(-30.0, 50.0, 4001);  // same spacing, node 1500 is x = 0
  const auto a = evolve(normalized(sample(g, pk)), Potential::free(0.0, 20.0), std::vector<double>(300, 0.0), 0.6,
                        {BoundaryKind::tbc, 1});
  const auto b = evolve(normalized(sample(gw, pk)), Potential::free(-30.0, 50.0), std::vector<double>(300, 0.0), 0.6,
                        {BoundaryKind::dirichlet, 1});
  const double scale = norm(normalized(sample(g, pk))) / norm(normalized(sample(gw, pk)));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    double e = 0.0;
    for (int k = 0; k < g.size(); ++k) e += g.weight(k) * std::norm(a.states[i][k] - scale * b.states[i][k + 1500]);
    worst = std::max(worst, std::sqrt(e));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("TBC with unequal constant tails matches a wide domain") {
  // Tails at different potentials exercise the gauge and the static kernel.
  // The TBC scheme runs against V - 0.75 (mean tail) and restores the phase
  // exp(-0.75 i t), so the wide reference does the same.
  const PiecewiseParams narrow{{0.0, 5.0, 15.0, 20.0}, {0.4, 0.0, 0.0, 1.1}};
  const PiecewiseParams wide{{-30.0, 0.0, 5.0, 15.0, 20.0, 50.0}, {-0.35, -0.35, -0.75, -0.75, 0.35, 0.35}};
  const auto pk = [](double x) { return std::exp(-(x - 10.0) * (x - 10.0) / 4.0) * std::polar(1.0, 6.0 * x); };
  const auto g = make_grid(0.0, 20.0, 1001);
  const auto gw = make_grid(-30.0, 50.0, 4001);
  const auto a = evolve(sample(g, pk), Potential::piecewise(narrow), std::vector<double>(500, 0.0), 1.0,
                        {BoundaryKind::tbc, 500});
  const auto b = evolve(sample(gw, pk), Potential::piecewise(wide), std::vector<double>(500, 0.0), 1.0,
                        {BoundaryKind::dirichlet, 500});
  const cplx phase = std::polar(1.0, -0.75);
  double e = 0.0;
  for (int k = 0; k < g.size(); ++k)
    e += g.weight(k) * std::norm(a.final_state()[k] - phase * b.final_state()[k + 1500]);
  CHECK(std::sqrt(e) < 1e-6 * norm(sample(g, pk)));
}

TEST_CASE("transmon levels agree with the charge-basis Hamiltonian") {
  const TransmonParams p{1.0, 20.0, 0.3};
  const int nmax = 30;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * nmax + 1, 2 * nmax + 1);
  for (int i = 0; i <= 2 * nmax; ++i) {
    const double n = i - nmax;
    h(i, i) = 4.0 * p.e_c * (n - p.n_g) * (n - p.n_g);
    if (i > 0) h(i, i - 1) = h(i - 1, i) = -0.5 * p.e_j;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const auto pot = Potential::transmon(p);
  const auto e = eigenvalues(hamiltonian_matrix(pot, make_periodic_grid(-pi, 2 * pi, 1024), BoundaryKind::periodic), 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(e[i] - es.eigenvalues()[i]) < 5e-3 * std::abs(es.eigenvalues()[i]) + 5e-3);
  // Gap error is second order in the grid spacing.
  const auto e2 = eigenvalues(hamiltonian_matrix(pot, make_periodic_grid(-pi, 2 * pi, 2048), BoundaryKind::periodic), 2);
  const double exact_gap = es.eigenvalues()[1] - es.eigenvalues()[0];
  const double r = std::abs(e[1] - e[0] - exact_gap) / std::abs(e2[1] - e2[0] - exact_gap);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
}

TEST_CASE("Magnus propagators converge to a fine reference") {
  const FiniteLevelSystem sys{0.5 * pauli_z(), {0.5 * pauli_x()}};
  const ControlFn h = [](double t) { return std::vector<double>{1.0 + std::sin(2.0 * t)}; };
  const CMatrix ref = magnus_propagate(sys, h, 2.0, 4000, 2).u;
  for (int order : {1, 2}) {
    const double e1 = frobenius_objective(magnus_propagate(sys, h, 2.0, 40, order).u, ref);
    const double e2 = frobenius_objective(magnus_propagate(sys, h, 2.0, 80, order).u, ref);
    const double slope = std::log2(e1 / e2);
    CHECK(slope > 2.0 * order - 0.3);
    CHECK(slope < 2.0 * order + 0.5);
  }
}

TEST_CASE("Laplace samples and Talbot inversion of a damped oscillation") {
  // f(t) = exp((-1/2 + 3i) t), F(s) = 1 / (s + 1/2 - 3i).
  const cplx a{-0.5, 3.0};
  TimeSeries f;
  f.dt = 1e-3;
  for (int n = 0; n <= 80000; ++n) f.values.push_back(std::exp(a * (n * f.dt)));
  for (cplx s : {cplx(0.5, 0.0), cplx(1.0, 3.0), cplx(2.0, -4.0)})
    CHECK(std::abs(laplace_sample(f, s) - 1.0 / (s - a)) < 1e-9);
  for (double t : {0.5, 1.0, 2.0}) {
    const cplx back = talbot_inverse([&](cplx s) { return 1.0 / (s - a); }, t, 32, cplx(0.0, 3.0));
    CHECK(std::abs(back - std::exp(a * t)) < 1e-9);
  }
}

TEST_CASE("harmonic oscillator levels approach 2n + 1") {
  DrivenOscillatorParams p;
  p.x_l = -12;
  p.x_r = 12;
  const auto pot = Potential::harmonic_driven(p);
  const auto a = eigenvalues(hamiltonian_matrix(pot, make_grid(-12.0, 12.0, 601), BoundaryKind::dirichlet), 5);
  const auto b = eigenvalues(hamiltonian_matrix(pot, make_grid(-12.0, 12.0, 1201), BoundaryKind::dirichlet), 5);
  for (int n = 0; n < 5; ++n) {
    const double ea = std::abs(a[n] - (2 * n + 1)), eb = std::abs(b[n] - (2 * n + 1));
    CHECK(eb < 1e-3 * (n + 1));
    CHECK(ea / eb > 3.5);
  }
}
