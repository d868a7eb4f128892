#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qsp/control_problem.hpp"
#include "qsp/eigen_basis.hpp"
#include "qsp/spectral.hpp"
#include "qsp/targets.hpp"

using namespace qsp;
using std::numbers::pi;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }

FourierSeries random_series(int K, double T, bool real_signal) {
  FourierSeries f(T, K);
  for (int k = 0; k <= K; ++k) {
    const cplx c{uniform(-1, 1), uniform(-1, 1)};
    if (real_signal) {
      f.at(k) = k == 0 ? cplx(c.real()) : c;
      f.at(-k) = std::conj(f.at(k));
    } else {
      f.at(k) = c;
      f.at(-k) = cplx{uniform(-1, 1), uniform(-1, 1)};
    }
  }
  return f;
}

}  // namespace

TEST_CASE("Plancherel: coefficient inner product equals time quadrature") {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int K = uniform_int(0, 16);
    const double T = uniform(0.5, 5.0);
    const auto f = random_series(K, T, false);
    const auto g = random_series(uniform_int(0, 16), T, false);
    const int N = 4096;
    cplx quad{0.0};
    for (int n = 0; n < N; ++n) {
      const double t = T * n / N;
      quad += synthesize(f, t) * std::conj(synthesize(g, t));
    }
    quad /= static_cast<double>(N);
    worst = std::max(worst, std::abs(quad - plancherel_inner(f, g)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("polynomial push-forward matches pointwise evaluation") {
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int K = uniform_int(0, 8);
    const int deg = uniform_int(0, 4);
    const auto y = random_series(K, 2 * pi, true);
    Polynomial h;
    for (int r = 0; r <= deg; ++r) h.c.push_back(uniform(-1, 1));
    const auto push = poly_pushforward(h, y);
    const auto direct = fourier_coeffs([&](double t) { return h(synthesize(y, t)); }, 2 * pi,
                                       std::max(push.order(), 0), 256);
    for (int k = -push.order(); k <= push.order(); ++k)
      worst = std::max(worst, std::abs(push[k] - direct[k]));
    // Mean of h(y) is the zeroth push-forward coefficient.
    worst = std::max(worst, std::abs(time_average_poly(h, y) - push[0]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("convolution is commutative and associative") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(uniform_int(0, 5), 1.0, false);
    const auto b = random_series(uniform_int(0, 5), 1.0, false);
    const auto c = random_series(uniform_int(0, 5), 1.0, false);
    const auto ab = toeplitz_convolve(a, b), ba = toeplitz_convolve(b, a);
    const auto l = toeplitz_convolve(ab, c), r = toeplitz_convolve(a, toeplitz_convolve(b, c));
    for (int k = -ab.order(); k <= ab.order(); ++k) CHECK(std::abs(ab[k] - ba[k]) < 1e-14);
    for (int k = -l.order(); k <= l.order(); ++k) CHECK(std::abs(l[k] - r[k]) < 1e-12);
  }
}

TEST_CASE("QFT compresses the even superposition to a single spike") {
  for (int n = 1; n <= 6; ++n) {
    const auto s = apply_qft(even_superposition(n));
    CHECK(std::abs(s.amplitudes[0] - 1.0) < 1e-12);
    double rest = 0.0;
    for (std::size_t i = 1; i < s.amplitudes.size(); ++i) rest += std::norm(s.amplitudes[i]);
    CHECK(std::sqrt(rest) < 1e-12);
  }
}

TEST_CASE("FRQI norm and round trip over random images") {
  double worst_norm = 0.0, worst_trip = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(1, 3);
    FRQIImage img{n, {}};
    for (int i = 0; i < (1 << (2 * n)); ++i) img.theta.push_back(uniform(0.0, pi / 2));
    const auto s = frqi_encode(img);
    double nn = 0.0;
    for (cplx a : s.amplitudes) nn += std::norm(a);
    worst_norm = std::max(worst_norm, std::abs(std::sqrt(nn) - 1.0));
    const auto back = frqi_decode(s, n);
    for (std::size_t i = 0; i < back.size(); ++i) worst_trip = std::max(worst_trip, std::abs(back[i] - img.theta[i]));
  }
  CHECK(worst_norm < 1e-12);
  CHECK(worst_trip < 1e-10);
}

TEST_CASE("Crank-Nicolson is unitary for random potentials and controls") {
  for (int trial = 0; trial < 10; ++trial) {
    const double L = uniform(3.0, 8.0);
    std::vector<double> xs{-L}, vs{uniform(-2, 2)};
    for (int i = 1; i < 5; ++i) {
      xs.push_back(-L + 2 * L * i / 5.0);
      vs.push_back(uniform(-5, 5));
    }
    xs.push_back(L);
    vs.push_back(uniform(-2, 2));
    auto pot = Potential::piecewise({xs, vs}, {CouplingKind::window_uniform, -L / 2, L / 2, 0.0, 1.0});
    pot.set_control_bounds(-10, 10);
    const auto g = make_grid(-L, L, uniform_int(40, 200));
    const double k0 = uniform(-3, 3);
    const auto psi = normalized(sample(g, [&](double x) {
      // Vanishes at the pinned endpoints.
      return (1.0 - x * x / (L * L)) * std::exp(-x * x) * std::polar(1.0, k0 * x);
    }));
    std::vector<double> eta(uniform_int(10, 100));
    for (auto& e : eta) e = uniform(-10, 10);
    const auto tr = evolve(psi, pot, eta, uniform(0.1, 3.0));
    CHECK(std::abs(norm(tr.final_state()) - 1.0) < 1e-11);
  }
}

TEST_CASE("spectra are periodic in the offset charge") {
  for (int trial = 0; trial < 5; ++trial) {
    const TransmonParams p{uniform(0.2, 2.0), uniform(1.0, 30.0), uniform(-1, 1)};
    const auto pot = Potential::transmon(p);
    const auto g = make_periodic_grid(-pi, 2 * pi, 128);
    const auto a = eigenvalues(hamiltonian_matrix(pot, g, BoundaryKind::periodic, p.n_g), 3);
    const auto b = eigenvalues(hamiltonian_matrix(pot, g, BoundaryKind::periodic, p.n_g + 1.0), 3);
    const auto c = eigenvalues(hamiltonian_matrix(pot, g, BoundaryKind::periodic, -p.n_g), 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(a[i] - b[i]) < 1e-8 * std::max(1.0, std::abs(a[i])));
      CHECK(std::abs(a[i] - c[i]) < 1e-8 * std::max(1.0, std::abs(a[i])));
    }
  }
}

TEST_CASE("adjoint gradients agree with finite differences on random problems") {
  for (int trial = 0; trial < 4; ++trial) {
    const double L = 8.0;
    const double vl = uniform(0, 1), vr = uniform(0, 1);
    auto pot = Potential::piecewise({{-L, -3, 3, L}, {vl, 0.0, uniform(-1, 1), vr}},
                                    {CouplingKind::window_odd_gaussian, -2, 2, 0.0, uniform(0.5, 1.5)});
    pot.set_control_bounds(-5, 5);
    const auto g = make_grid(-L, L, 96);
    const auto psi = normalized(sample(g, [&](double x) { return std::exp(-x * x / 2) * std::polar(1.0, x); }));
    const auto tgt = normalized(sample(g, [&](double x) { return std::exp(-(x - 1) * (x - 1) / 2); }));
    const auto bc = trial % 2 ? BoundaryKind::tbc : BoundaryKind::dirichlet;
    const CostSpec cost{1.0, uniform(0, 0.1), 2, 2, trial >= 2};
    const ProblemSpec spec{pot, psi, tgt, 1.0, 80, cost, bc,
                           parametrize(ControlKind::piecewise_constant, 5, 1.0, -5, 5)};
    std::vector<double> x(5);
    for (auto& v : x) v = uniform(-2, 2);
    CHECK(gradcheck(spec, x).max_rel_error() < 1e-6);
  }
}
