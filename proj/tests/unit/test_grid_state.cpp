#include <catch_amalgamated.hpp>

#include <cmath>

#include "qsp/error.hpp"
#include "qsp/grid_state.hpp"

using namespace qsp;
using Catch::Matchers::WithinAbs;

TEST_CASE("grid construction rejects degenerate input") {
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 2), ValidationError);
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 10), ValidationError);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 10), ValidationError);
  CHECK_THROWS_AS(make_periodic_grid(0.0, -1.0, 10), ValidationError);
}

TEST_CASE("grid nodes and spacing") {
  const auto g = make_grid(-1.0, 3.0, 5);
  CHECK(g.dx() == 1.0);
  CHECK(g.node(0) == -1.0);
  CHECK(g.node(4) == 3.0);
  CHECK_FALSE(g.periodic());

  const auto p = make_periodic_grid(0.0, 2.0, 4);
  CHECK(p.dx() == 0.5);
  CHECK(p.node(3) == 1.5);
  CHECK(p.periodic());
}

TEST_CASE("trapezoid weights integrate constants and linear functions exactly") {
  const auto g = make_grid(-2.0, 5.0, 71);
  double w = 0.0, wx = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    w += g.weight(k);
    wx += g.weight(k) * g.node(k);
  }
  CHECK_THAT(w, WithinAbs(7.0, 1e-13));
  CHECK_THAT(wx, WithinAbs(0.5 * (25.0 - 4.0), 1e-12));
  CHECK(g.weight(0) == 0.5 * g.dx());

  const auto p = make_periodic_grid(0.0, 3.0, 30);
  double wp = 0.0;
  for (int k = 0; k < p.size(); ++k) wp += p.weight(k);
  CHECK_THAT(wp, WithinAbs(3.0, 1e-13));
}

TEST_CASE("inner product is conjugate-linear in the first argument") {
  const auto g = make_grid(0.0, 1.0, 11);
  const auto a = sample(g, [](double x) { return cplx(x, 1.0 - x); });
  const auto b = sample(g, [](double x) { return cplx(std::sin(x), x * x); });
  const cplx s{0.3, -1.2};
  const cplx lhs = inner_product(s * a, b);
  const cplx rhs = std::conj(s) * inner_product(a, b);
  CHECK(std::abs(lhs - rhs) < 1e-14);
  CHECK(std::abs(inner_product(a, s * b) - s * inner_product(a, b)) < 1e-14);
  CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-14);
}

TEST_CASE("normalization and fidelity") {
  const auto g = make_grid(-10.0, 10.0, 401);
  const auto a = normalized(sample(g, [](double x) { return std::exp(-x * x); }));
  CHECK_THAT(norm(a), WithinAbs(1.0, 1e-14));
  // A global phase does not change the fidelity.
  CHECK_THAT(fidelity(a, std::polar(1.0, 0.7) * a), WithinAbs(1.0, 1e-13));
  CHECK_THAT(l2_distance(a, a), WithinAbs(0.0, 1e-15));

  const auto unnormalized = 2.0 * a;
  CHECK_THROWS_AS(fidelity(a, unnormalized), ValidationError);
  CHECK_THROWS(normalized(Wavefunction(g)));
}

TEST_CASE("wavefunction arithmetic requires matching grids") {
  const auto g1 = make_grid(0.0, 1.0, 11);
  const auto g2 = make_grid(0.0, 1.0, 12);
  Wavefunction a(g1), b(g2);
  CHECK_THROWS_AS(a += b, ValidationError);
  CHECK_THROWS_AS(inner_product(a, b), ValidationError);
}
