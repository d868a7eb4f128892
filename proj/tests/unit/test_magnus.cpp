#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qsp/error.hpp"
#include "qsp/magnus.hpp"

using namespace qsp;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

FiniteLevelSystem qubit(double detuning) {
  return FiniteLevelSystem{0.5 * detuning * pauli_z(), {0.5 * pauli_x()}};
}

}  // namespace

TEST_CASE("pauli algebra") {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  CHECK((pauli_x() * pauli_x() - i2).norm() < 1e-15);
  CHECK((pauli_x() * pauli_y() - cplx(0, 1) * pauli_z()).norm() < 1e-15);
}

TEST_CASE("system validation") {
  FiniteLevelSystem bad{pauli_x(), {CMatrix::Zero(3, 3)}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  FiniteLevelSystem nonherm{pauli_x(), {cplx(0, 1) * pauli_x()}};
  CHECK_THROWS_AS(nonherm.validate(), ValidationError);
  CHECK_NOTHROW(qubit(1.0).validate());
}

TEST_CASE("exact_expm of a Pauli rotation") {
  const CMatrix u = exact_expm(pauli_x(), 0.3);
  const CMatrix expect = std::cos(0.3) * CMatrix::Identity(2, 2) - cplx(0, std::sin(0.3)) * pauli_x();
  CHECK((u - expect).norm() < 1e-14);
}

TEST_CASE("constant Hamiltonian is integrated exactly at both orders") {
  const auto sys = qubit(0.7);
  const ControlFn h = [](double) { return std::vector<double>{1.3}; };
  const CMatrix ref = exact_expm(sys.hamiltonian({1.3}), 2.0);
  for (int order : {1, 2}) {
    const auto r = magnus_propagate(sys, h, 2.0, 5, order);
    CHECK((r.u - ref).norm() < 1e-13);
    CHECK((r.u.adjoint() * r.u - CMatrix::Identity(2, 2)).norm() < 1e-13);
  }
  CHECK(magnus_second_term(sys, h, 0.0, 0.1).norm() < 1e-15);
}

TEST_CASE("second-order exponent is anti-Hermitian") {
  const auto sys = qubit(1.0);
  const ControlFn h = [](double t) { return std::vector<double>{std::sin(3 * t)}; };
  const CMatrix om = magnus_omega(sys, h, 0.2, 0.3, 2);
  CHECK((om + om.adjoint()).norm() < 1e-14);
  CHECK(magnus_second_term(sys, h, 0.2, 0.3).norm() > 0.0);
  CHECK_THROWS_AS(magnus_omega(sys, h, 0.0, 0.1, 3), ValidationError);
}

TEST_CASE("pi pulse flips the qubit") {
  const auto sys = qubit(0.0);
  ControlSignal eta{parametrize(ControlKind::piecewise_constant, 1, pi, -2, 2), {1.0}};
  const auto r = magnus_propagate(sys, eta, pi, 10, 2);
  CVector zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  CHECK_THAT(state_fidelity(r.u, zero, one), WithinAbs(1.0, 1e-12));
  CHECK_THAT(frobenius_objective(r.u, exact_expm(0.5 * pauli_x(), pi)), WithinAbs(0.0, 1e-12));
}
