#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsp/error.hpp"
#include "qsp/spectral.hpp"

using namespace qsp;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

TEST_CASE("fourier_coeffs recovers a cosine") {
  const double T = 2.0;
  const auto fs = fourier_coeffs([&](double t) { return cplx(std::cos(2 * pi * t / T)); }, T, 3, 64);
  CHECK(std::abs(fs[1] - 0.5) < 1e-14);
  CHECK(std::abs(fs[-1] - 0.5) < 1e-14);
  CHECK(std::abs(fs[0]) < 1e-14);
  CHECK(std::abs(fs[3]) < 1e-14);
  CHECK(fs[7] == cplx{0.0});
}

TEST_CASE("synthesize inverts fourier_coeffs for band-limited signals") {
  FourierSeries f(1.0, {cplx(0.1, 0.2), cplx(1.0, 0.0), cplx(-0.3, 0.5)});
  std::vector<cplx> s(16);
  for (int n = 0; n < 16; ++n) s[n] = synthesize(f, n / 16.0);
  const auto g = fourier_coeffs(s, 1.0, 1);
  for (int k = -1; k <= 1; ++k) CHECK(std::abs(g[k] - f[k]) < 1e-14);
}

TEST_CASE("even coefficient count is rejected") {
  CHECK_THROWS_AS(FourierSeries(1.0, std::vector<cplx>{1.0, 2.0}), ValidationError);
}

TEST_CASE("toeplitz convolution matches pointwise products") {
  FourierSeries a(1.0, {cplx(0.5), cplx(1.0), cplx(0.5)});           // 1 + cos
  FourierSeries b(1.0, {cplx(0.0, 0.5), cplx(0.0), cplx(0.0, -0.5)}); // sin
  const auto c = toeplitz_convolve(a, b);
  CHECK(c.order() == 2);
  for (double t : {0.0, 0.13, 0.77}) {
    const cplx expect = synthesize(a, t) * synthesize(b, t);
    CHECK(std::abs(synthesize(c, t) - expect) < 1e-14);
  }
  const auto p = conv_power(a, 3);
  CHECK(p.order() == 3);
  CHECK(std::abs(synthesize(p, 0.3) - std::pow(synthesize(a, 0.3), 3)) < 1e-13);
}

TEST_CASE("time_average_poly of y^2 with y = cos t is one half") {
  FourierSeries y(2 * pi, {cplx(0.5), cplx(0.0), cplx(0.5)});
  const Polynomial h{{0.0, 0.0, 1.0}};
  CHECK_THAT(time_average_poly(h, y).real(), WithinAbs(0.5, 1e-12));
  CHECK_THAT(time_average_poly(Polynomial{{2.0}}, y).real(), WithinAbs(2.0, 1e-15));
}

TEST_CASE("coefficient CSV round trip") {
  FourierSeries f(3.0, {cplx(0.25, -1.0), cplx(1.0 / 3.0, 0.0), cplx(-2.0, 1e-9)});
  std::stringstream ss;
  write_coeffs_csv(ss, f);
  const auto g = read_coeffs_csv(ss, 3.0);
  REQUIRE(g.order() == 1);
  for (int k = -1; k <= 1; ++k) CHECK(g[k] == f[k]);
}

TEST_CASE("laplace_sample of exp(-t)") {
  TimeSeries f;
  f.dt = 1e-3;
  for (int n = 0; n <= 30000; ++n) f.values.emplace_back(std::exp(-n * f.dt));
  const cplx s{1.0, 2.0};
  const cplx exact = (1.0 - std::exp(-(s + 1.0) * 30.0)) / (s + 1.0);
  CHECK(std::abs(laplace_sample(f, s) - exact) < 1e-10);
}

TEST_CASE("talbot inversion of standard transforms") {
  // 1/(s+1) -> exp(-t);  1/s^2 -> t;  1/(s - i w) -> exp(i w t)
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK(std::abs(talbot_inverse([](cplx s) { return 1.0 / (s + 1.0); }, t) - std::exp(-t)) < 1e-9);
    CHECK(std::abs(talbot_inverse([](cplx s) { return 1.0 / (s * s); }, t) - t) < 1e-9);
  }
  const double w = 3.0;
  const cplx shift{0.0, w};
  const cplx got = talbot_inverse([&](cplx s) { return 1.0 / (s - cplx(0.0, w)); }, 2.0, 32, shift);
  CHECK(std::abs(got - std::polar(1.0, w * 2.0)) < 1e-9);
}

TEST_CASE("talbot contour rejects bad arguments") {
  CHECK_THROWS_AS(talbot_contour(0.0), ValidationError);
  CHECK_THROWS_AS(talbot_contour(1.0, 1), ValidationError);
}
