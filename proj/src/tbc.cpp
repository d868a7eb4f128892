#include "qsp/tbc.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "qsp/error.hpp"

namespace qsp {

cplx tbc_symbol(cplx s, double v_c) {
  const cplx rad = cplx{0.0, -1.0} * s + v_c;
  if (rad.imag() == 0.0 && rad.real() < 0.0)
    throw ValidationError("tbc_symbol: s lies on the branch cut");
  cplx r = std::sqrt(rad);
  if (r.real() < 0.0) r = -r;
  return -r;
}

cplx tbc_symbol_continued(cplx s, double v_c) {
  const cplx rot = std::polar(1.0, -std::numbers::pi / 4.0);
  return -rot * std::sqrt(s + cplx{0.0, v_c});
}

std::vector<cplx> cn_tbc_coefficients(double dt, double dx, double v, int n) {
  if (n < 1) throw ValidationError("kernel length must be >= 1");
  if (!(dt > 0.0) || !(dx > 0.0)) throw ValidationError("kernel needs dt > 0 and dx > 0");
  const double h2 = dx * dx;
  const cplx b0{2.0 + h2 * v, -2.0 * h2 / dt};
  const cplx b1{2.0 + h2 * v, 2.0 * h2 / dt};

  // l0 is the root of l^2 - b0 l + 1 = 0 inside the unit disc.
  const cplx d = std::sqrt(b0 * b0 - 4.0);
  const cplx r1 = (b0 + d) / 2.0;
  const cplx r2 = (b0 - d) / 2.0;
  const cplx l0 = std::abs(r1) < 1.0 ? r1 : r2;

  // Expanding nu(u) + 1/nu(u) = b(u) in u = 1/z after multiplying through by
  // nu (1 + u) gives, order by order,
  //   (2 l0 - b0) l_n = -S'_n - S_{n-1} + b1 l_{n-1} - [n == 1]
  // with S_n the coefficients of nu^2 and S'_n its part without l0 l_n terms.
  std::vector<cplx> l(n), sq(n);
  l[0] = l0;
  sq[0] = l0 * l0;
  const cplx denom = 2.0 * l0 - b0;
  for (int k = 1; k < n; ++k) {
    cplx sp{0.0};
    for (int i = 1; i < k; ++i) sp += l[i] * l[k - i];
    cplx rhs = -sp - sq[k - 1] + b1 * l[k - 1];
    if (k == 1) rhs -= 1.0;
    l[k] = rhs / denom;
    sq[k] = 2.0 * l0 * l[k] + sp;
  }
  if (l[0] == cplx{0.0}) throw NumericalError("degenerate boundary kernel (l_0 = 0)");
  return l;
}

TbcKernel discrete_tbc_kernel(double dt, double dx, double v_c, int n, Side side) {
  return discrete_tbc_kernel(dt, dx, v_c, n, side, v_c);
}

TbcKernel discrete_tbc_kernel(double dt, double dx, double v_c, int n, Side side, double v_ref) {
  if (n < 2) throw ValidationError("kernel length must be >= 2");
  TbcKernel k;
  k.v_c = v_c;
  k.dt = dt;
  k.side = side;
  k.coeffs = cn_tbc_coefficients(dt, dx, v_c - v_ref, n);
  if (v_ref != 0.0)
    for (int j = 0; j < n; ++j) k.coeffs[j] *= std::polar(1.0, -v_ref * j * dt);
  return k;
}

void write_kernel_csv(std::ostream& os, const TbcKernel& k) {
  os << "lag,re,im\n";
  os.precision(17);
  for (std::size_t j = 0; j < k.coeffs.size(); ++j)
    os << j << ',' << k.coeffs[j].real() << ',' << k.coeffs[j].imag() << '\n';
}

std::vector<LaplaceSample> exterior_reconstruct(const TimeSeries& trace, double x_r, double x,
                                                double v_r, const std::vector<cplx>& s_grid) {
  if (x < x_r) throw ValidationError("exterior_reconstruct needs x >= x_r");
  std::vector<LaplaceSample> out;
  out.reserve(s_grid.size());
  for (cplx s : s_grid) {
    const cplx sym = tbc_symbol(s, v_r);
    if (x > x_r && !(sym.real() < 0.0))
      throw NumericalError("exterior_reconstruct: non-decaying branch");
    out.push_back({s, std::exp(sym * (x - x_r)) * laplace_sample(trace, s)});
  }
  return out;
}

double reflection_measure(const std::vector<double>& times,
                          const std::vector<Wavefunction>& states, double t_exit) {
  if (times.empty() || times.size() != states.size())
    throw ValidationError("reflection_measure: empty or inconsistent trajectory");
  const double tol = 1e-12 * std::max(1.0, std::abs(t_exit));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_exit - tol) {
      const double n0 = norm(states.front());
      if (n0 == 0.0) throw ValidationError("reflection_measure: zero initial state");
      return norm(states[i]) / n0;
    }
  }
  throw ValidationError("reflection_measure: t_exit beyond trajectory");
}

}  // namespace qsp
