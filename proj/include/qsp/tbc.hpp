#pragma once

#include <iosfwd>
#include <vector>

#include "qsp/grid_state.hpp"
#include "qsp/potentials.hpp"
#include "qsp/spectral.hpp"

namespace qsp {

/// Exterior symbol -sqrt(-i s + V_c) with Re(sqrt) > 0 (decaying exterior
/// solution). Throws ValidationError when s lies on the cut s = -i y, y > V_c.
cplx tbc_symbol(cplx s, double v_c);

/// Same symbol continued analytically from Re(s) > 0 into the left half
/// plane: -exp(-i pi/4) sqrt(s + i V_c) with the principal root. Agrees with
/// tbc_symbol whenever Re(s) > 0; its cut is the horizontal ray through
/// s = -i V_c, which is what a Talbot contour wraps around.
cplx tbc_symbol_continued(cplx s, double v_c);

/// Coefficients of the exact discrete boundary relation for the
/// Crank-Nicolson scheme i(u^{n+1}-u^n)/dt = (-D2 + v)(u^{n+1}+u^n)/2 on a
/// constant exterior potential v:
///   u^n_{J-1} = sum_{k=0}^{n} l_k u^{n-k}_{J-2}
/// (and the mirror relation between nodes 0 and 1). Valid for data that
/// vanishes on the two boundary nodes at t = 0.
std::vector<cplx> cn_tbc_coefficients(double dt, double dx, double v, int n);

struct TbcKernel {
  double v_c = 0.0;
  double dt = 0.0;
  Side side = Side::right;
  std::vector<cplx> coeffs;
};

/// Boundary kernel for a tail at constant potential v_c, with the interior
/// scheme referenced to the gauge potential v_ref (the propagator uses the
/// mean tail potential). Lag k carries the factor exp(-i v_ref k dt), so the
/// kernel for v_c equals the v_c = 0 kernel modulated by exp(-i v_c k dt).
TbcKernel discrete_tbc_kernel(double dt, double dx, double v_c, int n, Side side = Side::right);
TbcKernel discrete_tbc_kernel(double dt, double dx, double v_c, int n, Side side, double v_ref);

// CSV with columns lag,re,im.
void write_kernel_csv(std::ostream& os, const TbcKernel& k);

struct LaplaceSample {
  cplx s;
  cplx value;
};

/// Laplace-domain exterior solution w(x, s) = exp(-sqrt(-i s + V_r)(x - x_r)) v(x_r, s)
/// from the boundary trace at x_r. `x_r` is the trace location.
std::vector<LaplaceSample> exterior_reconstruct(const TimeSeries& trace, double x_r, double x,
                                                double v_r, const std::vector<cplx>& s_grid);

/// Ratio of the interior norm at the first stored time >= t_exit to the
/// initial norm.
double reflection_measure(const std::vector<double>& times,
                          const std::vector<Wavefunction>& states, double t_exit);

}  // namespace qsp
