#include "qsp/detail/cn_model.hpp"

#include <cmath>

#include "qsp/error.hpp"
#include "qsp/tbc.hpp"

namespace qsp::detail {

namespace {

void thomas(const std::vector<cplx>& lo, std::vector<cplx> di, const std::vector<cplx>& up,
            std::vector<cplx>& x) {
  const std::size_t n = di.size();
  std::vector<cplx> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const cplx m = lo[i] / di[i - 1];
      di[i] -= m * c[i - 1];
      x[i] -= m * x[i - 1];
    }
    if (di[i] == cplx{0.0}) throw NumericalError("singular Crank-Nicolson system");
    c[i] = up[i];
  }
  x[n - 1] /= di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - c[i] * x[i + 1]) / di[i];
}

}  // namespace

void solve_inplace(const Tridiag& a, std::vector<cplx>& rhs) {
  const std::size_t n = a.di.size();
  if (a.top_right == cplx{0.0} && a.bottom_left == cplx{0.0}) {
    thomas(a.lo, a.di, a.up, rhs);
    return;
  }
  // Sherman-Morrison for the cyclic system.
  const cplx gamma = -a.di[0];
  std::vector<cplx> di = a.di;
  di[0] -= gamma;
  di[n - 1] -= a.bottom_left * a.top_right / gamma;
  std::vector<cplx> z(n, cplx{0.0});
  z[0] = gamma;
  z[n - 1] = a.bottom_left;
  thomas(a.lo, di, a.up, rhs);
  thomas(a.lo, di, a.up, z);
  const cplx fact = (rhs[0] + a.top_right * rhs[n - 1] / gamma) /
                    (1.0 + z[0] + a.top_right * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * z[i];
}

Tridiag conj_transpose(const Tridiag& a) {
  const std::size_t n = a.di.size();
  Tridiag t;
  t.lo.assign(n, cplx{0.0});
  t.up.assign(n, cplx{0.0});
  t.di.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    t.di[j] = std::conj(a.di[j]);
    if (j + 1 < n) t.up[j] = std::conj(a.lo[j + 1]);
    if (j > 0) t.lo[j] = std::conj(a.up[j - 1]);
  }
  t.top_right = std::conj(a.bottom_left);
  t.bottom_left = std::conj(a.top_right);
  return t;
}

bool CnModel::equation_row(int j) const {
  return bc == BoundaryKind::periodic || (j > 0 && j < grid.size() - 1);
}

std::vector<double> CnModel::step_potential(int n) const {
  const int J = grid.size();
  const double t = t0 + (n + 0.5) * dt;
  std::vector<double> w(J);
  for (int j = 0; j < J; ++j) {
    const double b = base.empty() ? pot->base(grid.node(j), t) : base[j];
    w[j] = b + eta[n] * coupling[j] - v_gauge[n];
  }
  return w;
}

Tridiag CnModel::lhs(int n, const std::vector<double>& w) const {
  const int J = grid.size();
  const cplx a{0.0, dt / 2.0};
  Tridiag m;
  m.lo.assign(J, cplx{0.0});
  m.up.assign(J, cplx{0.0});
  m.di.assign(J, cplx{1.0});
  for (int j = 0; j < J; ++j) {
    if (!equation_row(j)) continue;
    m.di[j] = 1.0 + a * (h_diag + w[j]);
    if (j > 0) m.lo[j] = a * h_lo;
    if (j < J - 1) m.up[j] = a * h_up;
  }
  if (bc == BoundaryKind::periodic) {
    m.top_right = a * h_lo;
    m.bottom_left = a * h_up;
  } else if (bc == BoundaryKind::tbc) {
    m.up[0] = -hist(Side::left, n, 0);
    m.lo[J - 1] = -hist(Side::right, n, 0);
  }
  return m;
}

std::vector<cplx> CnModel::apply_rhs(int n, const std::vector<double>& w,
                                     std::span<const cplx> phi) const {
  (void)n;
  const int J = grid.size();
  const cplx a{0.0, dt / 2.0};
  std::vector<cplx> r(J, cplx{0.0});
  for (int j = 0; j < J; ++j) {
    if (!equation_row(j)) continue;
    const cplx right = j < J - 1 ? phi[j + 1] : phi[0];
    const cplx left = j > 0 ? phi[j - 1] : phi[J - 1];
    r[j] = (1.0 - a * (h_diag + w[j])) * phi[j] - a * (h_up * right + h_lo * left);
  }
  return r;
}

cplx CnModel::hist(Side side, int n, int k) const {
  const auto& ell = side == Side::left ? ell_l : ell_r;
  const auto& ph = side == Side::left ? ph_l : ph_r;
  const double d = ph[n + 1] - ph[n + 1 - k];
  return d == 0.0 ? ell[k] : ell[k] * std::polar(1.0, -d);
}

CnModel build_model(const Grid& grid, const Potential& pot, std::span<const double> eta,
                    double dt, double t0, BoundaryKind bc) {
  const int steps = static_cast<int>(eta.size());
  if (steps < 1) throw ValidationError("evolve needs at least one step");
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if ((bc == BoundaryKind::periodic) != grid.periodic())
    throw ValidationError("periodic boundary requires a periodic grid and vice versa");
  if (pot.periodic() && bc != BoundaryKind::periodic)
    throw ValidationError("transmon potential requires the periodic boundary");

  CnModel m;
  m.grid = grid;
  m.bc = bc;
  m.dt = dt;
  m.t0 = t0;
  m.steps = steps;
  m.pot = &pot;
  m.eta.assign(eta.begin(), eta.end());
  m.kin = pot.kinetic();
  const double h = grid.dx();
  const double ng = pot.n_g();
  m.h_diag = 2.0 * m.kin / (h * h);
  m.h_up = -m.kin / (h * h) * std::polar(1.0, -ng * h);
  m.h_lo = std::conj(m.h_up);

  const int J = grid.size();
  m.coupling.resize(J);
  for (int j = 0; j < J; ++j) m.coupling[j] = pot.coupling(grid.node(j));
  if (pot.tails_static()) {
    m.base.resize(J);
    for (int j = 0; j < J; ++j) m.base[j] = pot.base(grid.node(j), t0);
  }

  for (int n = 0; n < steps; ++n) {
    if (!std::isfinite(eta[n])) throw NumericalError("non-finite control value");
    (void)pot.value(grid.node(0), t0 + (n + 0.5) * dt, eta[n]);  // bounds check
  }

  m.v_gauge.assign(steps, 0.0);
  m.ph_l.assign(steps + 1, 0.0);
  m.ph_r.assign(steps + 1, 0.0);
  if (bc == BoundaryKind::tbc) {
    std::vector<double> dl(steps), dr(steps);
    for (int n = 0; n < steps; ++n) {
      const double t = t0 + (n + 0.5) * dt;
      const double vl = pot.tail(Side::left, t, eta[n]);
      const double vr = pot.tail(Side::right, t, eta[n]);
      m.v_gauge[n] = 0.5 * (vl + vr);
      dl[n] = vl - m.v_gauge[n];
      dr[n] = vr - m.v_gauge[n];
    }
    const double dx_eff = h / std::sqrt(m.kin);
    auto setup = [&](const std::vector<double>& d, std::vector<cplx>& ell, std::vector<double>& ph) {
      bool fixed = true;
      for (double v : d) fixed = fixed && std::abs(v - d[0]) <= 1e-13 * std::max(1.0, std::abs(d[0]));
      if (fixed) {
        ell = cn_tbc_coefficients(dt, dx_eff, d[0], steps + 1);
        return;
      }
      // Time-dependent tail offset: zero-potential kernel with lag phases.
      ell = cn_tbc_coefficients(dt, dx_eff, 0.0, steps + 1);
      for (int n = 0; n < steps; ++n) ph[n + 1] = ph[n] + d[n] * dt;
    };
    setup(dl, m.ell_l, m.ph_l);
    setup(dr, m.ell_r, m.ph_r);
  }
  m.gauge.assign(steps + 1, 0.0);
  for (int n = 0; n < steps; ++n) m.gauge[n + 1] = m.gauge[n] + m.v_gauge[n] * dt;
  return m;
}

}  // namespace qsp::detail
