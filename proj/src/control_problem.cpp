#include "qsp/control_problem.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "qsp/detail/cn_model.hpp"
#include "qsp/error.hpp"
#include "qsp/log.hpp"
#include "qsp/spectral.hpp"
#include "qsp/tbc.hpp"

namespace qsp {

void CostSpec::validate() const {
  std::ostringstream err;
  if (!(alpha >= 0.0)) err << "cost.alpha must be >= 0; ";
  if (!(beta >= 0.0)) err << "cost.beta must be >= 0; ";
  if (!(alpha + beta > 0.0)) err << "cost.alpha + cost.beta must be > 0; ";
  if (p < 1) err << "cost.p must be >= 1; ";
  if (q < 1) err << "cost.q must be >= 1; ";
  if (phase_invariant && p != 2) err << "cost.phase_invariant requires p = 2; ";
  if (!err.str().empty()) throw ValidationError(err.str());
}

void ProblemSpec::validate() const {
  std::vector<std::string> errs;
  try {
    cost.validate();
  } catch (const ValidationError& e) {
    errs.push_back(e.what());
  }
  if (!(T > 0.0)) errs.push_back("T must be positive");
  if (steps < 1) errs.push_back("steps must be >= 1");
  if (!(psi_ini.grid() == target.grid())) errs.push_back("initial and target grids differ");
  if (std::abs(norm(psi_ini) - 1.0) > 1e-6) errs.push_back("initial state is not normalized");
  if (std::abs(norm(target) - 1.0) > 1e-6) errs.push_back("target state is not normalized");
  if (pot.periodic() && bc != BoundaryKind::periodic)
    errs.push_back("transmon potential requires the periodic boundary");
  if ((bc == BoundaryKind::periodic) != psi_ini.grid().periodic())
    errs.push_back("periodic boundary requires a periodic grid and vice versa");
  if (bc == BoundaryKind::tbc && psi_ini.size() >= 4) {
    const int J = psi_ini.size();
    const double edge = std::max({std::abs(psi_ini[0]), std::abs(psi_ini[1]),
                                  std::abs(psi_ini[J - 2]), std::abs(psi_ini[J - 1])});
    if (edge > 1e-6) errs.push_back("initial state must vanish near the transparent boundary");
  }
  if (!errs.empty()) {
    std::string msg;
    for (const auto& e : errs) msg += e + "; ";
    throw ValidationError(msg);
  }
}

double ProblemSpec::control_measure() const {
  if (!cost.space_extended) return 1.0;
  const auto& c = pot.coupling_spec();
  const double lo = std::max(c.xh_l, grid().x_l());
  const double hi = std::min(c.xh_r, grid().periodic() ? grid().x_l() + grid().size() * grid().dx()
                                                       : grid().x_r());
  return std::max(hi - lo, 0.0);
}

double terminal_cost(const Wavefunction& psi_T, const Wavefunction& target, int p, double alpha,
                     bool phase_invariant) {
  if (!(psi_T.grid() == target.grid())) throw ValidationError("terminal_cost: grid mismatch");
  if (p < 1) throw ValidationError("terminal_cost: p must be >= 1");
  if (phase_invariant) {
    if (p != 2) throw ValidationError("phase-invariant terminal cost requires p = 2");
    const double a = norm(psi_T), b = norm(target);
    return 0.5 * alpha * std::max(a * a + b * b - 2.0 * std::abs(inner_product(target, psi_T)), 0.0);
  }
  const Grid& g = psi_T.grid();
  double s = 0.0;
  for (int k = 0; k < g.size(); ++k) s += g.weight(k) * std::pow(std::abs(psi_T[k] - target[k]), p);
  return alpha / p * s;
}

double control_cost(std::span<const double> eta_steps, double dt, int q, double beta,
                    double measure) {
  if (q < 1) throw ValidationError("control_cost: q must be >= 1");
  double s = 0.0;
  for (double e : eta_steps) s += q == 2 ? e * e : std::pow(std::abs(e), q);
  return beta / q * s * dt * measure;
}

double control_cost(const ControlSignal& eta, double T, int steps, int q, double beta,
                    double measure) {
  auto par = eta.par;
  par.horizon = T;
  return control_cost(par.step_values(eta.params, steps), T / steps, q, beta, measure);
}

namespace {

ControlParametrization horizon_par(const ProblemSpec& spec) {
  auto par = spec.par;
  par.horizon = spec.T;
  return par;
}

}  // namespace

CostResult total_cost(const ProblemSpec& spec, std::span<const double> params, int store_stride) {
  const auto par = horizon_par(spec);
  if (static_cast<int>(params.size()) != par.size())
    throw ValidationError("control parameter count mismatch");
  const auto eta = par.step_values(params, spec.steps);
  CostResult r;
  EvolveOptions opt;
  opt.bc = spec.bc;
  opt.store_stride = store_stride;
  r.traj = evolve(spec.psi_ini, spec.pot, eta, spec.T, opt);
  const auto& c = spec.cost;
  const auto& fin = r.traj.final_state();
  r.terminal = c.alpha == 0.0 ? 0.0 : terminal_cost(fin, spec.target, c.p, c.alpha, c.phase_invariant);
  r.control = control_cost(eta, spec.T / spec.steps, c.q, c.beta, spec.control_measure());
  r.total = r.terminal + r.control;
  r.overlap = std::norm(inner_product(spec.target, fin));
  if (!std::isfinite(r.total)) throw NumericalError("non-finite cost");
  return r;
}

bool adjoint_supported(const ProblemSpec& spec) {
  if (spec.cost.p != 2 || spec.cost.q != 2) return false;
  if (spec.bc == BoundaryKind::tbc && !spec.pot.tails_control_free()) return false;
  return true;
}

namespace {

std::vector<cplx> multiply(const detail::Tridiag& a, std::span<const cplx> x) {
  const std::size_t n = a.di.size();
  std::vector<cplx> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx s = a.di[j] * x[j];
    if (j > 0) s += a.lo[j] * x[j - 1];
    if (j + 1 < n) s += a.up[j] * x[j + 1];
    y[j] = s;
  }
  y[0] += a.top_right * x[n - 1];
  y[n - 1] += a.bottom_left * x[0];
  return y;
}

// B_n as a matrix, boundary rows zero.
detail::Tridiag rhs_matrix(const detail::CnModel& m, const std::vector<double>& w) {
  const int J = m.grid.size();
  const cplx a{0.0, m.dt / 2.0};
  detail::Tridiag b;
  b.lo.assign(J, cplx{0.0});
  b.up.assign(J, cplx{0.0});
  b.di.assign(J, cplx{0.0});
  for (int j = 0; j < J; ++j) {
    if (!m.equation_row(j)) continue;
    b.di[j] = 1.0 - a * (m.h_diag + w[j]);
    if (j > 0) b.lo[j] = -a * m.h_lo;
    if (j < J - 1) b.up[j] = -a * m.h_up;
  }
  if (m.bc == BoundaryKind::periodic) {
    b.top_right = -a * m.h_lo;
    b.bottom_left = -a * m.h_up;
  }
  return b;
}

}  // namespace

GradientResult adjoint_gradient(const ProblemSpec& spec, std::span<const double> params) {
  if (!adjoint_supported(spec)) {
    log_warn("exact adjoint needs p = q = 2 and control-free transparent tails; "
             "using central differences");
    GradientResult g;
    g.grad = fd_gradient(spec, params, 1e-5);
    const auto cr = total_cost(spec, params, spec.steps);
    g.cost = cr.total;
    g.overlap = cr.overlap;
    g.exact = false;
    return g;
  }
  const auto par = horizon_par(spec);
  const auto cr = total_cost(spec, params, 1);
  const auto& traj = cr.traj;
  const auto m = detail::build_model(spec.grid(), spec.pot, traj.eta, traj.dt, 0.0, spec.bc);
  const int N = spec.steps;
  const int J = spec.grid().size();
  const Grid& g = spec.grid();
  const auto& c = spec.cost;

  auto phi_at = [&](int n) {
    std::vector<cplx> v(traj.states[n].values().begin(), traj.states[n].values().end());
    if (m.gauge[n] != 0.0) {
      const cplx rot = std::polar(1.0, m.gauge[n]);
      for (auto& x : v) x *= rot;
    }
    return v;
  };

  // Terminal sensitivity in the reference frame.
  std::vector<cplx> gt(J, cplx{0.0});
  if (c.alpha != 0.0) {
    const auto& psi = traj.final_state();
    cplx unit{1.0};
    if (c.phase_invariant) {
      const cplx o = inner_product(spec.target, psi);
      unit = std::abs(o) > 0.0 ? o / std::abs(o) : cplx{0.0};
    }
    const cplx rot = std::polar(1.0, m.gauge[N]);
    for (int j = 0; j < J; ++j) gt[j] = rot * c.alpha * g.weight(j) * (psi[j] - spec.target[j] * unit);
  }

  std::vector<double> geta(N, 0.0);
  std::vector<cplx> mu_l(N + 1), mu_r(N + 1);  // adjoint boundary rows, by time level
  std::vector<cplx> mu;                          // current mu^{n+1}
  std::vector<cplx> phi_next = phi_at(N);
  const cplx a{0.0, m.dt / 2.0};

  for (int n = N - 1; n >= 0; --n) {
    const auto w = m.step_potential(n);
    const auto ah = detail::conj_transpose(m.lhs(n, w));
    std::vector<cplx> rhs;
    if (n == N - 1) {
      rhs = gt;
    } else {
      const auto wn = m.step_potential(n + 1);
      rhs = multiply(detail::conj_transpose(rhs_matrix(m, wn)), mu);
      if (m.bc == BoundaryKind::tbc) {
        // mu^{n+1} sees the memory terms of every later step m >= n+1.
        cplx sl{0.0}, sr{0.0};
        for (int s = n + 1; s <= N - 1; ++s) {
          const int k = s - n;
          sl += std::conj(m.hist(Side::left, s, k)) * mu_l[s + 1];
          sr += std::conj(m.hist(Side::right, s, k)) * mu_r[s + 1];
        }
        rhs[1] += sl;
        rhs[J - 2] += sr;
      }
    }
    detail::solve_inplace(ah, rhs);
    mu = std::move(rhs);
    mu_l[n + 1] = mu[0];
    mu_r[n + 1] = mu[J - 1];

    const auto phi_n = phi_at(n);
    double s = 0.0;
    for (int j = 0; j < J; ++j) {
      if (!m.equation_row(j) || m.coupling[j] == 0.0) continue;
      s += (std::conj(mu[j]) * (-a) * m.coupling[j] * (phi_next[j] + phi_n[j])).real();
    }
    geta[n] = s;
    phi_next = phi_n;
  }

  const double dt = spec.T / N;
  const double meas = spec.control_measure();
  for (int n = 0; n < N; ++n) geta[n] += c.beta * traj.eta[n] * dt * meas;

  GradientResult r;
  r.grad = par.pullback(geta);
  r.cost = cr.total;
  r.overlap = cr.overlap;
  return r;
}

std::vector<double> fd_gradient(const ProblemSpec& spec, std::span<const double> params,
                                double eps) {
  if (!(eps > 0.0)) throw ValidationError("fd_gradient: eps must be positive");
  ProblemSpec s = spec;
  const double widen = 4.0 * eps * (spec.par.size() + 1);
  s.pot.set_control_bounds(spec.pot.control_lo() - widen, spec.pot.control_hi() + widen);
  const int n = static_cast<int>(params.size());
  std::vector<double> base(params.begin(), params.end());
  std::vector<double> g(n, 0.0);

  auto work = [&](int k) {
    auto p = base;
    p[k] = base[k] + eps;
    const double up = total_cost(s, p, s.steps).total;
    p[k] = base[k] - eps;
    const double dn = total_cost(s, p, s.steps).total;
    g[k] = (up - dn) / (2.0 * eps);
  };
  const int threads = std::max(1, std::min<int>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (int t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (int k = t; k < n; k += threads) work(k);
    }));
  for (auto& j : jobs) j.get();
  return g;
}

GradcheckReport gradcheck(const ProblemSpec& spec, std::span<const double> params,
                          const std::vector<double>& eps_list, bool flip_sign) {
  if (eps_list.empty()) throw ValidationError("gradcheck needs at least one eps");
  GradcheckReport rep;
  rep.adjoint = adjoint_gradient(spec, params).grad;
  if (flip_sign)
    for (double& v : rep.adjoint) v = -v;
  double scale = 0.0;
  for (double v : rep.adjoint) scale = std::max(scale, std::abs(v));
  for (double eps : eps_list) {
    GradcheckEntry e;
    e.eps = eps;
    e.fd = fd_gradient(spec, params, eps);
    double diff = 0.0, fscale = 0.0;
    for (std::size_t i = 0; i < e.fd.size(); ++i) {
      diff = std::max(diff, std::abs(e.fd[i] - rep.adjoint[i]));
      fscale = std::max(fscale, std::abs(e.fd[i]));
    }
    const double den = std::max(scale, fscale);
    e.rel_error = den > 0.0 ? diff / den : diff;
    rep.sweep.push_back(std::move(e));
  }
  for (std::size_t i = 1; i < rep.sweep.size(); ++i)
    if (rep.sweep[i].rel_error < rep.sweep[rep.best].rel_error) rep.best = i;
  return rep;
}

Wavefunction laplace_resolvent(const Potential& pot, const Wavefunction& v0, BoundaryKind bc,
                               double eta, double t, cplx s) {
  const Grid& g = v0.grid();
  const int J = g.size();
  const double h = g.dx();
  const double kin = pot.kinetic();
  const double c = kin / (h * h);
  const cplx hop = -c * std::polar(1.0, -pot.n_g() * h);
  const cplx is{0.0, 1.0};
  detail::Tridiag a;
  a.lo.assign(J, hop == cplx{0.0} ? cplx{0.0} : std::conj(hop));
  a.up.assign(J, hop);
  a.di.resize(J);
  std::vector<cplx> rhs(J);
  for (int j = 0; j < J; ++j) {
    a.di[j] = 2.0 * c + pot.value(g.node(j), t, eta) - is * s;
    rhs[j] = -is * v0[j];
  }
  a.lo[0] = 0.0;
  a.up[J - 1] = 0.0;
  if (bc == BoundaryKind::periodic) {
    a.top_right = std::conj(hop);
    a.bottom_left = hop;
  } else if (bc == BoundaryKind::dirichlet) {
    a.di[0] = a.di[J - 1] = 1.0;
    a.up[0] = a.lo[J - 1] = 0.0;
    rhs[0] = rhs[J - 1] = 0.0;
  } else {
    // Ghost-node closure with the decaying exterior solution on each side.
    const double vl = pot.tail(Side::left, t, eta);
    const double vr = pot.tail(Side::right, t, eta);
    const cplx sig_r = tbc_symbol_continued(s, vr) / std::sqrt(kin);
    const cplx sig_l = -tbc_symbol_continued(s, vl) / std::sqrt(kin);
    a.di[0] += 2.0 * c * h * sig_l;
    a.up[0] = -2.0 * c;
    a.di[J - 1] -= 2.0 * c * h * sig_r;
    a.lo[J - 1] = -2.0 * c;
  }
  detail::solve_inplace(a, rhs);
  return Wavefunction(g, std::move(rhs));
}

SemiSpectralResult semi_spectral_cost(const ProblemSpec& spec, std::span<const double> params,
                                      int count, cplx shift) {
  const auto par = horizon_par(spec);
  if (static_cast<int>(params.size()) != par.size())
    throw ValidationError("control parameter count mismatch");
  // Intervals of constant control.
  std::vector<std::pair<double, double>> pieces;  // (duration, eta)
  if (par.kind == ControlKind::piecewise_constant) {
    for (int i = 0; i < par.n_intervals; ++i) pieces.emplace_back(spec.T / par.n_intervals, params[i]);
  } else {
    for (double e : par.step_values(params, spec.steps)) pieces.emplace_back(spec.T / spec.steps, e);
  }
  Wavefunction v = spec.psi_ini;
  double t0 = 0.0;
  for (const auto& [tau, eta] : pieces) {
    const auto contour = talbot_contour(tau, count, shift);
    Wavefunction next(v.grid());
    for (std::size_t k = 0; k < contour.nodes.size(); ++k) {
      const auto vs = laplace_resolvent(spec.pot, v, spec.bc, eta, t0 + tau / 2.0, contour.nodes[k]);
      next += contour.weights[k] * vs;
    }
    for (cplx x : next.values())
      if (!std::isfinite(std::abs(x))) throw NumericalError("Laplace inversion diverged");
    v = std::move(next);
    t0 += tau;
  }
  SemiSpectralResult r;
  const auto& c = spec.cost;
  r.terminal = c.alpha == 0.0 ? 0.0 : terminal_cost(v, spec.target, c.p, c.alpha, c.phase_invariant);
  r.control = control_cost(par.step_values(params, spec.steps), spec.T / spec.steps, c.q, c.beta,
                           spec.control_measure());
  r.total = r.terminal + r.control;
  r.final_state = std::move(v);
  return r;
}

}  // namespace qsp
