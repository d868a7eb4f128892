#include "qsp/propagator.hpp"

#include <atomic>
#include <cmath>
#include <ostream>

#include "qsp/detail/cn_model.hpp"
#include "qsp/error.hpp"
#include "qsp/log.hpp"

namespace qsp {

std::string to_string(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::dirichlet: return "dirichlet";
    case BoundaryKind::tbc: return "tbc";
    case BoundaryKind::periodic: return "periodic";
  }
  return "?";
}

BoundaryKind parse_boundary(const std::string& name) {
  if (name == "dirichlet") return BoundaryKind::dirichlet;
  if (name == "tbc") return BoundaryKind::tbc;
  if (name == "periodic") return BoundaryKind::periodic;
  throw ValidationError("unknown boundary \"" + name + "\"; expected dirichlet, tbc or periodic");
}

Trajectory evolve(const Wavefunction& psi0, const Potential& pot, std::span<const double> eta_steps,
                  double T, const EvolveOptions& opt) {
  if (!(T > 0.0)) throw ValidationError("horizon T must be positive");
  if (opt.store_stride < 1) throw ValidationError("store stride must be >= 1");
  const int steps = static_cast<int>(eta_steps.size());
  if (steps < 1) throw ValidationError("evolve needs at least one step");
  const double dt = T / steps;
  const Grid& grid = psi0.grid();
  const auto m = detail::build_model(grid, pot, eta_steps, dt, opt.t0, opt.bc);
  const int J = grid.size();

  if (opt.bc == BoundaryKind::tbc) {
    double peak = 0.0;
    for (cplx v : psi0.values()) peak = std::max(peak, std::abs(v));
    const double edge = std::max({std::abs(psi0[0]), std::abs(psi0[1]), std::abs(psi0[J - 2]),
                                  std::abs(psi0[J - 1])});
    static std::atomic<bool> warned{false};
    if (edge > 1e-8 * peak && !warned.exchange(true))
      log_warn("initial state is not negligible on the boundary nodes; the transparent "
               "closure assumes compact support");
  }

  Trajectory tr;
  tr.bc = opt.bc;
  tr.dt = dt;
  tr.eta.assign(eta_steps.begin(), eta_steps.end());
  tr.gauge = m.gauge;
  tr.trace_left.reserve(steps + 1);
  tr.trace_right.reserve(steps + 1);

  std::vector<cplx> phi(psi0.values().begin(), psi0.values().end());
  std::vector<cplx> near_l, near_r;  // phi at nodes 1 and J-2 for the boundary memory
  if (opt.bc == BoundaryKind::tbc) {
    near_l.reserve(steps + 1);
    near_r.reserve(steps + 1);
    near_l.push_back(phi[1]);
    near_r.push_back(phi[J - 2]);
  }

  auto record = [&](int n) {
    const cplx rot = std::polar(1.0, -m.gauge[n]);
    tr.trace_left.push_back(rot * phi[0]);
    tr.trace_right.push_back(rot * phi[J - 1]);
    if (n % opt.store_stride == 0 || n == steps) {
      std::vector<cplx> psi(phi);
      if (m.gauge[n] != 0.0)
        for (auto& v : psi) v *= rot;
      tr.times.push_back(opt.t0 + n * dt);
      tr.states.emplace_back(grid, std::move(psi));
    }
  };
  record(0);

  for (int n = 0; n < steps; ++n) {
    const auto w = m.step_potential(n);
    const auto a = m.lhs(n, w);
    auto rhs = m.apply_rhs(n, w, phi);
    if (opt.bc == BoundaryKind::tbc) {
      cplx sl{0.0}, sr{0.0};
      for (int k = 1; k <= n + 1; ++k) {
        sl += m.hist(Side::left, n, k) * near_l[n + 1 - k];
        sr += m.hist(Side::right, n, k) * near_r[n + 1 - k];
      }
      rhs[0] = sl;
      rhs[J - 1] = sr;
    }
    detail::solve_inplace(a, rhs);
    phi = std::move(rhs);
    if (!std::isfinite(std::abs(phi[J / 2])) || !std::isfinite(std::abs(phi[0])))
      throw NumericalError("non-finite state at step " + std::to_string(n + 1));
    if (opt.bc == BoundaryKind::tbc) {
      near_l.push_back(phi[1]);
      near_r.push_back(phi[J - 2]);
    }
    record(n + 1);
  }
  return tr;
}

Trajectory evolve(const Wavefunction& psi0, const Potential& pot, const ControlSignal& eta,
                  double T, int steps, const EvolveOptions& opt) {
  if (steps < 1) throw ValidationError("evolve needs at least one step");
  auto par = eta.par;
  par.horizon = T;
  return evolve(psi0, pot, par.step_values(eta.params, steps), T, opt);
}

Wavefunction cn_step(const Wavefunction& psi, const Potential& pot, double t, double eta, double dt,
                     BoundaryKind bc) {
  const double e[] = {eta};
  EvolveOptions opt;
  opt.bc = bc;
  opt.t0 = t;
  return evolve(psi, pot, e, dt, opt).final_state();
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj, int stride) {
  if (stride < 1) throw ValidationError("snapshot stride must be >= 1");
  os << "t,x,re,im\n";
  os.precision(12);
  for (std::size_t i = 0; i < traj.states.size(); i += stride) {
    const auto& s = traj.states[i];
    for (int k = 0; k < s.size(); ++k)
      os << traj.times[i] << ',' << s.grid().node(k) << ',' << s[k].real() << ',' << s[k].imag()
         << '\n';
  }
}

}  // namespace qsp
