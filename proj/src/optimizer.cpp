#include "qsp/optimizer.hpp"

#include <cmath>
#include <deque>
#include <future>
#include <numeric>
#include <ostream>
#include <random>

#include "qsp/error.hpp"

namespace qsp {

std::string to_string(OptMethod m) { return m == OptMethod::gd_armijo ? "gd_armijo" : "lbfgs"; }

OptMethod parse_opt_method(const std::string& name) {
  if (name == "gd_armijo") return OptMethod::gd_armijo;
  if (name == "lbfgs") return OptMethod::lbfgs;
  throw ValidationError("unknown optimizer method \"" + name + "\"; expected gd_armijo or lbfgs");
}

std::vector<double> initial_params(const ControlParametrization& par, const OptOptions& opt) {
  std::vector<double> x(par.size(), 0.0);
  if (opt.init == InitKind::random) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : x) v = 0.1 * (par.lo + (par.hi - par.lo) * u(rng));
  }
  return project(x, par.lo, par.hi);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double projected_grad_norm(std::span<const double> x, std::span<const double> g, double lo,
                           double hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - std::clamp(x[i] - g[i], lo, hi);
    s += d * d;
  }
  return std::sqrt(s);
}

Evaluation checked(const Objective& f, std::span<const double> x, bool grad) {
  auto e = f(x, grad);
  if (!std::isfinite(e.cost)) throw NumericalError("optimizer: non-finite cost");
  for (double v : e.grad)
    if (!std::isfinite(v)) throw NumericalError("optimizer: non-finite gradient");
  return e;
}

// Two-loop recursion: returns -H g.
std::vector<double> lbfgs_direction(const std::vector<double>& g,
                                    const std::deque<std::vector<double>>& ss,
                                    const std::deque<std::vector<double>>& ys) {
  std::vector<double> q = g;
  const std::size_t m = ss.size();
  std::vector<double> alpha(m), rho(m);
  for (std::size_t i = m; i-- > 0;) {
    rho[i] = 1.0 / dot(ys[i], ss[i]);
    alpha[i] = rho[i] * dot(ss[i], q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] -= alpha[i] * ys[i][k];
  }
  if (m > 0) {
    const double gamma = dot(ss[m - 1], ys[m - 1]) / dot(ys[m - 1], ys[m - 1]);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double beta = rho[i] * dot(ys[i], q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] += ss[i][k] * (alpha[i] - beta);
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

OptResult optimize(const Objective& f, const ControlParametrization& par, const OptOptions& opt,
                   std::vector<double> x0) {
  if (opt.max_iter < 0) throw ValidationError("max_iter must be >= 0");
  if (!(opt.tol >= 0.0)) throw ValidationError("tol must be >= 0");
  if (opt.memory < 1) throw ValidationError("L-BFGS memory must be >= 1");
  std::vector<double> x = x0.empty() ? initial_params(par, opt) : project(x0, par.lo, par.hi);
  if (static_cast<int>(x.size()) != par.size())
    throw ValidationError("initial parameter count mismatch");

  OptResult r;
  auto cur = checked(f, x, true);
  r.cost_history.push_back(cur.cost);
  r.iterates.push_back(x);
  double pg = projected_grad_norm(x, cur.grad, par.lo, par.hi);
  r.log.push_back({0, cur.cost, pg, 0.0, cur.fidelity});

  std::deque<std::vector<double>> ss, ys;
  std::vector<double> s_prev, y_prev;
  const std::size_t n = x.size();

  while (true) {
    if (pg <= opt.tol) {
      r.termination = "gradient_tol";
      break;
    }
    if (r.iterations >= opt.max_iter) {
      r.termination = "max_iter";
      break;
    }

    std::vector<double> d(n);
    double tau = 1.0;
    if (opt.method == OptMethod::lbfgs) {
      d = lbfgs_direction(cur.grad, ss, ys);
      if (dot(d, cur.grad) >= 0.0) {
        ss.clear();
        ys.clear();
        d = lbfgs_direction(cur.grad, ss, ys);
      }
      if (ss.empty()) tau = 1.0 / std::max(std::sqrt(dot(cur.grad, cur.grad)), 1e-300);
    } else {
      for (std::size_t i = 0; i < n; ++i) d[i] = -cur.grad[i];
      if (!s_prev.empty() && dot(s_prev, y_prev) > 0.0)
        tau = dot(s_prev, s_prev) / dot(s_prev, y_prev);
      else
        tau = 1.0 / std::max(std::sqrt(dot(cur.grad, cur.grad)), 1e-300);
    }

    bool accepted = false;
    std::vector<double> xt(n);
    Evaluation trial;
    for (int b = 0; b <= opt.max_backtracks; ++b, tau *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) xt[i] = std::clamp(x[i] + tau * d[i], par.lo, par.hi);
      std::vector<double> step(n);
      for (std::size_t i = 0; i < n; ++i) step[i] = xt[i] - x[i];
      const double slope = dot(cur.grad, step);
      if (!(slope < 0.0)) {
        if (opt.method == OptMethod::lbfgs && !ss.empty()) {
          // Projection destroyed descent; restart from the gradient.
          ss.clear();
          ys.clear();
          for (std::size_t i = 0; i < n; ++i) d[i] = -cur.grad[i];
          tau = 2.0 / std::max(std::sqrt(dot(cur.grad, cur.grad)), 1e-300);
        }
        continue;
      }
      trial = checked(f, xt, false);
      if (trial.cost <= cur.cost + opt.armijo_c * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      r.termination = "line_search";
      break;
    }

    auto next = checked(f, xt, true);
    s_prev.assign(n, 0.0);
    y_prev.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      s_prev[i] = xt[i] - x[i];
      y_prev[i] = next.grad[i] - cur.grad[i];
    }
    const double sy = dot(s_prev, y_prev);
    if (sy > 1e-12 * std::sqrt(dot(s_prev, s_prev) * dot(y_prev, y_prev))) {
      ss.push_back(s_prev);
      ys.push_back(y_prev);
      if (static_cast<int>(ss.size()) > opt.memory) {
        ss.pop_front();
        ys.pop_front();
      }
    }
    // Armijo gives <= up to round-off in the re-evaluation; keep the history monotone.
    next.cost = std::min(next.cost, cur.cost);
    x = xt;
    cur = std::move(next);
    ++r.iterations;
    pg = projected_grad_norm(x, cur.grad, par.lo, par.hi);
    r.cost_history.push_back(cur.cost);
    r.iterates.push_back(x);
    r.log.push_back({r.iterations, cur.cost, pg, tau, cur.fidelity});
  }
  r.params = x;
  r.final_cost = cur.cost;
  r.final_fidelity = cur.fidelity;
  return r;
}

Objective make_objective(const ProblemSpec& spec) {
  return [spec](std::span<const double> x, bool grad) {
    Evaluation e;
    if (grad) {
      auto g = adjoint_gradient(spec, x);
      e.cost = g.cost;
      e.grad = std::move(g.grad);
      e.fidelity = g.overlap;
    } else {
      const auto c = total_cost(spec, x, spec.steps);
      e.cost = c.total;
      e.fidelity = c.overlap;
    }
    return e;
  };
}

OptResult optimize(const ProblemSpec& spec, const OptOptions& opt) {
  spec.validate();
  auto par = spec.par;
  par.horizon = spec.T;
  return optimize(make_objective(spec), par, opt);
}

double two_level_fidelity(const TwoLevelProblem& pb, std::span<const double> params) {
  auto par = pb.par;
  par.horizon = pb.T;
  const ControlSignal sig{par, std::vector<double>(params.begin(), params.end())};
  const auto res = magnus_propagate(pb.sys, sig, pb.T, pb.steps, pb.order);
  return state_fidelity(res.u, pb.psi0, pb.target);
}

Objective make_objective(const TwoLevelProblem& pb) {
  return [pb](std::span<const double> x, bool grad) {
    auto par = pb.par;
    par.horizon = pb.T;
    auto cost = [&](std::span<const double> p) {
      const double fid = two_level_fidelity(pb, p);
      const auto eta = par.step_values(p, pb.steps);
      return std::pair{1.0 - fid + control_cost(eta, pb.T / pb.steps, 2, pb.beta), fid};
    };
    Evaluation e;
    std::tie(e.cost, e.fidelity) = cost(x);
    if (grad) {
      const double h = 1e-6;
      std::vector<double> p(x.begin(), x.end());
      e.grad.resize(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double v = p[k];
        p[k] = v + h;
        const double up = cost(p).first;
        p[k] = v - h;
        const double dn = cost(p).first;
        p[k] = v;
        e.grad[k] = (up - dn) / (2.0 * h);
      }
    }
    return e;
  };
}

std::vector<OptResult> multi_start(const Objective& f, const ControlParametrization& par,
                                   const OptOptions& opt, int starts) {
  if (starts < 1) throw ValidationError("multi_start needs at least one start");
  std::vector<std::future<OptResult>> jobs;
  for (int i = 0; i < starts; ++i) {
    OptOptions o = opt;
    o.seed = opt.seed + static_cast<std::uint64_t>(i);
    if (i > 0) o.init = InitKind::random;
    jobs.push_back(std::async(std::launch::async, [&f, &par, o] { return optimize(f, par, o); }));
  }
  std::vector<OptResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void write_iterations_csv(std::ostream& os, const OptResult& r) {
  os.precision(15);
  os << "iter,cost,grad_norm,step_size,fidelity\n";
  for (const auto& it : r.log)
    os << it.iter << ',' << it.cost << ',' << it.grad_norm << ',' << it.step << ',' << it.fidelity
       << '\n';
}

}  // namespace qsp
