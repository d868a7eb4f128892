#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "qsp/cli.hpp"
#include "qsp/eigen_basis.hpp"
#include "qsp/error.hpp"
#include "qsp/log.hpp"
#include "qsp/tbc.hpp"

namespace qsp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream os(dir / name);
  if (!os) throw ValidationError("cannot write " + (dir / name).string());
  os << std::setprecision(17);
  return os;
}

// Leading comment lines on every CSV artifact.
void csv_preamble(std::ostream& os, const RunConfig& cfg) {
  os << "# " << version_string() << "\n# config: " << cfg.echo.dump() << "\n";
}

json base_json(const RunConfig& cfg, const std::string& mode) {
  json j;
  j["schema_version"] = results_schema_version;
  j["version"] = version_string();
  j["mode"] = mode;
  j["model"] = cfg.model;
  j["config"] = cfg.echo;
  return j;
}

void write_json(const fs::path& dir, const std::string& name, const json& j) {
  auto os = open_out(dir, name);
  os << j.dump(2) << "\n";
}

// Non-finite doubles become null in the JSON output.
json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_control_csv(const fs::path& out, const RunConfig& cfg, std::span<const double> params) {
  auto os = open_out(out, "control.csv");
  csv_preamble(os, cfg);
  os << "t,eta\n";
  const auto eta = cfg.par.step_values(params, cfg.steps);
  const double dt = cfg.T / cfg.steps;
  for (int n = 0; n < cfg.steps; ++n) os << (n + 0.5) * dt << "," << eta[n] << "\n";
}

void write_boundary_csv(const fs::path& out, const RunConfig& cfg, const Trajectory& tr) {
  auto os = open_out(out, "boundary.csv");
  csv_preamble(os, cfg);
  os << "t,re_left,im_left,re_right,im_right\n";
  for (std::size_t n = 0; n < tr.trace_left.size(); ++n) {
    os << n * tr.dt << "," << tr.trace_left[n].real() << "," << tr.trace_left[n].imag() << ","
       << tr.trace_right[n].real() << "," << tr.trace_right[n].imag() << "\n";
  }
}

std::vector<double> start_params(const RunConfig& cfg, std::uint64_t seed) {
  if (!cfg.control_params.empty()) return project(cfg.control_params, cfg.par.lo, cfg.par.hi);
  OptOptions o = cfg.opt;
  o.seed = seed;
  return initial_params(cfg.par, o);
}

}  // namespace

int run_solve(const RunConfig& cfg, const fs::path& out, std::optional<std::uint64_t> seed_override) {
  const std::uint64_t seed = seed_override.value_or(cfg.seed);
  json res = base_json(cfg, "solve");
  res["seed"] = seed;
  std::vector<double> params;
  try {
    OptOptions opt = cfg.opt;
    opt.seed = seed;
    Objective f;
    std::optional<ProblemSpec> spec;
    std::optional<TwoLevelProblem> pb;
    if (cfg.model == "two_level") {
      pb = build_two_level(cfg);
      f = make_objective(*pb);
    } else {
      spec = build_problem(cfg);
      spec->validate();
      f = make_objective(*spec);
    }
    params = start_params(cfg, seed);

    OptResult r;
    if (cfg.starts > 1 && cfg.control_params.empty()) {
      auto runs = multi_start(f, cfg.par, opt, cfg.starts);
      std::size_t best = 0;
      for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].final_cost < runs[best].final_cost) best = i;
      log_info("multi-start: best of " + std::to_string(runs.size()) + " is seed " +
               std::to_string(seed + best));
      r = std::move(runs[best]);
    } else {
      r = optimize(f, cfg.par, opt, params);
    }
    params = r.params;

    res["status"] = "ok";
    res["final_cost"] = r.final_cost;
    res["iterations"] = r.iterations;
    res["termination"] = r.termination;
    res["params"] = params;
    res["cost_history"] = r.cost_history;
    if (pb) {
      const double fid = two_level_fidelity(*pb, params);
      res["fidelity"] = fid;
      res["terminal_cost"] = 1.0 - fid;
      res["control_cost"] = r.final_cost - (1.0 - fid);
    } else {
      const auto c = total_cost(*spec, params, cfg.snapshot_stride > 0 ? cfg.snapshot_stride : cfg.steps);
      res["fidelity"] = c.overlap;
      res["terminal_cost"] = c.terminal;
      res["control_cost"] = c.control;
      res["final_norm"] = norm(c.traj.final_state());
      if (cfg.snapshot_stride > 0) {
        auto os = open_out(out, "snapshots.csv");
        csv_preamble(os, cfg);
        write_snapshots_csv(os, c.traj);
      }
      if (cfg.bc == BoundaryKind::tbc) write_boundary_csv(out, cfg, c.traj);
    }
    write_json(out, "results.json", res);
    write_control_csv(out, cfg, params);
    auto it = open_out(out, "iterations.csv");
    csv_preamble(it, cfg);
    write_iterations_csv(it, r);
    std::cout << "final_cost " << r.final_cost << " fidelity " << res["fidelity"].get<double>()
              << " iterations " << r.iterations << " (" << r.termination << ")\n";
    return exit_ok;
  } catch (const ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_validation;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical abort: " << ex.what() << "\n";
    res["status"] = "numerical_abort";
    res["partial"] = true;
    res["error"] = ex.what();
    res["params"] = params;
    try {
      write_json(out, "results.json", res);
    } catch (const std::exception&) {
    }
    return exit_numerical;
  }
}

int run_gradcheck(const RunConfig& cfg, const std::optional<fs::path>& out) {
  try {
    if (cfg.model != "schrodinger1d")
      throw ValidationError("gradcheck: only the schrodinger1d model has an adjoint gradient");
    const ProblemSpec spec = build_problem(cfg);
    spec.validate();
    OptOptions o = cfg.opt;
    o.init = InitKind::random;
    o.seed = cfg.seed;
    const auto params =
        cfg.control_params.empty() ? initial_params(cfg.par, o) : cfg.control_params;
    const auto rep = gradcheck(spec, params, cfg.gradcheck_eps, cfg.debug_flip_gradient_sign);
    const double err = rep.max_rel_error();
    const bool pass = err <= cfg.gradcheck_threshold;

    std::cout << "adjoint " << (adjoint_supported(spec) ? "exact" : "finite-difference fallback")
              << ", " << params.size() << " parameters\n";
    std::cout << std::setw(12) << "eps" << std::setw(16) << "rel_error" << "\n";
    for (const auto& e : rep.sweep)
      std::cout << std::setw(12) << e.eps << std::setw(16) << e.rel_error << "\n";
    std::cout << "best eps " << rep.sweep[rep.best].eps << " rel_error " << err << " threshold "
              << cfg.gradcheck_threshold << (pass ? " PASS" : " FAIL") << "\n";

    if (out) {
      json j = base_json(cfg, "gradcheck");
      j["status"] = pass ? "ok" : "threshold_exceeded";
      j["params"] = params;
      j["adjoint"] = rep.adjoint;
      j["adjoint_exact"] = adjoint_supported(spec);
      j["flip_sign"] = cfg.debug_flip_gradient_sign;
      json sweep = json::array();
      for (const auto& e : rep.sweep) sweep.push_back({{"eps", e.eps}, {"fd", e.fd}, {"rel_error", e.rel_error}});
      j["sweep"] = sweep;
      j["best_eps"] = rep.sweep[rep.best].eps;
      j["max_rel_error"] = err;
      j["threshold"] = cfg.gradcheck_threshold;
      j["passed"] = pass;
      write_json(*out, "gradcheck.json", j);
    }
    return pass ? exit_ok : exit_threshold;
  } catch (const ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_validation;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical abort: " << ex.what() << "\n";
    return exit_numerical;
  }
}

int run_spectrum(const RunConfig& cfg, const fs::path& out) {
  try {
    if (cfg.model != "schrodinger1d") throw ValidationError("spectrum: needs the schrodinger1d model");
    const Potential& pot = *cfg.pot;
    const BoundaryKind bc = cfg.bc == BoundaryKind::tbc ? BoundaryKind::dirichlet : cfg.bc;
    const double eta = cfg.control_params.empty()
                           ? std::clamp(0.0, pot.control_lo(), pot.control_hi())
                           : cfg.par.eval(cfg.control_params, 0.0);
    const auto h = hamiltonian_matrix(pot, *cfg.grid, bc, std::nullopt, 0.0, eta);
    if (cfg.levels > h.dim())
      throw ValidationError("spectrum.levels: " + std::to_string(cfg.levels) + " exceeds the " +
                            std::to_string(h.dim()) + " grid unknowns");
    const auto e = eigenvalues(h, cfg.levels);
    auto os = open_out(out, "spectrum.csv");
    csv_preamble(os, cfg);
    write_spectrum_csv(os, e, pot.transmon_params());
    for (std::size_t n = 0; n < e.size(); ++n) std::cout << n << " " << e[n] << "\n";
    return exit_ok;
  } catch (const ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_validation;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical abort: " << ex.what() << "\n";
    return exit_numerical;
  }
}

int run_simulate(const RunConfig& cfg, const fs::path& out) {
  try {
    if (cfg.model != "schrodinger1d") throw ValidationError("simulate: needs the schrodinger1d model");
    const ProblemSpec spec = build_problem(cfg);
    spec.validate();
    std::vector<double> params = cfg.control_params;
    if (params.empty()) params.assign(cfg.par.size(), 0.0);
    const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : std::max(1, cfg.steps / 20);
    const auto c = total_cost(spec, params, stride);
    const Trajectory& tr = c.traj;

    json j = base_json(cfg, "simulate");
    j["status"] = "ok";
    j["params"] = params;
    j["boundary"] = to_string(cfg.bc);
    j["initial_norm"] = norm(spec.psi_ini);
    j["final_norm"] = norm(tr.final_state());
    j["terminal_cost"] = c.terminal;
    j["control_cost"] = c.control;
    j["fidelity"] = c.overlap;
    const double t_exit = cfg.t_exit.value_or(cfg.T);
    j["t_exit"] = t_exit;
    j["reflection"] = num_or_null(reflection_measure(tr.times, tr.states, t_exit));

    {
      auto os = open_out(out, "snapshots.csv");
      csv_preamble(os, cfg);
      write_snapshots_csv(os, tr);
    }
    write_control_csv(out, cfg, params);
    write_boundary_csv(out, cfg, tr);

    const Grid& g = *cfg.grid;
    const double eta0 = tr.eta.empty() ? 0.0 : tr.eta.front();
    if (cfg.dump_kernel && cfg.bc == BoundaryKind::tbc) {
      const double dt = cfg.T / cfg.steps;
      const double dx = g.dx() / std::sqrt(spec.pot.kinetic());
      const double vl = spec.pot.tail(Side::left, 0.0, eta0);
      const double vr = spec.pot.tail(Side::right, 0.0, eta0);
      const double vref = 0.5 * (vl + vr);
      auto kl = open_out(out, "kernel_left.csv");
      csv_preamble(kl, cfg);
      write_kernel_csv(kl, discrete_tbc_kernel(dt, dx, vl, cfg.steps + 1, Side::left, vref));
      auto kr = open_out(out, "kernel_right.csv");
      csv_preamble(kr, cfg);
      write_kernel_csv(kr, discrete_tbc_kernel(dt, dx, vr, cfg.steps + 1, Side::right, vref));
    }

    if (!cfg.exterior_points.empty()) {
      if (cfg.bc != BoundaryKind::tbc) throw ValidationError("output.exterior_points: needs the tbc boundary");
      std::vector<cplx> s_grid = cfg.exterior_s;
      if (s_grid.empty())
        for (int k = 0; k < 8; ++k) s_grid.emplace_back(1.0, 0.5 * k);
      auto os = open_out(out, "exterior.csv");
      csv_preamble(os, cfg);
      os << "x,s_re,s_im,w_re,w_im\n";
      const double vl = spec.pot.tail(Side::left, 0.0, eta0);
      const double vr = spec.pot.tail(Side::right, 0.0, eta0);
      for (double x : cfg.exterior_points) {
        std::vector<LaplaceSample> w;
        if (x >= g.x_r()) {
          w = exterior_reconstruct(TimeSeries{tr.dt, tr.trace_right}, g.x_r(), x, vr, s_grid);
        } else if (x <= g.x_l()) {
          // Mirror image: distance x_l - x into the left tail.
          w = exterior_reconstruct(TimeSeries{tr.dt, tr.trace_left}, g.x_l(), 2.0 * g.x_l() - x, vl,
                                   s_grid);
        } else {
          log_warn("exterior point " + std::to_string(x) + " lies inside the domain; skipped");
          continue;
        }
        for (const auto& ls : w)
          os << x << "," << ls.s.real() << "," << ls.s.imag() << "," << ls.value.real() << ","
             << ls.value.imag() << "\n";
      }
    }

    write_json(out, "simulate.json", j);
    std::cout << "final_norm " << j["final_norm"].get<double>() << " reflection "
              << j["reflection"] << " fidelity " << c.overlap << "\n";
    return exit_ok;
  } catch (const ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_validation;
  } catch (const NumericalError& ex) {
    std::cerr << "numerical abort: " << ex.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace qsp::cli
