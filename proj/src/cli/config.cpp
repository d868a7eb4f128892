#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "qsp/cli.hpp"
#include "qsp/eigen_basis.hpp"
#include "qsp/error.hpp"
#include "qsp/targets.hpp"

#ifndef QSP_VERSION
#define QSP_VERSION "0.0.0"
#endif

namespace qsp::cli {

using nlohmann::json;

std::string version_string() { return std::string("qsp ") + QSP_VERSION; }

namespace {

struct Errors {
  std::vector<std::string> list;
  void add(const std::string& path, const std::string& msg) { list.push_back(path + ": " + msg); }
};

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& child(const json& o, const char* key) {
  static const json empty = json::object();
  if (o.is_object() && o.contains(key)) return o.at(key);
  return empty;
}

bool has(const json& o, const char* key) { return o.is_object() && o.contains(key); }

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

double num(const json& o, const char* key, const std::string& path, Errors& e,
           std::optional<double> def, const std::function<bool(double)>& ok = {},
           const char* rule = "") {
  const std::string p = join(path, key);
  if (!has(o, key)) {
    if (!def) e.add(p, "required field is missing");
    return def.value_or(0.0);
  }
  const auto& v = o.at(key);
  if (!v.is_number()) {
    e.add(p, "must be a number");
    return def.value_or(0.0);
  }
  const double x = v.get<double>();
  if (!std::isfinite(x) || (ok && !ok(x))) {
    e.add(p, std::string("must be ") + rule + " (got " + fmt(x) + ")");
    return def.value_or(x);
  }
  return x;
}

int integer(const json& o, const char* key, const std::string& path, Errors& e,
            std::optional<int> def, int lo, int hi = 1 << 30) {
  const std::string p = join(path, key);
  if (!has(o, key)) {
    if (!def) e.add(p, "required field is missing");
    return def.value_or(lo);
  }
  const auto& v = o.at(key);
  if (!v.is_number_integer()) {
    e.add(p, "must be an integer");
    return def.value_or(lo);
  }
  const long long x = v.get<long long>();
  if (x < lo || x > hi) {
    std::ostringstream s;
    s << "must be in [" << lo << ", " << hi << "] (got " << x << ")";
    e.add(p, s.str());
    return def.value_or(lo);
  }
  return static_cast<int>(x);
}

std::string str(const json& o, const char* key, const std::string& path, Errors& e,
                std::optional<std::string> def) {
  const std::string p = join(path, key);
  if (!has(o, key)) {
    if (!def) e.add(p, "required field is missing");
    return def.value_or("");
  }
  if (!o.at(key).is_string()) {
    e.add(p, "must be a string");
    return def.value_or("");
  }
  return o.at(key).get<std::string>();
}

bool boolean(const json& o, const char* key, const std::string& path, Errors& e, bool def) {
  if (!has(o, key)) return def;
  if (!o.at(key).is_boolean()) {
    e.add(join(path, key), "must be true or false");
    return def;
  }
  return o.at(key).get<bool>();
}

std::vector<double> numbers(const json& o, const char* key, const std::string& path, Errors& e) {
  std::vector<double> out;
  if (!has(o, key)) return out;
  const auto& v = o.at(key);
  if (!v.is_array()) {
    e.add(join(path, key), "must be an array of numbers");
    return out;
  }
  for (const auto& x : v) {
    if (!x.is_number()) {
      e.add(join(path, key), "must be an array of numbers");
      return {};
    }
    out.push_back(x.get<double>());
  }
  return out;
}

// Complex entries as numbers or [re, im] pairs.
std::vector<cplx> complexes(const json& v, const std::string& path, Errors& e) {
  std::vector<cplx> out;
  if (!v.is_array()) {
    e.add(path, "must be an array of numbers or [re, im] pairs");
    return out;
  }
  for (const auto& x : v) {
    if (x.is_number()) {
      out.emplace_back(x.get<double>(), 0.0);
    } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
      out.emplace_back(x[0].get<double>(), x[1].get<double>());
    } else {
      e.add(path, "must be an array of numbers or [re, im] pairs");
      return {};
    }
  }
  return out;
}

TimeSignal signal(const json& o, const char* key, const std::string& path, Errors& e, double def,
                  double default_period) {
  if (!has(o, key)) return TimeSignal::fixed(def);
  const auto& v = o.at(key);
  if (v.is_number()) return TimeSignal::fixed(v.get<double>());
  const std::string p = join(path, key);
  if (!v.is_object()) {
    e.add(p, "must be a number or {constant, period, coeffs}");
    return TimeSignal::fixed(def);
  }
  TimeSignal s;
  s.constant = num(v, "constant", p, e, 0.0);
  const double period = num(v, "period", p, e, default_period, [](double x) { return x > 0; }, "> 0");
  if (has(v, "coeffs")) {
    auto c = complexes(v.at("coeffs"), join(p, "coeffs"), e);
    if (c.size() % 2 == 1) {
      s.series = FourierSeries(period, std::move(c));
    } else if (!c.empty()) {
      e.add(join(p, "coeffs"), "needs an odd number of entries (k = -K..K)");
    }
  }
  return s;
}

void parse_state(const json& o, const std::string& path, StateSpec& s, Errors& e,
                 const std::filesystem::path& base_dir, bool two_level, const std::string& def_kind,
                 int def_n) {
  s.kind = str(o, "kind", path, e, def_kind);
  static const std::vector<std::string> kinds{"eigenstate", "gaussian", "superposition", "qubit",
                                              "even_superposition", "qft_even", "frqi"};
  if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end()) {
    std::string msg = "unknown state kind \"" + s.kind + "\"; expected one of:";
    for (const auto& k : kinds) msg += " " + k;
    e.add(join(path, "kind"), msg);
    return;
  }
  if (two_level && s.kind != "eigenstate" && s.kind != "qubit" && s.kind != "even_superposition") {
    e.add(join(path, "kind"), "two_level model accepts eigenstate, qubit or even_superposition");
    return;
  }
  if (s.kind == "eigenstate") {
    s.n = integer(o, "n", path, e, def_n, 0, two_level ? 1 : 4096);
  } else if (s.kind == "gaussian") {
    s.x0 = num(o, "x0", path, e, 0.0);
    s.sigma = num(o, "sigma", path, e, 1.0, [](double x) { return x > 0; }, "> 0");
    s.k0 = num(o, "k0", path, e, 0.0);
  } else if (s.kind == "superposition" || s.kind == "qubit") {
    const char* key = s.kind == "qubit" ? "amplitudes" : "coeffs";
    if (!has(o, key)) {
      e.add(join(path, key), "required field is missing");
      return;
    }
    s.coeffs = complexes(o.at(key), join(path, key), e);
    if (s.kind == "qubit" && s.coeffs.size() != 2) e.add(join(path, key), "needs exactly 2 amplitudes");
    double n2 = 0.0;
    for (cplx c : s.coeffs) n2 += std::norm(c);
    if (!s.coeffs.empty() && std::abs(n2 - 1.0) > 1e-9)
      e.add(join(path, key), "must be normalized (sum |a|^2 = " + fmt(n2) + ")");
  } else if (s.kind == "even_superposition" || s.kind == "qft_even") {
    s.n_qubits = integer(o, "n_qubits", path, e, 1, 1, two_level ? 1 : 10);
  } else if (s.kind == "frqi") {
    try {
      FRQIImage img;
      if (has(o, "image")) {
        std::ostringstream text;
        for (const auto& row : o.at("image")) {
          for (const auto& v : row) text << v.get<double>() << ' ';
          text << '\n';
        }
        std::istringstream in(text.str());
        img = read_image_text(in);
      } else if (has(o, "image_file")) {
        auto p = std::filesystem::path(o.at("image_file").get<std::string>());
        if (p.is_relative()) p = base_dir / p;
        std::ifstream in(p);
        if (!in) throw ValidationError("cannot read image file " + p.string());
        img = read_image_text(in);
      } else {
        throw ValidationError("needs image or image_file");
      }
      s.image_n = img.n;
      s.image_theta = img.theta;
    } catch (const ValidationError& ex) {
      e.add(path, ex.what());
    } catch (const json::exception&) {
      e.add(join(path, "image"), "must be a matrix of numbers in [0,1]");
    }
  }
}

}  // namespace

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  Errors e;
  RunConfig c;
  c.echo = j;
  if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");

  c.model = str(j, "model", "", e, "schrodinger1d");
  if (c.model != "schrodinger1d" && c.model != "two_level")
    e.add("model", "must be schrodinger1d or two_level (got \"" + c.model + "\")");
  const bool two_level = c.model == "two_level";

  c.T = num(j, "T", "", e, std::nullopt, [](double x) { return x > 0; }, "> 0");
  c.steps = integer(j, "steps", "", e, 200, 1, 10000000);
  c.seed = static_cast<std::uint64_t>(integer(j, "seed", "", e, 0, 0));

  // Control parametrization.
  const auto& ctl = child(j, "control");
  const std::string kind = str(ctl, "kind", "control", e, "piecewise_constant");
  ControlKind ck = ControlKind::piecewise_constant;
  int dims = 1;
  if (kind == "piecewise_constant") {
    dims = integer(ctl, "n_intervals", "control", e, 16, 1, 100000);
  } else if (kind == "truncated_fourier") {
    ck = ControlKind::truncated_fourier;
    dims = integer(ctl, "K", "control", e, 2, 0, 10000);
  } else {
    e.add("control.kind", "must be piecewise_constant or truncated_fourier (got \"" + kind + "\")");
  }
  double lo = -10.0, hi = 10.0;
  if (has(ctl, "bounds")) {
    auto b = numbers(ctl, "bounds", "control", e);
    if (b.size() != 2) {
      e.add("control.bounds", "must be [lo, hi]");
    } else if (!(b[0] <= b[1])) {
      e.add("control.bounds", "is empty (lo > hi)");
    } else {
      lo = b[0];
      hi = b[1];
    }
  }
  try {
    c.par = parametrize(ck, dims, c.T > 0 ? c.T : 1.0, lo, hi);
  } catch (const ValidationError& ex) {
    e.add("control", ex.what());
  }
  c.control_params = numbers(ctl, "params", "control", e);
  if (!c.control_params.empty() && static_cast<int>(c.control_params.size()) != c.par.size())
    e.add("control.params", "needs " + std::to_string(c.par.size()) + " entries");

  // Cost.
  const auto& cost = child(j, "cost");
  c.cost.alpha = num(cost, "alpha", "cost", e, 1.0, [](double x) { return x >= 0; }, ">= 0");
  c.cost.beta = num(cost, "beta", "cost", e, 0.0, [](double x) { return x >= 0; }, ">= 0");
  c.cost.p = integer(cost, "p", "cost", e, 2, 1, 64);
  c.cost.q = integer(cost, "q", "cost", e, 2, 1, 64);
  c.cost.phase_invariant = boolean(cost, "phase_invariant", "cost", e, false);
  c.cost.space_extended = boolean(cost, "space_extended", "cost", e, false);
  if (!(c.cost.alpha + c.cost.beta > 0)) e.add("cost", "alpha + beta must be > 0");
  if (c.cost.phase_invariant && c.cost.p != 2) e.add("cost.phase_invariant", "requires p = 2");

  // Optimizer.
  const auto& op = child(j, "optimizer");
  const std::string method = str(op, "method", "optimizer", e, "lbfgs");
  try {
    c.opt.method = parse_opt_method(method);
  } catch (const ValidationError& ex) {
    e.add("optimizer.method", ex.what());
  }
  c.opt.max_iter = integer(op, "max_iter", "optimizer", e, 100, 0, 1000000);
  c.opt.tol = num(op, "tol", "optimizer", e, 1e-6, [](double x) { return x >= 0; }, ">= 0");
  c.opt.memory = integer(op, "memory", "optimizer", e, 10, 1, 1000);
  const std::string init = str(op, "init", "optimizer", e, "zero");
  if (init == "random") {
    c.opt.init = InitKind::random;
  } else if (init != "zero") {
    e.add("optimizer.init", "must be zero or random (got \"" + init + "\")");
  }
  c.starts = integer(op, "starts", "optimizer", e, 1, 1, 256);

  // Output and mode-specific options.
  const auto& out = child(j, "output");
  c.snapshot_stride = integer(out, "snapshot_stride", "output", e, 0, 0);
  c.dump_kernel = boolean(out, "dump_kernel", "output", e, false);
  c.exterior_points = numbers(out, "exterior_points", "output", e);
  if (has(out, "exterior_s")) c.exterior_s = complexes(out.at("exterior_s"), "output.exterior_s", e);
  for (cplx s : c.exterior_s)
    if (!(s.real() > 0)) e.add("output.exterior_s", "entries need Re(s) > 0");

  const auto& sim = child(j, "simulate");
  if (has(sim, "t_exit"))
    c.t_exit = num(sim, "t_exit", "simulate", e, std::nullopt, [](double x) { return x >= 0; }, ">= 0");

  const auto& gc = child(j, "gradcheck");
  if (has(gc, "eps")) {
    c.gradcheck_eps = numbers(gc, "eps", "gradcheck", e);
    for (double x : c.gradcheck_eps)
      if (!(x > 0)) e.add("gradcheck.eps", "entries must be > 0");
    if (c.gradcheck_eps.empty()) e.add("gradcheck.eps", "must not be empty");
  }
  c.debug_flip_gradient_sign = boolean(gc, "debug_flip_gradient_sign", "gradcheck", e, false);
  c.gradcheck_threshold =
      num(gc, "threshold", "gradcheck", e, 1e-4, [](double x) { return x > 0; }, "> 0");

  c.levels = integer(child(j, "spectrum"), "levels", "spectrum", e, 10, 1, 100000);

  if (two_level) {
    const auto& tl = child(j, "two_level");
    c.detuning = num(tl, "detuning", "two_level", e, 0.0);
    c.magnus_order = integer(tl, "order", "two_level", e, 2, 1, 2);
    parse_state(child(j, "initial"), "initial", c.initial, e, base_dir, true, "eigenstate", 0);
    parse_state(child(j, "target"), "target", c.target, e, base_dir, true, "eigenstate", 1);
  } else {
    // Potential and grid.
    const auto& pj = child(j, "potential");
    const auto& gj = child(j, "grid");
    const std::string name = str(pj, "name", "potential", e, std::nullopt);
    std::optional<PotentialFamily> fam;
    if (!name.empty()) {
      try {
        fam = parse_potential_family(name);
      } catch (const ValidationError& ex) {
        e.add("potential.name", ex.what());
      }
    }
    const bool transmon = fam == PotentialFamily::transmon;
    const int J = integer(gj, "J", "grid", e, transmon ? 256 : std::optional<int>{}, 3, 1 << 22);
    double gxl = -std::numbers::pi, gxr = std::numbers::pi;
    if (!transmon) {
      gxl = num(gj, "x_l", "grid", e, std::nullopt);
      gxr = num(gj, "x_r", "grid", e, std::nullopt);
      if (has(gj, "x_l") && has(gj, "x_r") && !(gxl < gxr)) e.add("grid", "needs x_l < x_r");
    }
    const std::string bname = str(j, "boundary", "", e, transmon ? "periodic" : "dirichlet");
    try {
      c.bc = parse_boundary(bname);
    } catch (const ValidationError& ex) {
      e.add("boundary", ex.what());
    }
    if (transmon && c.bc != BoundaryKind::periodic)
      e.add("boundary", "transmon requires the periodic boundary");
    if (!transmon && c.bc == BoundaryKind::periodic)
      e.add("boundary", "periodic boundary is only available for the transmon");
    if (J >= 3 && gxl < gxr) {
      c.grid = transmon ? make_periodic_grid(-std::numbers::pi, 2.0 * std::numbers::pi, J)
                        : make_grid(gxl, gxr, J);
    }

    const auto& cj = child(pj, "coupling");
    ControlCoupling cc;
    const std::string ckind = str(cj, "kind", "potential.coupling", e,
                                  transmon || fam == PotentialFamily::fluxonium ? "josephson"
                                                                                : "window_uniform");
    try {
      cc.kind = parse_coupling_kind(ckind);
    } catch (const ValidationError& ex) {
      e.add("potential.coupling.kind", ex.what());
    }
    cc.xh_l = num(cj, "xh_l", "potential.coupling", e, gxl);
    cc.xh_r = num(cj, "xh_r", "potential.coupling", e, gxr);
    cc.center = num(cj, "center", "potential.coupling", e, 0.0);
    cc.width = num(cj, "width", "potential.coupling", e, 1.0, [](double x) { return x > 0; }, "> 0");
    const bool windowed = cc.kind == CouplingKind::window_uniform ||
                          cc.kind == CouplingKind::window_linear ||
                          cc.kind == CouplingKind::window_odd_gaussian;
    if (windowed && !(gxl <= cc.xh_l && cc.xh_l < cc.xh_r && cc.xh_r <= gxr))
      e.add("potential.coupling", "window must satisfy x_l <= xh_l < xh_r <= x_r");

    auto positive = [](double x) { return x > 0; };
    try {
      if (fam == PotentialFamily::harmonic_driven) {
        DrivenOscillatorParams p;
        p.mass = num(pj, "mass", "potential", e, 0.5, positive, "> 0");
        p.omega = signal(pj, "omega", "potential", e, 1.0, c.T > 0 ? c.T : 1.0);
        p.drive = signal(pj, "drive", "potential", e, 0.0, c.T > 0 ? c.T : 1.0);
        p.x_l = num(pj, "x_l", "potential", e, gxl);
        p.x_r = num(pj, "x_r", "potential", e, gxr);
        p.corrected = boolean(pj, "corrected", "potential", e, true);
        c.pot = Potential::harmonic_driven(p, cc);
      } else if (fam == PotentialFamily::transmon) {
        TransmonParams p;
        const double unit = num(pj, "energy_unit_factor", "potential", e, 1.0, positive, "> 0");
        if (has(pj, "C_sigma")) {
          const double cs = num(pj, "C_sigma", "potential", e, 1.0, positive, "> 0");
          const double q = num(pj, "charge", "potential", e, 1.0, positive, "> 0");
          p.e_c = TransmonParams::charging_energy(q, cs);
        } else {
          p.e_c = num(pj, "E_C", "potential", e, std::nullopt, positive, "> 0");
        }
        p.e_c *= unit;
        p.e_j = unit * num(pj, "E_J", "potential", e, std::nullopt, positive, "> 0");
        p.n_g = num(pj, "n_g", "potential", e, 0.0);
        if (p.e_c > 0 && p.e_j > 0) c.pot = Potential::transmon(p, cc);
      } else if (fam == PotentialFamily::fluxonium) {
        FluxoniumParams p;
        p.e_c = num(pj, "E_C", "potential", e, std::nullopt, positive, "> 0");
        p.e_j = num(pj, "E_J", "potential", e, std::nullopt, positive, "> 0");
        p.e_l = num(pj, "E_L", "potential", e, std::nullopt, positive, "> 0");
        p.n_g = num(pj, "n_g", "potential", e, 0.0);
        p.phi_ext = num(pj, "phi_ext", "potential", e, 0.0);
        p.x_l = num(pj, "x_l", "potential", e, gxl);
        p.x_r = num(pj, "x_r", "potential", e, gxr);
        if (p.e_c > 0 && p.e_j > 0 && p.e_l > 0 && p.x_l < p.x_r) c.pot = Potential::fluxonium(p, cc);
      } else if (fam == PotentialFamily::piecewise_custom) {
        PiecewiseParams p;
        p.x = numbers(pj, "x", "potential", e);
        p.v = numbers(pj, "v", "potential", e);
        c.pot = Potential::piecewise(p, cc);
      }
    } catch (const ValidationError& ex) {
      e.add("potential", ex.what());
    }
    if (c.pot) {
      const auto [elo, ehi] = c.par.eta_range();
      c.pot->set_control_bounds(elo, ehi);
      if (c.bc == BoundaryKind::tbc && !c.pot->tails_control_free())
        e.add("potential.coupling", "transparent boundary needs a coupling that vanishes on the tails");
    }

    parse_state(child(j, "initial"), "initial", c.initial, e, base_dir, false, "eigenstate", 0);
    parse_state(child(j, "target"), "target", c.target, e, base_dir, false, "eigenstate", 1);
  }

  if (!e.list.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : e.list) msg += "\n  " + s;
    throw ValidationError(msg);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + ex.what());
  }
  return parse_config(j, path.parent_path());
}

namespace {

int levels_needed(const StateSpec& s) {
  if (s.kind == "eigenstate") return s.n + 1;
  if (s.kind == "superposition" || s.kind == "qubit") return static_cast<int>(s.coeffs.size());
  if (s.kind == "even_superposition" || s.kind == "qft_even") return 1 << s.n_qubits;
  if (s.kind == "frqi") return 1 << (2 * s.image_n + 1);
  return 0;
}

std::vector<cplx> state_amplitudes(const StateSpec& s) {
  if (s.kind == "eigenstate") {
    std::vector<cplx> a(s.n + 1, cplx{0.0});
    a[s.n] = 1.0;
    return a;
  }
  if (s.kind == "superposition" || s.kind == "qubit") return s.coeffs;
  if (s.kind == "even_superposition") return even_superposition(s.n_qubits).amplitudes;
  if (s.kind == "qft_even") return apply_qft(even_superposition(s.n_qubits)).amplitudes;
  if (s.kind == "frqi") return frqi_encode(FRQIImage{s.image_n, s.image_theta}).amplitudes;
  throw ValidationError("state kind " + s.kind + " has no amplitude form");
}

Wavefunction build_state(const StateSpec& s, const Grid& g, const EigenBasis* basis) {
  if (s.kind == "gaussian") {
    return normalized(sample(g, [&](double x) {
      const double d = x - s.x0;
      return std::exp(-d * d / (4.0 * s.sigma * s.sigma)) * std::polar(1.0, s.k0 * x);
    }));
  }
  return superposition_target(state_amplitudes(s), *basis);
}

}  // namespace

ProblemSpec build_problem(const RunConfig& cfg) {
  if (cfg.model != "schrodinger1d") throw ValidationError("configuration is not a schrodinger1d model");
  const Grid& g = *cfg.grid;
  const Potential& pot = *cfg.pot;
  const int need = std::max(levels_needed(cfg.initial), levels_needed(cfg.target));
  std::optional<EigenBasis> basis;
  if (need > 0) {
    const BoundaryKind ebc = cfg.bc == BoundaryKind::tbc ? BoundaryKind::dirichlet : cfg.bc;
    const auto h = hamiltonian_matrix(pot, g, ebc, std::nullopt, 0.0,
                                      std::clamp(0.0, pot.control_lo(), pot.control_hi()));
    if (need > h.dim())
      throw ValidationError("states need " + std::to_string(need) + " eigenstates but the grid has " +
                            std::to_string(h.dim()) + " unknowns");
    basis = eigenstates(h, need);
  }
  ProblemSpec spec{pot,
                   build_state(cfg.initial, g, basis ? &*basis : nullptr),
                   build_state(cfg.target, g, basis ? &*basis : nullptr),
                   cfg.T,
                   cfg.steps,
                   cfg.cost,
                   cfg.bc,
                   cfg.par};
  spec.par.horizon = cfg.T;
  return spec;
}

TwoLevelProblem build_two_level(const RunConfig& cfg) {
  if (cfg.model != "two_level") throw ValidationError("configuration is not a two_level model");
  TwoLevelProblem pb;
  pb.sys.drift = 0.5 * cfg.detuning * pauli_z();
  pb.sys.controls = {0.5 * pauli_x()};
  auto vec = [](const StateSpec& s) {
    const auto a = state_amplitudes(s);
    CVector v = CVector::Zero(2);
    for (std::size_t i = 0; i < a.size() && i < 2; ++i) v[static_cast<Eigen::Index>(i)] = a[i];
    return v;
  };
  pb.psi0 = vec(cfg.initial);
  pb.target = vec(cfg.target);
  pb.T = cfg.T;
  pb.steps = cfg.steps;
  pb.order = cfg.magnus_order;
  pb.beta = cfg.cost.beta;
  pb.par = cfg.par;
  pb.par.horizon = cfg.T;
  return pb;
}

}  // namespace qsp::cli
