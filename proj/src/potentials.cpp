#include "qsp/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsp/error.hpp"

namespace qsp {

double TimeSignal::operator()(double t) const {
  if (series.order() == 0 && series[0] == cplx{0.0}) return constant;
  return constant + synthesize(series, t).real();
}

bool TimeSignal::is_static() const {
  for (int k = -series.order(); k <= series.order(); ++k)
    if (k != 0 && series[k] != cplx{0.0}) return false;
  return true;
}

std::string to_string(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::harmonic_driven: return "harmonic_driven";
    case PotentialFamily::transmon: return "transmon";
    case PotentialFamily::fluxonium: return "fluxonium";
    case PotentialFamily::piecewise_custom: return "piecewise_custom";
  }
  return "?";
}

const std::vector<std::string>& registered_potentials() {
  static const std::vector<std::string> names{"harmonic_driven", "transmon", "fluxonium",
                                              "piecewise_custom"};
  return names;
}

PotentialFamily parse_potential_family(const std::string& name) {
  if (name == "harmonic_driven") return PotentialFamily::harmonic_driven;
  if (name == "transmon") return PotentialFamily::transmon;
  if (name == "fluxonium") return PotentialFamily::fluxonium;
  if (name == "piecewise_custom") return PotentialFamily::piecewise_custom;
  std::ostringstream msg;
  msg << "unknown potential \"" << name << "\"; registered:";
  for (const auto& n : registered_potentials()) msg << ' ' << n;
  throw ValidationError(msg.str());
}

std::string to_string(CouplingKind k) {
  switch (k) {
    case CouplingKind::none: return "none";
    case CouplingKind::window_uniform: return "window_uniform";
    case CouplingKind::window_linear: return "window_linear";
    case CouplingKind::window_odd_gaussian: return "window_odd_gaussian";
    case CouplingKind::drive: return "drive";
    case CouplingKind::josephson: return "josephson";
  }
  return "?";
}

CouplingKind parse_coupling_kind(const std::string& name) {
  for (auto k : {CouplingKind::none, CouplingKind::window_uniform, CouplingKind::window_linear,
                 CouplingKind::window_odd_gaussian, CouplingKind::drive, CouplingKind::josephson})
    if (to_string(k) == name) return k;
  throw ValidationError("unknown control coupling \"" + name +
                        "\"; expected none, window_uniform, window_linear, "
                        "window_odd_gaussian, drive or josephson");
}

double oscillator_uncorrected(const DrivenOscillatorParams& p, double x, double t) {
  const double w = p.omega(t);
  return w * w * x * x / (2.0 * p.mass) - p.drive(t) * x;
}

double oscillator_correction(const DrivenOscillatorParams& p, double x, double t) {
  if (x > p.x_l && x < p.x_r) return 0.0;
  const double edge = x >= p.x_r ? p.x_r : p.x_l;
  return oscillator_uncorrected(p, edge, t) - oscillator_uncorrected(p, x, t);
}

namespace {

void check_window(const ControlCoupling& c) {
  if (c.kind == CouplingKind::none || c.kind == CouplingKind::drive ||
      c.kind == CouplingKind::josephson)
    return;
  if (!(c.xh_l < c.xh_r)) throw ValidationError("control window needs xh_l < xh_r");
  if (!(c.width > 0.0)) throw ValidationError("control window width must be positive");
}

}  // namespace

Potential Potential::harmonic_driven(const DrivenOscillatorParams& p, ControlCoupling c) {
  if (!(p.mass > 0.0)) throw ValidationError("oscillator mass must be positive");
  if (!(p.x_l < p.x_r)) throw ValidationError("oscillator needs x_l < x_r");
  if (c.kind == CouplingKind::josephson)
    throw ValidationError("josephson coupling is only defined for qubit potentials");
  check_window(c);
  Potential pot;
  pot.family_ = PotentialFamily::harmonic_driven;
  pot.osc_ = p;
  pot.coupling_ = c;
  pot.x_l_ = p.x_l;
  pot.x_r_ = p.x_r;
  return pot;
}

Potential Potential::transmon(const TransmonParams& p, ControlCoupling c) {
  if (!(p.e_c > 0.0) || !(p.e_j > 0.0)) throw ValidationError("transmon needs E_C > 0 and E_J > 0");
  if (c.kind != CouplingKind::none && c.kind != CouplingKind::josephson)
    throw ValidationError("transmon supports only the josephson control coupling");
  Potential pot;
  pot.family_ = PotentialFamily::transmon;
  pot.tr_ = p;
  pot.coupling_ = c;
  pot.x_l_ = -std::numbers::pi;
  pot.x_r_ = std::numbers::pi;
  return pot;
}

Potential Potential::fluxonium(const FluxoniumParams& p, ControlCoupling c) {
  if (!(p.e_c > 0.0) || !(p.e_j > 0.0) || !(p.e_l > 0.0))
    throw ValidationError("fluxonium needs E_C, E_J, E_L > 0");
  if (!(p.x_l < p.x_r)) throw ValidationError("fluxonium needs x_l < x_r");
  if (c.kind != CouplingKind::none && c.kind != CouplingKind::josephson)
    throw ValidationError("fluxonium supports only the josephson control coupling");
  Potential pot;
  pot.family_ = PotentialFamily::fluxonium;
  pot.fl_ = p;
  pot.coupling_ = c;
  pot.x_l_ = p.x_l;
  pot.x_r_ = p.x_r;
  return pot;
}

Potential Potential::piecewise(const PiecewiseParams& p, ControlCoupling c) {
  if (p.x.size() < 2 || p.x.size() != p.v.size())
    throw ValidationError("piecewise potential needs >= 2 breakpoints with matching values");
  for (std::size_t i = 1; i < p.x.size(); ++i)
    if (!(p.x[i] > p.x[i - 1])) throw ValidationError("piecewise breakpoints must increase");
  if (c.kind == CouplingKind::drive || c.kind == CouplingKind::josephson)
    throw ValidationError("piecewise potential supports only windowed couplings");
  check_window(c);
  Potential pot;
  pot.family_ = PotentialFamily::piecewise_custom;
  pot.pw_ = p;
  pot.coupling_ = c;
  pot.x_l_ = p.x.front();
  pot.x_r_ = p.x.back();
  return pot;
}

Potential Potential::free(double x_l, double x_r, double v_const) {
  return piecewise(PiecewiseParams{{x_l, x_r}, {v_const, v_const}});
}

double Potential::kinetic() const {
  switch (family_) {
    case PotentialFamily::transmon: return 4.0 * tr_.e_c;
    case PotentialFamily::fluxonium: return 4.0 * fl_.e_c;
    default: return 1.0;
  }
}

double Potential::n_g() const {
  switch (family_) {
    case PotentialFamily::transmon: return tr_.n_g;
    case PotentialFamily::fluxonium: return fl_.n_g;
    default: return 0.0;
  }
}

void Potential::set_control_bounds(double lo, double hi) {
  if (!(lo <= hi)) throw ValidationError("control bounds must satisfy lo <= hi");
  eta_lo_ = lo;
  eta_hi_ = hi;
}

double Potential::base(double x, double t) const {
  switch (family_) {
    case PotentialFamily::harmonic_driven: {
      const double q = osc_.corrected ? std::clamp(x, x_l_, x_r_) : x;
      return oscillator_uncorrected(osc_, q, t);
    }
    case PotentialFamily::transmon: return -tr_.e_j * std::cos(x);
    case PotentialFamily::fluxonium: {
      const double q = std::clamp(x, x_l_, x_r_);
      return -fl_.e_j * std::cos(q + fl_.phi_ext) + 0.5 * fl_.e_l * q * q;
    }
    case PotentialFamily::piecewise_custom: {
      const auto& xs = pw_.x;
      if (x <= xs.front()) return pw_.v.front();
      if (x >= xs.back()) return pw_.v.back();
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs.begin());
      const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
      return (1.0 - w) * pw_.v[i - 1] + w * pw_.v[i];
    }
  }
  return 0.0;
}

double Potential::coupling(double x) const {
  const auto& c = coupling_;
  switch (c.kind) {
    case CouplingKind::none: return 0.0;
    case CouplingKind::drive: {
      const bool corrected = family_ == PotentialFamily::harmonic_driven ? osc_.corrected : true;
      return -(corrected ? std::clamp(x, x_l_, x_r_) : x);
    }
    case CouplingKind::josephson: {
      const double ext = family_ == PotentialFamily::fluxonium ? fl_.phi_ext : 0.0;
      const double q = family_ == PotentialFamily::fluxonium ? std::clamp(x, x_l_, x_r_) : x;
      return -std::cos(q + ext);
    }
    default: break;
  }
  if (x < c.xh_l || x > c.xh_r) return 0.0;
  const double y = x - c.center;
  switch (c.kind) {
    case CouplingKind::window_uniform: return 1.0;
    case CouplingKind::window_linear: return y;
    case CouplingKind::window_odd_gaussian: return y * std::exp(-y * y / (2.0 * c.width * c.width));
    default: return 0.0;
  }
}

double Potential::value(double x, double t, double eta) const {
  if (eta < eta_lo_ || eta > eta_hi_) {
    std::ostringstream msg;
    msg << "control value " << eta << " outside bounds [" << eta_lo_ << ", " << eta_hi_ << "]";
    throw ValidationError(msg.str());
  }
  const double c = coupling(x);
  return c == 0.0 ? base(x, t) : base(x, t) + eta * c;
}

double Potential::tail(Side side, double t, double eta) const {
  return value(side == Side::left ? x_l_ : x_r_, t, eta);
}

bool Potential::tails_control_free() const {
  if (periodic()) return true;
  return coupling(x_l_) == 0.0 && coupling(x_r_) == 0.0 &&
         coupling(x_l_ - 1.0) == 0.0 && coupling(x_r_ + 1.0) == 0.0;
}

bool Potential::tails_static() const {
  if (family_ == PotentialFamily::harmonic_driven)
    return osc_.omega.is_static() && osc_.drive.is_static();
  return true;
}

const DrivenOscillatorParams* Potential::oscillator() const {
  return family_ == PotentialFamily::harmonic_driven ? &osc_ : nullptr;
}
const TransmonParams* Potential::transmon_params() const {
  return family_ == PotentialFamily::transmon ? &tr_ : nullptr;
}
const FluxoniumParams* Potential::fluxonium_params() const {
  return family_ == PotentialFamily::fluxonium ? &fl_ : nullptr;
}
const PiecewiseParams* Potential::piecewise_params() const {
  return family_ == PotentialFamily::piecewise_custom ? &pw_ : nullptr;
}

double eval_potential(const Potential& pot, double x, double t, double eta) {
  return pot.value(x, t, eta);
}

TailReport validate_tail_condition(const Potential& pot, std::span<const double> eta_samples,
                                   std::span<const double> t_samples) {
  TailReport rep;
  if (pot.periodic()) {
    rep.ok = true;
    rep.periodic = true;
    return rep;
  }
  static const double default_t[] = {0.0, 0.37, 1.0, 2.9};
  static const double default_eta[] = {0.0};
  if (t_samples.empty()) t_samples = default_t;
  if (eta_samples.empty()) eta_samples = default_eta;
  const double width = pot.x_r() - pot.x_l();
  static const double offsets[] = {0.0, 1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0};
  for (double t : t_samples) {
    for (double eta : eta_samples) {
      const double vl = pot.tail(Side::left, t, eta);
      const double vr = pot.tail(Side::right, t, eta);
      for (double o : offsets) {
        const double d = o * std::max(width, 1.0);
        rep.max_dev_left = std::max(rep.max_dev_left, std::abs(pot.value(pot.x_l() - d, t, eta) - vl));
        rep.max_dev_right = std::max(rep.max_dev_right, std::abs(pot.value(pot.x_r() + d, t, eta) - vr));
      }
    }
  }
  rep.ok = rep.max_dev_left < 1e-12 && rep.max_dev_right < 1e-12;
  return rep;
}

}  // namespace qsp
