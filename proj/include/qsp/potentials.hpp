#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qsp/spectral.hpp"

namespace qsp {

/// Scalar time signal: a constant plus an optional real-part Fourier series.
struct TimeSignal {
  double constant = 0.0;
  FourierSeries series{1.0, 0};

  static TimeSignal fixed(double c) { return TimeSignal{c, FourierSeries(1.0, 0)}; }
  double operator()(double t) const;
  bool is_static() const;
};

enum class PotentialFamily { harmonic_driven, transmon, fluxonium, piecewise_custom };

std::string to_string(PotentialFamily f);
PotentialFamily parse_potential_family(const std::string& name);  // lists valid names on error
const std::vector<std::string>& registered_potentials();

/// Spatial profile multiplying the scalar control eta(t).
enum class CouplingKind {
  none,
  window_uniform,       // 1 on [xh_l, xh_r]
  window_linear,        // (x - center) on [xh_l, xh_r]
  window_odd_gaussian,  // (x - center) exp(-(x-center)^2 / (2 w^2)) on [xh_l, xh_r]
  drive,                // -q(x) with q the (tail-corrected) position: eta adds to the drive J(t)
  josephson             // -cos(x + phi_ext): eta adds to E_J
};

std::string to_string(CouplingKind k);
CouplingKind parse_coupling_kind(const std::string& name);

struct ControlCoupling {
  CouplingKind kind = CouplingKind::none;
  double xh_l = -std::numeric_limits<double>::infinity();
  double xh_r = std::numeric_limits<double>::infinity();
  double center = 0.0;
  double width = 1.0;
};

struct DrivenOscillatorParams {
  double mass = 0.5;
  TimeSignal omega = TimeSignal::fixed(1.0);
  TimeSignal drive = TimeSignal::fixed(0.0);  // physical drive J(t)
  double x_l = -1.0;
  double x_r = 1.0;
  bool corrected = true;
};

struct TransmonParams {
  double e_c = 1.0;
  double e_j = 50.0;
  double n_g = 0.0;

  // E_C = e^2 / (2 C_sigma).
  static double charging_energy(double e, double c_sigma) { return e * e / (2.0 * c_sigma); }
};

struct FluxoniumParams {
  double e_c = 1.0;
  double e_j = 4.0;
  double e_l = 1.0;
  double n_g = 0.0;
  double phi_ext = 0.0;
  double x_l = -10.0;  // truncation window; the potential is flattened outside
  double x_r = 10.0;
};

struct PiecewiseParams {
  std::vector<double> x;  // strictly increasing breakpoints
  std::vector<double> v;  // values; linear in between, constant outside
};

enum class Side { left, right };

/// Potential V(x, t; eta) = base(x, t) + eta(t) * coupling(x).
class Potential {
 public:
  static Potential harmonic_driven(const DrivenOscillatorParams& p, ControlCoupling c = {});
  static Potential transmon(const TransmonParams& p, ControlCoupling c = {});
  static Potential fluxonium(const FluxoniumParams& p, ControlCoupling c = {});
  static Potential piecewise(const PiecewiseParams& p, ControlCoupling c = {});
  static Potential free(double x_l, double x_r, double v_const = 0.0);

  PotentialFamily family() const { return family_; }
  const ControlCoupling& coupling_spec() const { return coupling_; }
  bool periodic() const { return family_ == PotentialFamily::transmon; }

  double x_l() const { return x_l_; }
  double x_r() const { return x_r_; }

  // Coefficient of the kinetic term: 1 for -d^2/dx^2, 4 E_C for qubits.
  double kinetic() const;
  double n_g() const;

  void set_control_bounds(double lo, double hi);
  double control_lo() const { return eta_lo_; }
  double control_hi() const { return eta_hi_; }

  double base(double x, double t) const;
  double coupling(double x) const;
  // Throws ValidationError when eta is outside the control bounds.
  double value(double x, double t, double eta) const;
  double tail(Side side, double t, double eta) const;

  // True when both tails ignore eta (coupling vanishes on the tails).
  bool tails_control_free() const;
  // True when the tails do not change in time.
  bool tails_static() const;

  const DrivenOscillatorParams* oscillator() const;
  const TransmonParams* transmon_params() const;
  const FluxoniumParams* fluxonium_params() const;
  const PiecewiseParams* piecewise_params() const;

 private:
  PotentialFamily family_ = PotentialFamily::piecewise_custom;
  ControlCoupling coupling_;
  double x_l_ = 0.0;
  double x_r_ = 1.0;
  double eta_lo_ = -std::numeric_limits<double>::infinity();
  double eta_hi_ = std::numeric_limits<double>::infinity();
  DrivenOscillatorParams osc_;
  TransmonParams tr_;
  FluxoniumParams fl_;
  PiecewiseParams pw_;
};

double eval_potential(const Potential& pot, double x, double t, double eta);

// Uncorrected driven-oscillator value w^2 x^2 / (2m) - J x.
double oscillator_uncorrected(const DrivenOscillatorParams& p, double x, double t);

// R(x, t) that flattens each tail to its boundary value; zero on (x_l, x_r).
double oscillator_correction(const DrivenOscillatorParams& p, double x, double t);

struct TailReport {
  bool ok = false;
  bool periodic = false;
  double max_dev_left = 0.0;
  double max_dev_right = 0.0;
};

TailReport validate_tail_condition(const Potential& pot, std::span<const double> eta_samples,
                                   std::span<const double> t_samples = {});

}  // namespace qsp
