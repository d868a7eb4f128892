#include "qsp/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsp/error.hpp"

namespace qsp {

std::string to_string(ControlKind k) {
  return k == ControlKind::piecewise_constant ? "piecewise_constant" : "truncated_fourier";
}

ControlParametrization parametrize(ControlKind kind, int dims, double horizon, double lo,
                                   double hi) {
  if (!(horizon > 0.0)) throw ValidationError("control horizon must be positive");
  if (!(lo <= hi)) throw ValidationError("control bounds are empty (lo > hi)");
  ControlParametrization p;
  p.kind = kind;
  p.horizon = horizon;
  p.lo = lo;
  p.hi = hi;
  if (kind == ControlKind::piecewise_constant) {
    if (dims < 1) throw ValidationError("piecewise_constant needs n_intervals >= 1");
    p.n_intervals = dims;
  } else {
    if (dims < 0) throw ValidationError("truncated_fourier needs K >= 0");
    p.order = dims;
  }
  return p;
}

int ControlParametrization::size() const {
  return kind == ControlKind::piecewise_constant ? n_intervals : 2 * order + 1;
}

double ControlParametrization::eval(std::span<const double> params, double t) const {
  if (static_cast<int>(params.size()) != size())
    throw ValidationError("control parameter count mismatch");
  if (kind == ControlKind::piecewise_constant) {
    int i = static_cast<int>(std::floor(t / horizon * n_intervals));
    return params[std::clamp(i, 0, n_intervals - 1)];
  }
  const double w = 2.0 * std::numbers::pi / horizon;
  double v = params[0];
  for (int k = 1; k <= order; ++k)
    v += 2.0 * (params[2 * k - 1] * std::cos(w * k * t) - params[2 * k] * std::sin(w * k * t));
  return v;
}

std::vector<double> ControlParametrization::step_values(std::span<const double> params,
                                                        int n) const {
  std::vector<double> eta(n);
  const double dt = horizon / n;
  for (int i = 0; i < n; ++i) eta[i] = eval(params, (i + 0.5) * dt);
  return eta;
}

std::vector<double> ControlParametrization::pullback(std::span<const double> grad_steps) const {
  const int n = static_cast<int>(grad_steps.size());
  const double dt = horizon / n;
  std::vector<double> g(size(), 0.0);
  if (kind == ControlKind::piecewise_constant) {
    for (int i = 0; i < n; ++i) {
      int j = static_cast<int>(std::floor((i + 0.5) * dt / horizon * n_intervals));
      g[std::clamp(j, 0, n_intervals - 1)] += grad_steps[i];
    }
    return g;
  }
  const double w = 2.0 * std::numbers::pi / horizon;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * dt;
    g[0] += grad_steps[i];
    for (int k = 1; k <= order; ++k) {
      g[2 * k - 1] += 2.0 * std::cos(w * k * t) * grad_steps[i];
      g[2 * k] -= 2.0 * std::sin(w * k * t) * grad_steps[i];
    }
  }
  return g;
}

std::pair<double, double> ControlParametrization::eta_range() const {
  if (kind == ControlKind::piecewise_constant) return {lo, hi};
  const double m = std::max(std::abs(lo), std::abs(hi));
  const double spread = 2.0 * std::sqrt(2.0) * m * order;
  return {lo - spread, hi + spread};
}

std::vector<double> project(std::span<const double> params, double lo, double hi) {
  std::vector<double> out(params.begin(), params.end());
  for (double& v : out) v = std::clamp(v, lo, hi);
  return out;
}

}  // namespace qsp
