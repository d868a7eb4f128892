#pragma once

#include <span>
#include <string>
#include <vector>

namespace qsp {

enum class ControlKind { piecewise_constant, truncated_fourier };

std::string to_string(ControlKind k);

/// How a real parameter vector becomes a scalar control eta(t) on [0, T].
///
/// piecewise_constant: one value per equal-length interval.
/// truncated_fourier: parameters [a_0, a_1, b_1, ..., a_K, b_K] define
/// c_0 = a_0, c_k = a_k + i b_k, c_{-k} = conj(c_k), so
/// eta(t) = a_0 + 2 sum_k (a_k cos(2 pi k t/T) - b_k sin(2 pi k t/T)).
struct ControlParametrization {
  ControlKind kind = ControlKind::piecewise_constant;
  int n_intervals = 1;
  int order = 0;  // K
  double horizon = 1.0;
  double lo = -1.0;
  double hi = 1.0;

  int size() const;
  double eval(std::span<const double> params, double t) const;
  // eta at the midpoints of n uniform steps over [0, horizon].
  std::vector<double> step_values(std::span<const double> params, int n) const;
  // Chain rule: gradient wrt the step values -> gradient wrt the parameters.
  std::vector<double> pullback(std::span<const double> grad_steps) const;
  // Conservative range of eta(t) for parameters inside [lo, hi].
  std::pair<double, double> eta_range() const;
};

// Throws ValidationError for n_intervals < 1, K < 0, T <= 0 or lo > hi.
ControlParametrization parametrize(ControlKind kind, int dims, double horizon, double lo,
                                   double hi);

/// Parameters bound to their parametrization.
struct ControlSignal {
  ControlParametrization par;
  std::vector<double> params;

  double operator()(double t) const { return par.eval(params, t); }
};

// Componentwise clamp into [lo, hi].
std::vector<double> project(std::span<const double> params, double lo, double hi);

}  // namespace qsp
