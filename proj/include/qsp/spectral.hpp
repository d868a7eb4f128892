#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace qsp {

using cplx = std::complex<double>;

/// Truncated Fourier series on period T in the basis exp(+2*pi*i*k*t/T),
/// k = -K..K. Coefficient k is stored at position k + K.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(double period, int order);
  FourierSeries(double period, std::vector<cplx> coeffs);  // size must be odd

  double period() const { return period_; }
  int order() const { return static_cast<int>(coeffs_.size() / 2); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }

  // Zero outside the stored range.
  cplx operator[](int k) const;
  cplx& at(int k);

 private:
  double period_ = 1.0;
  std::vector<cplx> coeffs_{cplx{0.0}};
};

/// Uniform samples f(n*dt), n = 0..size-1.
struct TimeSeries {
  double dt = 1.0;
  std::vector<cplx> values;

  double duration() const { return dt * (values.size() - 1); }
};

// Composite Simpson quadrature of int_0^{T_max} f(t) exp(-s t) dt.
// An odd interval count closes with Simpson's 3/8 rule on the last three.
cplx laplace_sample(const TimeSeries& f, cplx s);

// Discrete projection c_k = (1/N) sum_n f(t_n) exp(-2 pi i k n / N).
// Logs an aliasing warning when N < 2K+1.
FourierSeries fourier_coeffs(std::span<const cplx> samples, double period, int order);
FourierSeries fourier_coeffs(const std::function<cplx(double)>& f, double period, int order,
                             int n_samples);

cplx synthesize(const FourierSeries& fs, double t);

// Full linear convolution: order of the result is K_a + K_b.
FourierSeries toeplitz_convolve(const FourierSeries& a, const FourierSeries& b);

// Applies M_a to an arbitrary coefficient vector (same as convolution).
FourierSeries toeplitz_apply(const FourierSeries& a, const FourierSeries& x);

// p-fold self-convolution a * a * ... * a.
FourierSeries conv_power(const FourierSeries& a, int p);

// sum_k f_k conj(g_k) = (1/T) int_0^T f conj(g) dt for band-limited signals.
cplx plancherel_inner(const FourierSeries& f, const FourierSeries& g);

/// Real polynomial h(y) = sum_r c[r] y^r.
struct Polynomial {
  std::vector<double> c;
  double operator()(double y) const;
  cplx operator()(cplx y) const;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

// Fourier coefficients of t -> h(y(t)), assembled as (sum_r h_r M_y^{r-1}) y.
FourierSeries poly_pushforward(const Polynomial& h, const FourierSeries& y);

// (1/T) int_0^T h(y(t)) dt assembled as h_0 + h_1 y_0 + y^* (sum_{s>=2} h_s M_y^{s-2}) y.
// Exact for real band-limited y.
cplx time_average_poly(const Polynomial& h, const FourierSeries& y);

// CSV with columns k,re,im.
void write_coeffs_csv(std::ostream& os, const FourierSeries& fs);
FourierSeries read_coeffs_csv(std::istream& is, double period);

/// Fixed-Talbot contour for numerical Laplace inversion at time t:
/// s(theta) = shift + r*theta*(cot(theta) + i), with `count` midpoint nodes
/// on theta in (-pi, pi) and r = 2*(count/2)/(5t). Complex-valued signals are
/// supported (no real-part folding). `shift` moves the contour so spectra
/// concentrated near s = shift are resolved with fewer nodes.
struct TalbotContour {
  std::vector<cplx> nodes;
  std::vector<cplx> weights;  // f(t) ~= sum_k weights[k] * F(nodes[k])
};

TalbotContour talbot_contour(double t, int count = 32, cplx shift = 0.0);

cplx talbot_inverse(const std::function<cplx(cplx)>& F, double t, int count = 32,
                    cplx shift = 0.0);

}  // namespace qsp
