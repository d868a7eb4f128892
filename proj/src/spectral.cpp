#include "qsp/spectral.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "qsp/error.hpp"
#include "qsp/log.hpp"

namespace qsp {

namespace {
constexpr double kPi = std::numbers::pi;
}

FourierSeries::FourierSeries(double period, int order)
    : period_(period), coeffs_(2 * order + 1, cplx{0.0}) {
  if (!(period > 0.0)) throw ValidationError("Fourier period must be positive");
  if (order < 0) throw ValidationError("Fourier order must be >= 0");
}

FourierSeries::FourierSeries(double period, std::vector<cplx> coeffs)
    : period_(period), coeffs_(std::move(coeffs)) {
  if (!(period > 0.0)) throw ValidationError("Fourier period must be positive");
  if (coeffs_.size() % 2 == 0)
    throw ValidationError("Fourier coefficient vector must have odd length 2K+1");
}

cplx FourierSeries::operator[](int k) const {
  const int K = order();
  if (k < -K || k > K) return 0.0;
  return coeffs_[k + K];
}

cplx& FourierSeries::at(int k) {
  const int K = order();
  if (k < -K || k > K) throw ValidationError("Fourier index out of range");
  return coeffs_[k + K];
}

cplx laplace_sample(const TimeSeries& f, cplx s) {
  const int n = static_cast<int>(f.values.size());
  if (n < 3) throw ValidationError("laplace_sample needs at least 3 samples");
  if (s.real() <= 0.0) {
    // Only meaningful when the signal has (numerically) compact support.
    const double tail = std::abs(f.values.back());
    if (tail > 1e-12) throw NumericalError("laplace_sample: Re(s) <= 0 on a non-decaying signal");
  }
  auto g = [&](int k) { return f.values[k] * std::exp(-s * (k * f.dt)); };
  const int intervals = n - 1;
  const int simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  cplx acc = 0.0;
  if (simpson_end > 0) {
    cplx sum = g(0) + g(simpson_end);
    for (int k = 1; k < simpson_end; ++k) sum += (k % 2 ? 4.0 : 2.0) * g(k);
    acc += sum * (f.dt / 3.0);
  }
  if (simpson_end != intervals) {
    const int a = simpson_end;
    acc += (3.0 * f.dt / 8.0) * (g(a) + 3.0 * g(a + 1) + 3.0 * g(a + 2) + g(a + 3));
  }
  return acc;
}

FourierSeries fourier_coeffs(std::span<const cplx> samples, double period, int order) {
  const int N = static_cast<int>(samples.size());
  if (N < 2 * order + 1) {
    log_warn("fourier_coeffs: N=" + std::to_string(N) + " < 2K+1=" +
             std::to_string(2 * order + 1) + ", coefficients are aliased");
  }
  FourierSeries fs(period, order);
  for (int k = -order; k <= order; ++k) {
    cplx acc = 0.0;
    for (int n = 0; n < N; ++n) {
      const double ang = -2.0 * kPi * static_cast<double>(k) * n / N;
      acc += samples[n] * cplx(std::cos(ang), std::sin(ang));
    }
    fs.at(k) = acc / static_cast<double>(N);
  }
  return fs;
}

FourierSeries fourier_coeffs(const std::function<cplx(double)>& f, double period, int order,
                             int n_samples) {
  std::vector<cplx> s(n_samples);
  for (int n = 0; n < n_samples; ++n) s[n] = f(period * n / n_samples);
  return fourier_coeffs(s, period, order);
}

cplx synthesize(const FourierSeries& fs, double t) {
  const int K = fs.order();
  cplx acc = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double ang = 2.0 * kPi * k * t / fs.period();
    acc += fs[k] * cplx(std::cos(ang), std::sin(ang));
  }
  return acc;
}

FourierSeries toeplitz_convolve(const FourierSeries& a, const FourierSeries& b) {
  const int Ka = a.order();
  const int Kb = b.order();
  FourierSeries out(a.period(), Ka + Kb);
  auto& c = out.coeffs();
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  // (a*b)_k = sum_j a_{k-j} b_j; positions shift by Ka + Kb.
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i] == cplx{0.0}) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) c[i + j] += ac[i] * bc[j];
  }
  return out;
}

FourierSeries toeplitz_apply(const FourierSeries& a, const FourierSeries& x) {
  return toeplitz_convolve(a, x);
}

FourierSeries conv_power(const FourierSeries& a, int p) {
  if (p < 1) throw ValidationError("conv_power requires p >= 1");
  FourierSeries out = a;
  for (int r = 1; r < p; ++r) out = toeplitz_apply(a, out);
  return out;
}

cplx plancherel_inner(const FourierSeries& f, const FourierSeries& g) {
  if (std::abs(f.period() - g.period()) > 1e-14 * std::max(f.period(), g.period()))
    throw ValidationError("plancherel_inner: period mismatch");
  const int K = std::max(f.order(), g.order());
  cplx acc = 0.0;
  for (int k = -K; k <= K; ++k) acc += f[k] * std::conj(g[k]);
  return acc;
}

double Polynomial::operator()(double y) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
  return acc;
}

cplx Polynomial::operator()(cplx y) const {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
  return acc;
}

FourierSeries poly_pushforward(const Polynomial& h, const FourierSeries& y) {
  const int p = h.degree();
  if (p < 0) throw ValidationError("poly_pushforward: empty polynomial");
  FourierSeries out(y.period(), std::max(p, 0) * y.order());
  if (!h.c.empty()) out.at(0) += h.c[0];
  // power = M_y^{r-1} y = y^{*r}
  FourierSeries power = y;
  for (int r = 1; r <= p; ++r) {
    if (r > 1) power = toeplitz_apply(y, power);
    for (int k = -power.order(); k <= power.order(); ++k) out.at(k) += h.c[r] * power[k];
  }
  return out;
}

cplx time_average_poly(const Polynomial& h, const FourierSeries& y) {
  const int p = h.degree();
  cplx acc = h.c.empty() ? 0.0 : h.c[0];
  if (p >= 1) acc += h.c[1] * y[0];
  FourierSeries power = y;  // M_y^{s-2} y
  for (int s = 2; s <= p; ++s) {
    if (s > 2) power = toeplitz_apply(y, power);
    acc += h.c[s] * plancherel_inner(power, y) ;
  }
  return acc;
}

void write_coeffs_csv(std::ostream& os, const FourierSeries& fs) {
  os << "k,re,im\n";
  os.precision(17);
  for (int k = -fs.order(); k <= fs.order(); ++k)
    os << k << ',' << fs[k].real() << ',' << fs[k].imag() << '\n';
}

FourierSeries read_coeffs_csv(std::istream& is, double period) {
  std::string line;
  std::vector<std::pair<int, cplx>> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
    std::istringstream ls(line);
    int k;
    double re, im;
    char c1, c2;
    if (!(ls >> k >> c1 >> re >> c2 >> im)) throw ValidationError("malformed coefficient row: " + line);
    rows.emplace_back(k, cplx(re, im));
  }
  int K = 0;
  for (auto& [k, v] : rows) K = std::max(K, std::abs(k));
  FourierSeries fs(period, K);
  for (auto& [k, v] : rows) fs.at(k) = v;
  return fs;
}

TalbotContour talbot_contour(double t, int count, cplx shift) {
  if (!(t > 0.0)) throw ValidationError("talbot_contour: t must be positive");
  if (count < 4) throw ValidationError("talbot_contour: need at least 4 nodes");
  const double h = 2.0 * kPi / count;
  const double r = 2.0 * (0.5 * count) / (5.0 * t);
  TalbotContour c;
  c.nodes.reserve(count);
  c.weights.reserve(count);
  const cplx I(0.0, 1.0);
  for (int k = 0; k < count; ++k) {
    const double th = -kPi + (k + 0.5) * h;
    double cot, sigma;
    if (std::abs(th) < 1e-8) {
      cot = 0.0;  // unused
      sigma = 0.0;
    } else {
      cot = std::cos(th) / std::sin(th);
      const double csc = 1.0 / std::sin(th);
      sigma = th * csc * csc - cot;
    }
    const cplx s = (std::abs(th) < 1e-8) ? cplx(r, r * th) : r * th * cplx(cot, 1.0);
    // f(t) = (1/2 pi i) int e^{st} F(s) ds,  ds = i r (1 + i sigma) dtheta
    const cplx w = std::exp((s + shift) * t) * (r / (2.0 * kPi)) * (1.0 + I * sigma) * h;
    c.nodes.push_back(s + shift);
    c.weights.push_back(w);
  }
  return c;
}

cplx talbot_inverse(const std::function<cplx(cplx)>& F, double t, int count, cplx shift) {
  const TalbotContour c = talbot_contour(t, count, shift);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < c.nodes.size(); ++k) acc += c.weights[k] * F(c.nodes[k]);
  return acc;
}

}  // namespace qsp
