#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qsp {

using cplx = std::complex<double>;

/// Uniform 1D grid. Non-periodic grids include both endpoints x_l and x_r;
/// periodic grids cover [x_l, x_l + J*dx) and node J-1 sits one step short
/// of the period.
class Grid {
 public:
  double x_l() const { return x_l_; }
  double x_r() const { return x_r_; }
  int size() const { return n_; }
  double dx() const { return dx_; }
  bool periodic() const { return periodic_; }
  double node(int k) const { return x_l_ + k * dx_; }
  std::vector<double> nodes() const;

  // Trapezoid weight of node k (dx/2 at the two endpoints), or dx everywhere
  // on a periodic grid.
  double weight(int k) const;

  bool operator==(const Grid& other) const = default;

  friend Grid make_grid(double x_l, double x_r, int n);
  friend Grid make_periodic_grid(double x_l, double period, int n);

 private:
  double x_l_ = 0.0;
  double x_r_ = 1.0;
  int n_ = 3;
  double dx_ = 0.5;
  bool periodic_ = false;
};

// Throws ValidationError for n < 3 or x_l >= x_r.
Grid make_grid(double x_l, double x_r, int n);
Grid make_periodic_grid(double x_l, double period, int n);

/// Complex samples of a wavefunction on a grid.
class Wavefunction {
 public:
  Wavefunction() = default;
  explicit Wavefunction(Grid grid);
  Wavefunction(Grid grid, std::vector<cplx> values);

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  const cplx& operator[](int k) const { return values_[k]; }
  cplx& operator[](int k) { return values_[k]; }

  Wavefunction& operator*=(cplx s);
  Wavefunction& operator+=(const Wavefunction& other);
  Wavefunction& operator-=(const Wavefunction& other);

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

Wavefunction operator*(cplx s, Wavefunction w);
Wavefunction operator+(Wavefunction a, const Wavefunction& b);
Wavefunction operator-(Wavefunction a, const Wavefunction& b);

// Samples f(x) on every node.
template <class F>
Wavefunction sample(const Grid& grid, F&& f) {
  std::vector<cplx> v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v[k] = f(grid.node(k));
  return Wavefunction(grid, std::move(v));
}

/// Trapezoid approximation of the integral of conj(a) * b. Conjugate-linear
/// in the first argument.
cplx inner_product(const Wavefunction& a, const Wavefunction& b);
double norm(const Wavefunction& a);
Wavefunction normalized(Wavefunction a);

/// |<a,b>|^2 for states normalized within 1e-6; throws otherwise.
double fidelity(const Wavefunction& a, const Wavefunction& b);

// Discrete L2 distance; convenience for tests and diagnostics.
double l2_distance(const Wavefunction& a, const Wavefunction& b);

}  // namespace qsp
