#include "qsp/grid_state.hpp"

#include <cmath>
#include <sstream>

#include "qsp/error.hpp"

namespace qsp {

Grid make_grid(double x_l, double x_r, int n) {
  if (n < 3) {
    std::ostringstream msg;
    msg << "grid needs at least 3 nodes, got J=" << n;
    throw ValidationError(msg.str());
  }
  if (!(x_l < x_r)) {
    std::ostringstream msg;
    msg << "grid bounds must satisfy x_l < x_r, got [" << x_l << ", " << x_r << "]";
    throw ValidationError(msg.str());
  }
  Grid g;
  g.x_l_ = x_l;
  g.x_r_ = x_r;
  g.n_ = n;
  g.dx_ = (x_r - x_l) / (n - 1);
  g.periodic_ = false;
  return g;
}

Grid make_periodic_grid(double x_l, double period, int n) {
  if (n < 3) throw ValidationError("periodic grid needs at least 3 nodes");
  if (!(period > 0.0)) throw ValidationError("period must be positive");
  Grid g;
  g.x_l_ = x_l;
  g.dx_ = period / n;
  g.x_r_ = x_l + (n - 1) * g.dx_;
  g.n_ = n;
  g.periodic_ = true;
  return g;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (int k = 0; k < n_; ++k) x[k] = node(k);
  return x;
}

double Grid::weight(int k) const {
  if (periodic_) return dx_;
  return (k == 0 || k == n_ - 1) ? 0.5 * dx_ : dx_;
}

Wavefunction::Wavefunction(Grid grid) : grid_(grid), values_(grid.size()) {}

Wavefunction::Wavefunction(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw ValidationError("wavefunction length does not match grid size");
}

Wavefunction& Wavefunction::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

Wavefunction& Wavefunction::operator+=(const Wavefunction& other) {
  if (!(grid_ == other.grid_)) throw ValidationError("grid mismatch");
  for (int k = 0; k < size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Wavefunction& Wavefunction::operator-=(const Wavefunction& other) {
  if (!(grid_ == other.grid_)) throw ValidationError("grid mismatch");
  for (int k = 0; k < size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Wavefunction operator*(cplx s, Wavefunction w) { return w *= s; }
Wavefunction operator+(Wavefunction a, const Wavefunction& b) { return a += b; }
Wavefunction operator-(Wavefunction a, const Wavefunction& b) { return a -= b; }

cplx inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("inner_product: grid mismatch");
  const Grid& g = a.grid();
  cplx acc = 0.0;
  for (int k = 0; k < g.size(); ++k) acc += g.weight(k) * std::conj(a[k]) * b[k];
  return acc;
}

double norm(const Wavefunction& a) {
  const Grid& g = a.grid();
  double acc = 0.0;
  for (int k = 0; k < g.size(); ++k) acc += g.weight(k) * std::norm(a[k]);
  return std::sqrt(acc);
}

Wavefunction normalized(Wavefunction a) {
  const double n = norm(a);
  if (n == 0.0) throw ValidationError("cannot normalize the zero wavefunction");
  a *= 1.0 / n;
  return a;
}

double fidelity(const Wavefunction& a, const Wavefunction& b) {
  constexpr double tol = 1e-6;
  const double na = norm(a);
  const double nb = norm(b);
  if (std::abs(na - 1.0) > tol || std::abs(nb - 1.0) > tol) {
    std::ostringstream msg;
    msg << "fidelity requires normalized states (norms " << na << ", " << nb << ")";
    throw ValidationError(msg.str());
  }
  return std::norm(inner_product(a, b));
}

double l2_distance(const Wavefunction& a, const Wavefunction& b) { return norm(a - b); }

}  // namespace qsp
