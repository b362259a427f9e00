#include "kitc/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kitc {

std::vector<double> chebyshev_points(int n) {
  if (n < 1) throw std::invalid_argument("chebyshev_points: degree must be >= 1");
  std::vector<double> s(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) s[k] = std::cos(k * std::numbers::pi / n);
  // cos is not exact at the ends or the middle; pin the values that are.
  s[0] = 1.0;
  s[n] = -1.0;
  if (n % 2 == 0) s[n / 2] = 0.0;
  return s;
}

std::vector<double> simple_weights(int n) {
  if (n < 1) throw std::invalid_argument("simple_weights: degree must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) w[k] = (k % 2 == 0) ? 1.0 : -1.0;
  w[0] *= 0.5;
  w[n] *= 0.5;
  return w;
}

ChebyshevGrid1D::ChebyshevGrid1D(int n, double a, double b)
    : degree_(n), a_(a), b_(b), weights_(simple_weights(n)) {
  if (!(a < b)) throw std::invalid_argument("ChebyshevGrid1D: interval requires a < b");
  const auto ref = chebyshev_points(n);
  points_.resize(ref.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t k = 0; k < ref.size(); ++k) points_[k] = mid + half * ref[k];
  points_.front() = b;
  points_.back() = a;
}

void ChebyshevGrid1D::eval_basis(double t, std::span<double> out) const {
  barycentric_basis(points_, weights_, t, out);
}

std::vector<double> ChebyshevGrid1D::eval_basis(double t) const {
  std::vector<double> out(points_.size());
  eval_basis(t, out);
  return out;
}

ChebyshevGrid1D map_grid(int n, double a, double b) { return ChebyshevGrid1D(n, a, b); }

void barycentric_basis(std::span<const double> nodes, std::span<const double> weights, double t,
                       std::span<double> out) {
  const std::size_t count = nodes.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double diff = t - nodes[k];
    if (std::abs(diff) <= kNodeTolerance) {
      for (std::size_t j = 0; j < count; ++j) out[j] = 0.0;
      out[k] = 1.0;
      return;
    }
    out[k] = weights[k] / diff;
    sum += out[k];
  }
  for (std::size_t k = 0; k < count; ++k) out[k] /= sum;
}

}  // namespace kitc
