#pragma once

#include <cfloat>
#include <cstddef>
#include <span>
#include <vector>

namespace kitc {

/// Removable-singularity tolerance for barycentric evaluation: a coordinate
/// within this distance of a node is treated as sitting on it.
inline constexpr double kNodeTolerance = DBL_MIN;

/// Chebyshev points of the 2nd kind, cos(k*pi/n) for k = 0..n (descending).
/// Throws std::invalid_argument for n == 0.
std::vector<double> chebyshev_points(int n);

/// Simple barycentric weights (-1)^k * delta_k, delta = 1/2 at both ends.
std::vector<double> simple_weights(int n);

/// Chebyshev grid of degree n mapped linearly onto [a, b].
///
/// Points keep the canonical k = 0..n ordering, so points()[0] == b and
/// points()[n] == a. The weights are the simple weights, which stay valid on
/// any interval because the barycentric form cancels a common factor.
class ChebyshevGrid1D {
 public:
  ChebyshevGrid1D(int n, double a, double b);

  int degree() const { return degree_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }

  /// L_k(t) for k = 0..n written into `out` (size n+1).
  void eval_basis(double t, std::span<double> out) const;
  std::vector<double> eval_basis(double t) const;

 private:
  int degree_;
  double a_;
  double b_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Same as the constructor; kept as a free function for call sites that read
/// better as "map the grid onto [a, b]".
ChebyshevGrid1D map_grid(int n, double a, double b);

/// Barycentric Lagrange basis at t for arbitrary nodes and weights.
/// Returns the exact unit vector e_j when |t - nodes[j]| <= kNodeTolerance.
void barycentric_basis(std::span<const double> nodes, std::span<const double> weights, double t,
                       std::span<double> out);

}  // namespace kitc
