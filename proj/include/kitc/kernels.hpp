#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "kitc/vec3.hpp"

namespace kitc {

/// Whether the i == j term belongs in the sum.
enum class SelfInteraction { include, omit };

/// A pairwise kernel k(x, y) acting linearly on a weight vector of size
/// weight_dim and producing output_dim components. The treecode only ever
/// calls evaluate(); nothing else about the kernel is inspected.
template <class K>
concept Kernel = requires(const K& k, const Vec3& x, const Vec3& y,
                          std::span<const double, K::weight_dim> f) {
  { K::weight_dim } -> std::convertible_to<std::size_t>;
  { K::output_dim } -> std::convertible_to<std::size_t>;
  { k.self_interaction() } -> std::same_as<SelfInteraction>;
  { k.evaluate(x, y, f) } -> std::same_as<std::array<double, K::output_dim>>;
};

/// The five scalar functions of the method of regularized Stokeslets.
struct MrsScalars {
  double h1;
  double h2;
  double q;
  double d1;
  double d2;
};

/// Evaluates H1, H2, Q, D1, D2 at distance r with regularization epsilon.
/// Throws std::invalid_argument when r == epsilon == 0 or either is negative.
MrsScalars mrs_scalars(double r, double epsilon);

/// Regularized Stokeslet: weights are forces, outputs are velocities.
struct Stokeslet {
  static constexpr std::size_t weight_dim = 3;
  static constexpr std::size_t output_dim = 3;

  double epsilon = 0.0;

  SelfInteraction self_interaction() const {
    return epsilon > 0.0 ? SelfInteraction::include : SelfInteraction::omit;
  }

  std::array<double, 3> evaluate(const Vec3& x, const Vec3& y, std::span<const double, 3> f) const {
    const double dx = x.x - y.x;
    const double dy = x.y - y.y;
    const double dz = x.z - y.z;
    const double r2 = dx * dx + dy * dy + dz * dz;
    const double e2 = epsilon * epsilon;
    const double s2 = r2 + e2;
    const double h2 = 1.0 / (8.0 * std::numbers::pi * s2 * std::sqrt(s2));
    const double h1 = (2.0 * e2 + r2) * h2;
    const double fd = (f[0] * dx + f[1] * dy + f[2] * dz) * h2;
    return {f[0] * h1 + fd * dx, f[1] * h1 + fd * dy, f[2] * h1 + fd * dz};
  }
};

/// Regularized Stokeslet plus rotlet: weights are (force, torque), outputs
/// are (linear velocity, angular velocity).
struct StokesletRotlet {
  static constexpr std::size_t weight_dim = 6;
  static constexpr std::size_t output_dim = 6;

  double epsilon = 0.0;

  SelfInteraction self_interaction() const {
    return epsilon > 0.0 ? SelfInteraction::include : SelfInteraction::omit;
  }

  std::array<double, 6> evaluate(const Vec3& x, const Vec3& y, std::span<const double, 6> fn) const {
    const Vec3 d = x - y;
    const Vec3 f{fn[0], fn[1], fn[2]};
    const Vec3 t{fn[3], fn[4], fn[5]};
    const double r2 = dot(d, d);
    const double e2 = epsilon * epsilon;
    const double s2 = r2 + e2;
    const double inv3 = 1.0 / (8.0 * std::numbers::pi * s2 * std::sqrt(s2));
    const double inv5 = inv3 / s2;
    const double inv7 = inv5 / s2;
    const double h1 = (2.0 * e2 + r2) * inv3;
    const double h2 = inv3;
    const double q = (5.0 * e2 + 2.0 * r2) * inv5;
    const double d1 = (10.0 * e2 * e2 - 7.0 * e2 * r2 - 2.0 * r2 * r2) * inv7;
    const double d2 = (21.0 * e2 + 6.0 * r2) * inv7;

    const double fd = dot(f, d) * h2;
    const Vec3 txd = cross(t, d);
    const Vec3 fxd = cross(f, d);
    const double td = 0.25 * dot(t, d) * d2;
    const double hq = 0.5 * q;
    const double qd1 = 0.25 * d1;
    return {f.x * h1 + fd * d.x + hq * txd.x,
            f.y * h1 + fd * d.y + hq * txd.y,
            f.z * h1 + fd * d.z + hq * txd.z,
            hq * fxd.x + qd1 * t.x + td * d.x,
            hq * fxd.y + qd1 * t.y + td * d.y,
            hq * fxd.z + qd1 * t.z + td * d.z};
  }
};

/// Scalar 1/r interaction, singular at r = 0 so the self term is omitted.
struct Coulomb {
  static constexpr std::size_t weight_dim = 1;
  static constexpr std::size_t output_dim = 1;

  SelfInteraction self_interaction() const { return SelfInteraction::omit; }

  std::array<double, 1> evaluate(const Vec3& x, const Vec3& y, std::span<const double, 1> q) const {
    const Vec3 d = x - y;
    return {q[0] / std::sqrt(dot(d, d))};
  }
};

/// Coulomb potential q/|x - y|. Throws std::invalid_argument when x == y.
double coulomb_eval(const Vec3& x, const Vec3& y, double q);

std::array<double, 3> stokeslet_eval(const Vec3& x, const Vec3& y, const std::array<double, 3>& f,
                                     double epsilon);
std::array<double, 6> stokeslet_rotlet_eval(const Vec3& x, const Vec3& y,
                                            const std::array<double, 6>& fn, double epsilon);

/// Runtime-selected kernel, used by the harness and the CLI.
using AnyKernel = std::variant<Stokeslet, StokesletRotlet, Coulomb>;

/// "stokeslet", "stokeslet-rotlet" or "coulomb". Throws std::invalid_argument
/// for unknown names or a negative epsilon.
AnyKernel make_kernel(std::string_view name, double epsilon);
std::string kernel_name(const AnyKernel& kernel);
std::size_t weight_dim(const AnyKernel& kernel);
std::size_t output_dim(const AnyKernel& kernel);

}  // namespace kitc
