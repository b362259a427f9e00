#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kitc/kernels.hpp"
#include "kitc/moments.hpp"
#include "kitc/parallel.hpp"
#include "kitc/tree.hpp"

namespace kitc {

/// The three treecode knobs: MAC parameter, interpolation degree, leaf size.
struct TreecodeParams {
  double theta = 0.7;
  int degree = 7;
  std::size_t max_leaf_size = 2000;
  bool shrink = false;

  /// Throws std::invalid_argument unless theta in (0, 1], degree in [1, 20]
  /// and max_leaf_size >= 1.
  void validate() const;
};

struct InteractionStats {
  std::uint64_t approximations = 0;       // MAC-accepted particle-cluster approximations
  std::uint64_t direct_interactions = 0;  // leaf direct sums
  std::uint64_t kernel_evaluations = 0;

  InteractionStats& operator+=(const InteractionStats& o) {
    approximations += o.approximations;
    direct_interactions += o.direct_interactions;
    kernel_evaluations += o.kernel_evaluations;
    return *this;
  }
  friend bool operator==(const InteractionStats&, const InteractionStats&) = default;
};

/// Row-major outputs, one row of `output_dim` values per target.
struct EvalResult {
  std::vector<double> values;
  std::size_t output_dim = 0;
  InteractionStats stats;

  std::size_t size() const { return output_dim == 0 ? 0 : values.size() / output_dim; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * output_dim, output_dim}; }
};

/// r <= theta * R with R = |target - center|. A target at the center is
/// accepted only by a zero-radius cluster.
inline bool mac_accept(const Vec3& target, const Cluster& cluster, double theta) {
  const double dist = norm(target - cluster.center);
  if (dist == 0.0) return cluster.radius == 0.0;
  return cluster.radius <= theta * dist;
}

template <Kernel K>
using Output = std::array<double, K::output_dim>;

template <Kernel K>
inline void accumulate(Output<K>& acc, const Output<K>& v) {
  for (std::size_t c = 0; c < K::output_dim; ++c) acc[c] += v[c];
}

/// Far-field approximation: the target interacts with the (n+1)^3 mapped
/// Chebyshev points carrying the cluster's modified weights.
template <Kernel K>
Output<K> approx_interaction(const K& kernel, const Vec3& target, const ClusterMoments& moments) {
  constexpr std::size_t m = K::weight_dim;
  const auto& n0 = moments.nodes[0];
  const auto& n1 = moments.nodes[1];
  const auto& n2 = moments.nodes[2];
  const double* w = moments.weights.data();
  Output<K> acc{};
  for (double s0 : n0) {
    for (double s1 : n1) {
      for (double s2 : n2) {
        accumulate<K>(acc, kernel.evaluate(target, Vec3{s0, s1, s2}, std::span<const double, m>(w, m)));
        w += m;
      }
    }
  }
  return acc;
}

/// Direct particle-cluster sum over `sources`, honouring the kernel's
/// self-interaction policy for sources that coincide with the target.
template <Kernel K>
Output<K> direct_interaction(const K& kernel, const Vec3& target, std::span<const Vec3> sources,
                             std::span<const double> weights) {
  constexpr std::size_t m = K::weight_dim;
  const bool skip_self = kernel.self_interaction() == SelfInteraction::omit;
  Output<K> acc{};
  for (std::size_t j = 0; j < sources.size(); ++j) {
    if (skip_self && sources[j] == target) continue;
    accumulate<K>(acc, kernel.evaluate(target, sources[j], std::span<const double, m>(weights.data() + j * m, m)));
  }
  return acc;
}

/// A built treecode: reordered sources, cluster tree and moments. Immutable
/// after construction, so evaluation may be shared across threads.
class Treecode {
 public:
  /// Builds the tree and all moments. Throws std::invalid_argument on bad
  /// parameters or an empty system.
  Treecode(ParticleSystem sources, const TreecodeParams& params, int threads = 0);

  const TreecodeParams& params() const { return params_; }
  const ParticleSystem& sources() const { return sources_; }
  const ClusterTree& tree() const { return tree_; }
  const MomentTable& moments() const { return moments_; }
  double tree_seconds() const { return tree_seconds_; }
  double moment_seconds() const { return moment_seconds_; }

  /// Velocity at one target, recursing from `cluster` (root by default).
  template <Kernel K>
  Output<K> compute_velocity(const K& kernel, const Vec3& target, InteractionStats& stats,
                             std::size_t cluster = 0) const {
    const Cluster& c = tree_.clusters[cluster];
    const bool can_approx =
        kernel.self_interaction() == SelfInteraction::include || !(target == c.center);
    if (can_approx && mac_accept(target, c, params_.theta)) {
      ++stats.approximations;
      stats.kernel_evaluations += moments_[cluster].weights.size() / K::weight_dim;
      return approx_interaction(kernel, target, moments_[cluster]);
    }
    if (c.is_leaf()) {
      ++stats.direct_interactions;
      stats.kernel_evaluations += c.count();
      return direct_interaction(kernel, target, std::span<const Vec3>(sources_.positions).subspan(c.begin, c.count()),
                                std::span<const double>(sources_.weights).subspan(c.begin * K::weight_dim,
                                                                                  c.count() * K::weight_dim));
    }
    Output<K> acc{};
    for (int k = 0; k < c.num_children; ++k)
      accumulate<K>(acc, compute_velocity(kernel, target, stats, c.first_child + static_cast<std::size_t>(k)));
    return acc;
  }

  /// Outputs at arbitrary targets, in the order given.
  template <Kernel K>
  EvalResult evaluate(const K& kernel, std::span<const Vec3> targets, int threads = 0) const {
    check_kernel<K>();
    EvalResult out{std::vector<double>(targets.size() * K::output_dim), K::output_dim, {}};
    run_targets(kernel, targets.size(), threads, out,
                [&](std::size_t i) { return std::pair{targets[i], i}; });
    return out;
  }

  /// Outputs at the source particles, returned in their original input order.
  template <Kernel K>
  EvalResult evaluate_all(const K& kernel, int threads = 0) const {
    check_kernel<K>();
    EvalResult out{std::vector<double>(sources_.size() * K::output_dim), K::output_dim, {}};
    run_targets(kernel, sources_.size(), threads, out,
                [&](std::size_t i) { return std::pair{sources_.positions[i], sources_.permutation[i]}; });
    return out;
  }

 private:
  template <Kernel K>
  void check_kernel() const {
    if (K::weight_dim != sources_.weight_dim)
      throw std::invalid_argument("kernel weight dimension does not match the particle weights");
  }

  // Each target is accumulated sequentially, so results do not depend on
  // the thread count or schedule.
  template <Kernel K, class TargetAt>
  void run_targets(const K& kernel, std::size_t count, int threads, EvalResult& out, TargetAt target_at) const {
    std::uint64_t approximations = 0;
    std::uint64_t directs = 0;
    std::uint64_t evals = 0;
    const auto n = static_cast<std::ptrdiff_t>(count);
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt) reduction(+ : approximations, directs, evals)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto [x, slot] = target_at(static_cast<std::size_t>(i));
      InteractionStats local;
      const auto u = compute_velocity(kernel, x, local);
      std::copy(u.begin(), u.end(), out.values.begin() + static_cast<std::ptrdiff_t>(slot * K::output_dim));
      approximations += local.approximations;
      directs += local.direct_interactions;
      evals += local.kernel_evaluations;
    }
    out.stats = {approximations, directs, evals};
  }

  TreecodeParams params_;
  ParticleSystem sources_;
  ClusterTree tree_;
  MomentTable moments_;
  double tree_seconds_ = 0.0;
  double moment_seconds_ = 0.0;
};

/// O(N * M) reference: outputs at `targets` from all `sources`.
template <Kernel K>
EvalResult direct_sum(const K& kernel, std::span<const Vec3> targets, const ParticleSystem& sources,
                      int threads = 0) {
  if (K::weight_dim != sources.weight_dim)
    throw std::invalid_argument("kernel weight dimension does not match the particle weights");
  EvalResult out{std::vector<double>(targets.size() * K::output_dim), K::output_dim, {}};
  const auto n = static_cast<std::ptrdiff_t>(targets.size());
  const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = direct_interaction(kernel, targets[static_cast<std::size_t>(i)], sources.positions, sources.weights);
    std::copy(u.begin(), u.end(), out.values.begin() + i * static_cast<std::ptrdiff_t>(K::output_dim));
  }
  out.stats.direct_interactions = targets.size();
  out.stats.kernel_evaluations = static_cast<std::uint64_t>(targets.size()) * sources.size();
  return out;
}

/// Direct sum with targets equal to the sources, in the system's order.
template <Kernel K>
EvalResult direct_sum(const K& kernel, const ParticleSystem& system, int threads = 0) {
  return direct_sum(kernel, std::span<const Vec3>(system.positions), system, threads);
}

}  // namespace kitc
