#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "kitc/tree.hpp"

namespace kitc {

/// Modified weights of one cluster together with the Chebyshev grid they
/// live on. Index layout: ((k1*(n+1) + k2)*(n+1) + k3)*m + component.
struct ClusterMoments {
  std::array<std::vector<double>, 3> nodes;
  std::vector<double> weights;
};

/// Interpolation box for a cluster: the cluster box with any axis narrower
/// than max(1e-12, 1e-12*|coordinate|) widened symmetrically to that width,
/// so the mapped nodes stay distinct.
Box interpolation_box(const Box& box);

/// Modified weights of the particles `positions` (weights row-major with
/// `weight_dim` columns) on a degree-n tensor Chebyshev grid spanning `box`.
ClusterMoments compute_modified_weights(const Box& box, int degree, std::span<const Vec3> positions,
                                        std::span<const double> weights, std::size_t weight_dim);

/// Modified weights for every cluster of a tree, indexed like tree.clusters.
class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(int degree, std::size_t weight_dim, std::vector<ClusterMoments> clusters)
      : degree_(degree), weight_dim_(weight_dim), clusters_(std::move(clusters)) {}

  int degree() const { return degree_; }
  std::size_t weight_dim() const { return weight_dim_; }
  std::size_t size() const { return clusters_.size(); }
  const ClusterMoments& operator[](std::size_t cluster) const { return clusters_[cluster]; }
  /// Total stored modified-weight scalars.
  std::size_t scalar_count() const;

 private:
  int degree_ = 0;
  std::size_t weight_dim_ = 0;
  std::vector<ClusterMoments> clusters_;
};

/// Computes moments for all clusters, in parallel over clusters when
/// threads != 1 (threads <= 0 uses the OpenMP default).
MomentTable compute_all_moments(const ClusterTree& tree, const ParticleSystem& system, int degree,
                                int threads = 1);

}  // namespace kitc
