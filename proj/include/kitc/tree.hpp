#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kitc/vec3.hpp"

namespace kitc {

/// Particles with per-particle weight vectors of a fixed dimension.
///
/// Tree construction reorders positions and weights in place so that every
/// cluster owns a contiguous index range; `permutation[i]` is the original
/// index of the particle now stored at slot i.
struct ParticleSystem {
  std::vector<Vec3> positions;
  std::vector<double> weights;  // row-major, size() * weight_dim
  std::size_t weight_dim = 0;
  std::vector<std::size_t> permutation;

  ParticleSystem() = default;
  ParticleSystem(std::vector<Vec3> pos, std::vector<double> w, std::size_t dim);

  std::size_t size() const { return positions.size(); }
  std::span<const double> weight(std::size_t i) const {
    return {weights.data() + i * weight_dim, weight_dim};
  }
};

/// Axis-aligned box given by its min and max corners.
struct Box {
  Vec3 lo;
  Vec3 hi;

  Vec3 center() const { return 0.5 * (lo + hi); }
  Vec3 extent() const { return hi - lo; }
  bool contains(const Vec3& p, double slack = 0.0) const;
};

/// Smallest axis-aligned box enclosing the points. Requires a non-empty span.
Box bounding_box(std::span<const Vec3> points);

/// Norm of the half-extent vector (the box half-diagonal).
double cluster_radius(const Box& box);

struct Cluster {
  Box box;
  Vec3 center;
  double radius = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t first_child = 0;  // children are stored contiguously
  int num_children = 0;
  int level = 0;

  std::size_t count() const { return end - begin; }
  bool is_leaf() const { return num_children == 0; }
};

struct TreeOptions {
  std::size_t max_leaf_size = 2000;
  bool shrink = false;
};

inline constexpr int kMaxTreeDepth = 64;

/// Rectangular-box cluster hierarchy. Clusters live in one vector with the
/// root at index 0; each cluster's children occupy a contiguous block.
struct ClusterTree {
  std::vector<Cluster> clusters;
  TreeOptions options;
  int depth = 0;
  /// Leaves holding more than max_leaf_size particles because the box could
  /// not be split further (coincident particles or the depth cap).
  std::size_t oversized_leaves = 0;

  const Cluster& root() const { return clusters.front(); }
  std::span<const Cluster> children(const Cluster& c) const {
    return {clusters.data() + c.first_child, static_cast<std::size_t>(c.num_children)};
  }
  std::size_t leaf_count() const;
  std::size_t max_leaf_count() const;
};

/// Builds the tree by recursive bisection: each cluster is halved in every
/// direction whose side exceeds (its own longest side)/sqrt(2), empty
/// children are dropped, and splitting stops once a cluster holds at most
/// max_leaf_size particles. Reorders `system` in place.
/// Throws std::invalid_argument for an empty system or max_leaf_size == 0.
ClusterTree build_tree(ParticleSystem& system, const TreeOptions& options);

/// Number of modified-weight scalars stored for the tree: clusters * (n+1)^3 * m.
std::size_t count_moment_storage(const ClusterTree& tree, int degree, std::size_t weight_dim);

}  // namespace kitc
