#include "kitc/tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kitc {

ParticleSystem::ParticleSystem(std::vector<Vec3> pos, std::vector<double> w, std::size_t dim)
    : positions(std::move(pos)), weights(std::move(w)), weight_dim(dim), permutation(positions.size()) {
  if (weights.size() != positions.size() * weight_dim)
    throw std::invalid_argument("ParticleSystem: weight array size does not match N * weight_dim");
  std::iota(permutation.begin(), permutation.end(), std::size_t{0});
}

bool Box::contains(const Vec3& p, double slack) const {
  for (int a = 0; a < 3; ++a)
    if (p[a] < lo[a] - slack || p[a] > hi[a] + slack) return false;
  return true;
}

Box bounding_box(std::span<const Vec3> points) {
  Box box{points.front(), points.front()};
  for (const auto& p : points) {
    box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y), std::min(box.lo.z, p.z)};
    box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y), std::max(box.hi.z, p.z)};
  }
  return box;
}

double cluster_radius(const Box& box) { return norm(0.5 * box.extent()); }

std::size_t ClusterTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.is_leaf(); }));
}

std::size_t ClusterTree::max_leaf_count() const {
  std::size_t best = 0;
  for (const auto& c : clusters)
    if (c.is_leaf()) best = std::max(best, c.count());
  return best;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(ParticleSystem& system, ClusterTree& tree)
      : system_(system), tree_(tree), codes_(system.size()), scratch_pos_(system.size()),
        scratch_w_(system.weights.size()), scratch_perm_(system.size()) {}

  void split(std::size_t index) {
    // Copy: tree_.clusters may reallocate while children are appended.
    const Cluster c = tree_.clusters[index];
    tree_.depth = std::max(tree_.depth, c.level);
    if (c.count() <= tree_.options.max_leaf_size) return;

    const Vec3 ext = c.box.extent();
    const double longest = std::max({ext.x, ext.y, ext.z});
    if (longest <= 0.0 || c.level >= kMaxTreeDepth) {
      ++tree_.oversized_leaves;
      return;
    }
    const double threshold = longest / std::sqrt(2.0);
    std::array<bool, 3> cut{};
    for (int a = 0; a < 3; ++a) cut[a] = ext[a] > threshold;
    const Vec3 mid = c.box.center();

    std::array<std::size_t, 8> counts{};
    for (std::size_t i = c.begin; i < c.end; ++i) {
      const Vec3& p = system_.positions[i];
      unsigned code = 0;
      for (int a = 0; a < 3; ++a)
        if (cut[a] && p[a] >= mid[a]) code |= 1u << a;
      codes_[i] = static_cast<unsigned char>(code);
      ++counts[code];
    }
    std::array<std::size_t, 8> offsets{};
    std::exclusive_scan(counts.begin(), counts.end(), offsets.begin(), c.begin);
    reorder(c, offsets);

    const std::size_t first = tree_.clusters.size();
    int made = 0;
    for (unsigned code = 0; code < 8; ++code) {
      if (counts[code] == 0) continue;
      Cluster child;
      child.begin = offsets[code] - counts[code];
      child.end = offsets[code];
      child.level = c.level + 1;
      if (tree_.options.shrink) {
        child.box = bounding_box(std::span<const Vec3>(system_.positions).subspan(child.begin, child.count()));
      } else {
        child.box = c.box;
        for (int a = 0; a < 3; ++a) {
          if (!cut[a]) continue;
          if (code & (1u << a))
            child.box.lo[a] = mid[a];
          else
            child.box.hi[a] = mid[a];
        }
      }
      child.center = child.box.center();
      child.radius = cluster_radius(child.box);
      tree_.clusters.push_back(child);
      ++made;
    }
    tree_.clusters[index].first_child = first;
    tree_.clusters[index].num_children = made;
    for (int k = 0; k < made; ++k) split(first + static_cast<std::size_t>(k));
  }

 private:
  // Stable counting sort of [begin, end) by octant code; `offsets` ends up
  // holding one-past-the-end of each bucket.
  void reorder(const Cluster& c, std::array<std::size_t, 8>& offsets) {
    const std::size_t m = system_.weight_dim;
    for (std::size_t i = c.begin; i < c.end; ++i) {
      const std::size_t dst = offsets[codes_[i]]++;
      scratch_pos_[dst] = system_.positions[i];
      scratch_perm_[dst] = system_.permutation[i];
      std::copy_n(system_.weights.begin() + static_cast<std::ptrdiff_t>(i * m), m,
                  scratch_w_.begin() + static_cast<std::ptrdiff_t>(dst * m));
    }
    std::copy(scratch_pos_.begin() + static_cast<std::ptrdiff_t>(c.begin),
              scratch_pos_.begin() + static_cast<std::ptrdiff_t>(c.end),
              system_.positions.begin() + static_cast<std::ptrdiff_t>(c.begin));
    std::copy(scratch_perm_.begin() + static_cast<std::ptrdiff_t>(c.begin),
              scratch_perm_.begin() + static_cast<std::ptrdiff_t>(c.end),
              system_.permutation.begin() + static_cast<std::ptrdiff_t>(c.begin));
    std::copy(scratch_w_.begin() + static_cast<std::ptrdiff_t>(c.begin * m),
              scratch_w_.begin() + static_cast<std::ptrdiff_t>(c.end * m),
              system_.weights.begin() + static_cast<std::ptrdiff_t>(c.begin * m));
  }

  ParticleSystem& system_;
  ClusterTree& tree_;
  std::vector<unsigned char> codes_;
  std::vector<Vec3> scratch_pos_;
  std::vector<double> scratch_w_;
  std::vector<std::size_t> scratch_perm_;
};

}  // namespace

ClusterTree build_tree(ParticleSystem& system, const TreeOptions& options) {
  if (system.size() == 0) throw std::invalid_argument("build_tree: empty particle system");
  if (options.max_leaf_size == 0) throw std::invalid_argument("build_tree: max_leaf_size must be >= 1");
  if (system.permutation.size() != system.size()) {
    system.permutation.resize(system.size());
    std::iota(system.permutation.begin(), system.permutation.end(), std::size_t{0});
  }

  ClusterTree tree;
  tree.options = options;
  Cluster root;
  root.box = bounding_box(system.positions);
  root.center = root.box.center();
  root.radius = cluster_radius(root.box);
  root.begin = 0;
  root.end = system.size();
  tree.clusters.push_back(root);

  TreeBuilder builder(system, tree);
  builder.split(0);
  return tree;
}

std::size_t count_moment_storage(const ClusterTree& tree, int degree, std::size_t weight_dim) {
  const auto side = static_cast<std::size_t>(degree) + 1;
  return tree.clusters.size() * side * side * side * weight_dim;
}

}  // namespace kitc
