#include "kitc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kitc/chebyshev.hpp"
#include "kitc/parallel.hpp"

namespace kitc {

Box interpolation_box(const Box& box) {
  Box out = box;
  for (int a = 0; a < 3; ++a) {
    const double mid = 0.5 * (box.lo[a] + box.hi[a]);
    const double min_width = std::max(1e-12, 1e-12 * std::abs(mid));
    if (box.hi[a] - box.lo[a] < min_width) {
      out.lo[a] = mid - 0.5 * min_width;
      out.hi[a] = mid + 0.5 * min_width;
    }
  }
  return out;
}

ClusterMoments compute_modified_weights(const Box& box, int degree, std::span<const Vec3> positions,
                                        std::span<const double> weights, std::size_t weight_dim) {
  if (weights.size() != positions.size() * weight_dim)
    throw std::invalid_argument("compute_modified_weights: weight array size mismatch");
  const Box ibox = interpolation_box(box);
  const auto side = static_cast<std::size_t>(degree) + 1;
  const auto bary = simple_weights(degree);

  ClusterMoments out;
  for (int a = 0; a < 3; ++a) {
    const ChebyshevGrid1D grid(degree, ibox.lo[a], ibox.hi[a]);
    out.nodes[a].assign(grid.points().begin(), grid.points().end());
  }
  out.weights.assign(side * side * side * weight_dim, 0.0);

  // a[axis][k] = w_k / (y - s_k); one particle at a time.
  std::array<std::vector<double>, 3> a;
  for (auto& row : a) row.resize(side);
  const std::size_t m = weight_dim;

  for (std::size_t j = 0; j < positions.size(); ++j) {
    std::array<double, 3> sum{};
    for (int ax = 0; ax < 3; ++ax) {
      const double y = positions[j][ax];
      const auto& s = out.nodes[ax];
      int flag = -1;
      for (std::size_t k = 0; k < side; ++k) {
        const double diff = y - s[k];
        if (std::abs(diff) <= kNodeTolerance) {
          flag = static_cast<int>(k);
        } else {
          a[ax][k] = bary[k] / diff;
          sum[ax] += a[ax][k];
        }
      }
      if (flag > -1) {
        std::fill(a[ax].begin(), a[ax].end(), 0.0);
        a[ax][static_cast<std::size_t>(flag)] = 1.0;
        sum[ax] = 1.0;
      }
    }
    const double denom = sum[0] * sum[1] * sum[2];
    const double* f = weights.data() + j * m;
    double* dst = out.weights.data();
    for (std::size_t k1 = 0; k1 < side; ++k1) {
      for (std::size_t k2 = 0; k2 < side; ++k2) {
        const double a12 = a[0][k1] * a[1][k2];
        for (std::size_t k3 = 0; k3 < side; ++k3) {
          const double coeff = a12 * a[2][k3] / denom;
          for (std::size_t c = 0; c < m; ++c) dst[c] += coeff * f[c];
          dst += m;
        }
      }
    }
  }
  return out;
}

std::size_t MomentTable::scalar_count() const {
  std::size_t total = 0;
  for (const auto& c : clusters_) total += c.weights.size();
  return total;
}

MomentTable compute_all_moments(const ClusterTree& tree, const ParticleSystem& system, int degree,
                                int threads) {
  if (degree < 1) throw std::invalid_argument("compute_all_moments: degree must be >= 1");
  const std::size_t m = system.weight_dim;
  std::vector<ClusterMoments> result(tree.clusters.size());
  const auto count = static_cast<std::ptrdiff_t>(tree.clusters.size());
  const std::span<const Vec3> pos(system.positions);
  const std::span<const double> w(system.weights);

  const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Cluster& c = tree.clusters[static_cast<std::size_t>(i)];
    result[static_cast<std::size_t>(i)] = compute_modified_weights(
        c.box, degree, pos.subspan(c.begin, c.count()), w.subspan(c.begin * m, c.count() * m), m);
  }
  return MomentTable(degree, m, std::move(result));
}

}  // namespace kitc
