#include "kitc/engine.hpp"

#include <string>

namespace kitc {

void TreecodeParams::validate() const {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in (0, 1], got " + std::to_string(theta));
  if (degree < 1 || degree > 20)
    throw std::invalid_argument("degree must lie in [1, 20], got " + std::to_string(degree));
  if (max_leaf_size < 1) throw std::invalid_argument("max leaf size must be >= 1");
}

Treecode::Treecode(ParticleSystem sources, const TreecodeParams& params, int threads)
    : params_(params), sources_(std::move(sources)) {
  params_.validate();
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  tree_ = build_tree(sources_, TreeOptions{params_.max_leaf_size, params_.shrink});
  const auto t1 = clock::now();
  moments_ = compute_all_moments(tree_, sources_, params_.degree, threads);
  const auto t2 = clock::now();
  tree_seconds_ = std::chrono::duration<double>(t1 - t0).count();
  moment_seconds_ = std::chrono::duration<double>(t2 - t1).count();
}

}  // namespace kitc
