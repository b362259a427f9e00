#pragma once

// Single-threaded reference versions of the parallel drivers in engine.hpp.
// They share no loop machinery with the OpenMP paths and exist so tests and
// the benchmark can check the parallel kernels against a plain serial loop.

#include <span>

#include "kitc/engine.hpp"

namespace kitc::serial {

template <Kernel K>
EvalResult direct_sum(const K& kernel, std::span<const Vec3> targets, const ParticleSystem& sources) {
  constexpr std::size_t m = K::weight_dim;
  constexpr std::size_t p = K::output_dim;
  const bool skip_self = kernel.self_interaction() == SelfInteraction::omit;
  EvalResult out{std::vector<double>(targets.size() * p), p, {}};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    double* dst = out.values.data() + i * p;
    for (std::size_t j = 0; j < sources.size(); ++j) {
      if (skip_self && sources.positions[j] == targets[i]) continue;
      const auto u = kernel.evaluate(targets[i], sources.positions[j],
                                     std::span<const double, m>(sources.weights.data() + j * m, m));
      for (std::size_t c = 0; c < p; ++c) dst[c] += u[c];
    }
  }
  out.stats.direct_interactions = targets.size();
  out.stats.kernel_evaluations = static_cast<std::uint64_t>(targets.size()) * sources.size();
  return out;
}

template <Kernel K>
EvalResult direct_sum(const K& kernel, const ParticleSystem& system) {
  return kitc::serial::direct_sum(kernel, std::span<const Vec3>(system.positions), system);
}

/// Treecode outputs at the sources, original order, one target at a time.
template <Kernel K>
EvalResult evaluate_all(const K& kernel, const Treecode& treecode) {
  constexpr std::size_t p = K::output_dim;
  const auto& src = treecode.sources();
  EvalResult out{std::vector<double>(src.size() * p), p, {}};
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto u = treecode.compute_velocity(kernel, src.positions[i], out.stats);
    std::copy(u.begin(), u.end(), out.values.begin() + static_cast<std::ptrdiff_t>(src.permutation[i] * p));
  }
  return out;
}

}  // namespace kitc::serial
