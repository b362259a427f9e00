#include "kitc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kitc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void Example1Config::validate() const {
  if (N == 0 || N % 2 != 0) throw std::invalid_argument("example 1 needs an even, positive N");
  if (!(L > 0.0)) throw std::invalid_argument("example 1 cube side must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("example 1 organism length must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
}

void Example2Config::validate() const {
  if (g < 1) throw std::invalid_argument("example 2 needs g >= 1");
  if (M < 1) throw std::invalid_argument("example 2 needs M >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("example 2 spacing must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
}

ParticleSystem gen_example1(const Example1Config& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t organisms = cfg.N / 2;
  std::vector<Vec3> pos;
  std::vector<double> w;
  pos.reserve(cfg.N);
  w.reserve(3 * cfg.N);
  for (std::size_t k = 0; k < organisms; ++k) {
    const Vec3 c{cfg.L * unit(rng), cfg.L * unit(rng), cfg.L * unit(rng)};
    const double cz = 2.0 * unit(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const Vec3 dir{sz * std::cos(phi), sz * std::sin(phi), cz};
    const double half = 0.5 * cfg.length;
    pos.push_back(c + half * dir);
    pos.push_back(c - half * dir);
    w.insert(w.end(), {dir.x, dir.y, dir.z, -dir.x, -dir.y, -dir.z});
  }
  return ParticleSystem(std::move(pos), std::move(w), 3);
}

ParticleSystem gen_example2(const Example2Config& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const std::size_t count = cfg.particle_count();
  std::vector<Vec3> pos;
  pos.reserve(count);
  const double offset = 0.5 * (cfg.g - 1);
  for (int ix = 0; ix < cfg.g; ++ix) {
    for (int iy = 0; iy < cfg.g; ++iy) {
      const double x0 = (ix - offset) * cfg.spacing;
      const double y0 = (iy - offset) * cfg.spacing;
      for (int i = 0; i <= cfg.M; ++i) {
        const double z = kRodHeight * i / cfg.M;
        pos.push_back({x0 + kHelixRadius * std::cos(2.0 * z), y0 + kHelixRadius * std::sin(2.0 * z), z});
      }
    }
  }
  std::vector<double> w(6 * count);
  for (auto& v : w) v = sym(rng);
  return ParticleSystem(std::move(pos), std::move(w), 6);
}

double relative_error(std::span<const double> reference, std::span<const double> approx) {
  if (reference.size() != approx.size()) throw std::invalid_argument("relative_error: shape mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - approx[i];
    num += d * d;
    den += reference[i] * reference[i];
  }
  if (den == 0.0) throw std::invalid_argument("relative_error: reference is identically zero");
  return std::sqrt(num / den);
}

DirectReference compute_reference(const ParticleSystem& system, const AnyKernel& kernel, int threads,
                                   const ReferenceOptions& options) {
  DirectReference ref;
  const std::size_t n = system.size();
  std::vector<Vec3> targets;
  if (n > options.budget && options.sample_size < n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    std::sample(all.begin(), all.end(), std::back_inserter(ref.sample), options.sample_size, rng);
    targets.reserve(ref.sample.size());
    for (auto i : ref.sample) targets.push_back(system.positions[i]);
  }
  const auto start = std::chrono::steady_clock::now();
  std::visit(
      [&](const auto& k) {
        ref.values = ref.sampled() ? direct_sum(k, std::span<const Vec3>(targets), system, threads)
                                   : direct_sum(k, system, threads);
      },
      kernel);
  ref.seconds = seconds_since(start);
  if (ref.sampled()) ref.seconds *= static_cast<double>(n) / static_cast<double>(ref.sample.size());
  return ref;
}

RunResult run_treecode(const ParticleSystem& system, const AnyKernel& kernel, const TreecodeParams& params,
                       int threads, const DirectReference& reference, int example, std::uint64_t report_seed) {
  params.validate();
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  Treecode treecode(system, params, threads);
  std::visit([&](const auto& k) { result.values = treecode.evaluate_all(k, threads); }, kernel);
  const double total = seconds_since(start);

  RunReport& r = result.report;
  r.example = example;
  r.kernel = kernel_name(kernel);
  r.N = system.size();
  r.theta = params.theta;
  r.n = params.degree;
  r.N0 = params.max_leaf_size;
  r.eps = std::visit(
      [](const auto& k) {
        if constexpr (requires { k.epsilon; })
          return k.epsilon;
        else
          return 0.0;
      },
      kernel);
  r.seed = report_seed;
  r.threads = resolve_threads(threads);
  r.t_tree_s = treecode.tree_seconds();
  r.t_moments_s = treecode.moment_seconds();
  r.t_treecode_s = total;
  r.t_direct_s = reference.seconds;
  r.speedup = total > 0.0 ? reference.seconds / total : 0.0;
  r.kernel_evals = result.values.stats.kernel_evaluations;
  r.moment_scalars = treecode.moments().scalar_count();
  r.sampled = reference.sampled();

  if (reference.sampled()) {
    const std::size_t p = result.values.output_dim;
    std::vector<double> picked;
    picked.reserve(reference.sample.size() * p);
    for (auto i : reference.sample) {
      const auto row = result.values.row(i);
      picked.insert(picked.end(), row.begin(), row.end());
    }
    r.E = relative_error(reference.values.values, picked);
  } else {
    r.E = relative_error(reference.values.values, result.values.values);
  }
  return result;
}

ParticleSystem generate(const ExperimentSpec& spec) {
  switch (spec.example) {
    case 1: return gen_example1(spec.example1);
    case 2: return gen_example2(spec.example2);
    default: throw std::invalid_argument("example must be 1 or 2");
  }
}

AnyKernel experiment_kernel(const ExperimentSpec& spec) {
  const double eps = spec.example == 2 ? spec.example2.epsilon : spec.example1.epsilon;
  std::string name = spec.kernel;
  if (name.empty()) name = spec.example == 2 ? "stokeslet-rotlet" : "stokeslet";
  return make_kernel(name, eps);
}

RunResult run_experiment(const ExperimentSpec& spec) {
  const ParticleSystem system = generate(spec);
  const AnyKernel kernel = experiment_kernel(spec);
  if (weight_dim(kernel) != system.weight_dim)
    throw std::invalid_argument("kernel '" + kernel_name(kernel) + "' does not match the example's weights");
  const std::uint64_t seed = spec.example == 2 ? spec.example2.seed : spec.example1.seed;
  ReferenceOptions ropt = spec.reference;
  ropt.seed = seed;
  const DirectReference ref = compute_reference(system, kernel, spec.threads, ropt);
  return run_treecode(system, kernel, spec.params, spec.threads, ref, spec.example, seed);
}

}  // namespace kitc
