#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kitc/engine.hpp"
#include "kitc/kernels.hpp"
#include "kitc/report.hpp"
#include "kitc/tree.hpp"

namespace kitc {

/// Swimming microorganisms in a cube: N/2 force dipoles.
struct Example1Config {
  std::size_t N = 10000;
  double L = 10.0;
  double length = 0.02;
  double epsilon = 0.02;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Square array of helical rods standing on the xy-plane.
struct Example2Config {
  int g = 15;    // rods per side
  int M = 150;   // segments per rod
  double spacing = 16.0 / 15.0;
  double epsilon = 0.3;
  std::uint64_t seed = 1;

  std::size_t particle_count() const {
    return static_cast<std::size_t>(g) * static_cast<std::size_t>(g) * static_cast<std::size_t>(M + 1);
  }
  void validate() const;
};

inline constexpr double kRodHeight = 9.0;
inline constexpr double kHelixRadius = 0.3;

/// Organism centres uniform in [0, L]^3, directions uniform on the sphere,
/// particles at centre +/- (length/2)*dir carrying forces +dir and -dir.
/// Organisms may straddle the cube faces.
ParticleSystem gen_example1(const Example1Config& cfg);

/// Rods with base points on a g x g grid of the given spacing centred at the
/// origin; rod point i sits at z = 9i/M on (x0 + 0.3cos2z, y0 + 0.3sin2z, z).
/// Force and torque components are uniform in [-1, 1].
ParticleSystem gen_example2(const Example2Config& cfg);

/// sqrt(sum |ref_i - approx_i|^2 / sum |ref_i|^2) over equally shaped
/// row-major arrays. Throws std::invalid_argument on a shape mismatch or an
/// all-zero reference.
double relative_error(std::span<const double> reference, std::span<const double> approx);

/// Exact outputs used to score treecode runs: either at every particle or at
/// a uniform sample of particles when N exceeds the direct-sum budget.
struct DirectReference {
  EvalResult values;
  std::vector<std::size_t> sample;  // empty means all particles, input order
  double seconds = 0.0;             // extrapolated to the full N when sampled
  bool sampled() const { return !sample.empty(); }
};

struct ReferenceOptions {
  std::size_t budget = 200000;
  std::size_t sample_size = 2000;
  std::uint64_t seed = 1;
};

DirectReference compute_reference(const ParticleSystem& system, const AnyKernel& kernel, int threads,
                                  const ReferenceOptions& options = {});

struct RunResult {
  RunReport report;
  EvalResult values;  // treecode outputs, input order
};

/// Builds the treecode on `system`, evaluates at every particle, scores the
/// outputs against `reference` and fills the timing / count fields.
/// `report_seed` and `example` are only echoed into the report.
RunResult run_treecode(const ParticleSystem& system, const AnyKernel& kernel, const TreecodeParams& params,
                       int threads, const DirectReference& reference, int example = 0,
                       std::uint64_t report_seed = 0);

struct ExperimentSpec {
  int example = 1;
  Example1Config example1;
  Example2Config example2;
  std::string kernel;  // empty selects the example's native kernel
  TreecodeParams params;
  int threads = 0;
  ReferenceOptions reference;
};

/// Generate, build, evaluate, compare and report.
RunResult run_experiment(const ExperimentSpec& spec);

/// The particle system and kernel an experiment spec describes.
ParticleSystem generate(const ExperimentSpec& spec);
AnyKernel experiment_kernel(const ExperimentSpec& spec);

}  // namespace kitc
