// Serial reference vs OpenMP kernels on an example-1 instance.
//
//   kitc_bench [N] [threads] [repeat]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "kitc/engine.hpp"
#include "kitc/harness.hpp"
#include "kitc/reference.hpp"

namespace {

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  const int threads = argc > 2 ? std::atoi(argv[2]) : kitc::resolve_threads(0);
  const int repeat = argc > 3 ? std::atoi(argv[3]) : 3;

  kitc::Example1Config cfg;
  cfg.N = n - n % 2;
  const auto system = kitc::gen_example1(cfg);
  const kitc::Stokeslet kernel{cfg.epsilon};
  const kitc::Treecode tc(system, kitc::TreecodeParams{});

  kitc::EvalResult a, b;
  const double direct_serial = best_of(repeat, [&] { a = kitc::serial::direct_sum(kernel, system); });
  const double direct_par = best_of(repeat, [&] { b = kitc::direct_sum(kernel, system, threads); });
  const bool direct_same = a.values == b.values;

  const double tree_serial = best_of(repeat, [&] { a = kitc::serial::evaluate_all(kernel, tc); });
  const double tree_par = best_of(repeat, [&] { b = tc.evaluate_all(kernel, threads); });
  const bool tree_same = a.values == b.values;

  std::printf("N %zu  threads %d  repeat %d\n", system.size(), threads, repeat);
  std::printf("%-10s %12s %12s %9s %s\n", "kernel", "serial (s)", "omp (s)", "speedup", "bitwise");
  std::printf("%-10s %12.4f %12.4f %9.2f %s\n", "direct", direct_serial, direct_par, direct_serial / direct_par,
              direct_same ? "yes" : "NO");
  std::printf("%-10s %12.4f %12.4f %9.2f %s\n", "treecode", tree_serial, tree_par, tree_serial / tree_par,
              tree_same ? "yes" : "NO");
  std::printf("treecode build: tree %.4f s, moments %.4f s\n", tc.tree_seconds(), tc.moment_seconds());
  return direct_same && tree_same ? 0 : 1;
}
