// Acceptance suite. Runs every criterion (or one, with --criterion K) and
// prints a PASS/FAIL line per criterion. Exit status is non-zero if any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "kitc/chebyshev.hpp"
#include "kitc/engine.hpp"
#include "kitc/harness.hpp"
#include "kitc/kernels.hpp"
#include "kitc/moments.hpp"
#include "kitc/tree.hpp"
#include "oracles.hpp"

namespace {

using namespace kitc;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds(auto&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Example 1, N = 10K, eps = 0.02, shared by criteria 2-4.
struct Example1Instance {
  ParticleSystem system;
  Stokeslet kernel;
  EvalResult direct;
};

const Example1Instance& example1_10k() {
  static const Example1Instance inst = [] {
    Example1Config cfg;
    cfg.N = 10000;
    Example1Instance out{gen_example1(cfg), Stokeslet{cfg.epsilon}, {}};
    out.direct = direct_sum(out.kernel, out.system, 1);
    return out;
  }();
  return inst;
}

double treecode_error(const Example1Instance& inst, double theta, int degree, std::size_t n0) {
  const Treecode tc(inst.system, {theta, degree, n0, false}, 1);
  return relative_error(inst.direct.values, tc.evaluate_all(inst.kernel, 1).values);
}

Verdict c1_oracle_equivalence() {
  bool pass = true;
  std::string detail;
  for (std::size_t n : {100, 1000, 5000}) {
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<Vec3> pos(n);
    std::vector<double> w(3 * n);
    for (auto& p : pos) p = {u(rng), u(rng), u(rng)};
    for (auto& v : w) v = 2 * u(rng) - 1;
    const ParticleSystem sys(pos, w, 3);
    const Stokeslet k{0.02};
    const Treecode tc(sys, {1e-12, 7, 50, false}, 1);
    const double e = relative_error(direct_sum(k, sys, 1).values, tc.evaluate_all(k, 1).values);
    pass = pass && e <= 1e-12;
    detail += fmt("N=%zu E=%.2e  ", n, e);
  }
  return {pass, detail + "(tol 1e-12)"};
}

Verdict c2_accuracy_anchor() {
  const auto& inst = example1_10k();
  double e = 0.0;
  const double t = seconds([&] { e = treecode_error(inst, 0.7, 7, 2000); });
  return {e <= 1e-5 && t < 10.0, fmt("E=%.3e (tol 1e-5), treecode %.2f s serial (limit 10 s)", e, t)};
}

Verdict c3_degree_convergence() {
  const auto& inst = example1_10k();
  std::vector<double> errs;
  std::string detail;
  for (int n : {1, 3, 5, 7}) {
    errs.push_back(treecode_error(inst, 0.7, n, 2000));
    detail += fmt("E(n=%d)=%.2e  ", n, errs.back());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < errs.size(); ++i) decreasing = decreasing && errs[i] < errs[i - 1];
  const double ratio = errs.front() / errs.back();
  return {decreasing && ratio >= 100.0, detail + fmt("E1/E7=%.1f (need >= 100, strictly decreasing)", ratio)};
}

Verdict c4_mac_trend() {
  const auto& inst = example1_10k();
  const double e5 = treecode_error(inst, 0.5, 7, 2000);
  const double e8 = treecode_error(inst, 0.8, 7, 2000);
  return {e5 <= e8, fmt("E(0.5)=%.3e  E(0.8)=%.3e", e5, e8)};
}

struct ScalingRun {
  std::size_t N;
  std::uint64_t evals;
  double total;
  double moments;
};

ScalingRun scaling_run(std::size_t n) {
  Example1Config cfg;
  cfg.N = n;
  const auto sys = gen_example1(cfg);
  const Stokeslet k{cfg.epsilon};
  ScalingRun r{n, 0, 0.0, 0.0};
  r.total = seconds([&] {
    const Treecode tc(sys, {0.7, 7, 2000, false}, 1);
    r.evals = tc.evaluate_all(k, 1).stats.kernel_evaluations;
    r.moments = tc.moment_seconds();
  });
  return r;
}

Verdict c5_complexity() {
  std::vector<ScalingRun> runs;
  for (std::size_t n : {25000, 100000, 400000}) runs.push_back(scaling_run(n));
  bool pass = true;
  std::string detail;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const double count_ratio = double(runs[i].evals) / double(runs[i - 1].evals);
    const double time_ratio = runs[i].total / runs[i - 1].total;
    // direct_sum records targets * sources evaluations
    const double direct_ratio = (double(runs[i].N) * double(runs[i].N)) / (double(runs[i - 1].N) * double(runs[i - 1].N));
    pass = pass && count_ratio <= 5.5 && time_ratio <= 8.0 && direct_ratio == 16.0;
    detail += fmt("%zuK->%zuK evals x%.2f time x%.2f direct x%.0f  ", runs[i - 1].N / 1000, runs[i].N / 1000,
                  count_ratio, time_ratio, direct_ratio);
  }
  return {pass, detail + "(limits 5.5 / 8 / 16)"};
}

Verdict c6_speedup() {
  Example1Config cfg;
  cfg.N = 80000;
  const auto sys = gen_example1(cfg);
  const Stokeslet k{cfg.epsilon};
  EvalResult d, t;
  const double td = seconds([&] { d = direct_sum(k, sys, 1); });
  const double tt = seconds([&] {
    const Treecode tc(sys, {0.7, 7, 2000, false}, 1);
    t = tc.evaluate_all(k, 1);
  });
  const double e = relative_error(d.values, t.values);
  return {td / tt >= 2.0, fmt("direct %.2f s, treecode %.2f s, speedup %.2f (need >= 2), E=%.2e", td, tt, td / tt, e)};
}

Verdict c7_eps_sweep() {
  bool pass = true;
  std::string detail;
  for (double eps : {0.005, 0.01, 0.02, 0.04, 0.08}) {
    Example1Config cfg;
    cfg.N = 10000;
    cfg.epsilon = eps;
    cfg.length = eps;
    const auto sys = gen_example1(cfg);
    const Stokeslet k{eps};
    const Treecode tc(sys, {0.7, 7, 2000, false}, 1);
    const double e = relative_error(direct_sum(k, sys, 1).values, tc.evaluate_all(k, 1).values);
    pass = pass && e <= 1e-4;
    detail += fmt("eps=%g E=%.2e  ", eps, e);
  }
  return {pass, detail + "(tol 1e-4)"};
}

Verdict c8_example2() {
  Example2Config cfg;  // g = 15, M = 150, eps = 0.3
  const auto sys = gen_example2(cfg);
  const StokesletRotlet k{cfg.epsilon};
  const Treecode tc(sys, {0.7, 7, 1000, false}, 1);
  const auto t = tc.evaluate_all(k, 1);
  const auto d = direct_sum(k, sys, 1);
  const double e = relative_error(d.values, t.values);
  return {e <= 1e-4, fmt("N=%zu E=%.3e (tol 1e-4), root children %d", sys.size(), e, tc.tree().root().num_children)};
}

Verdict c9_thread_scaling() {
  Example1Config cfg;
  cfg.N = 100000;
  const auto sys = gen_example1(cfg);
  const Stokeslet k{cfg.epsilon};
  EvalResult r1, r8;
  const double t1 = seconds([&] {
    const Treecode tc(sys, {0.7, 7, 2000, false}, 1);
    r1 = tc.evaluate_all(k, 1);
  });
  const double t8 = seconds([&] {
    const Treecode tc(sys, {0.7, 7, 2000, false}, 8);
    r8 = tc.evaluate_all(k, 8);
  });
  const double efficiency = t1 / (8.0 * t8);
  const bool identical = r1.values == r8.values;
  return {efficiency >= 0.5 && identical,
          fmt("t1=%.2f s t8=%.2f s efficiency %.1f%% (need >= 50%%), bitwise identical: %s, hardware threads %u", t1,
              t8, 100.0 * efficiency, identical ? "yes" : "no", std::thread::hardware_concurrency())};
}

Verdict c10_moment_cost() {
  const auto r = scaling_run(100000);
  const double frac = r.moments / r.total;
  return {frac <= 0.10, fmt("moments %.3f s of %.2f s total = %.1f%% (limit 10%%)", r.moments, r.total, 100 * frac)};
}

Verdict c11_properties() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  int failures = 0;
  auto expect = [&](bool ok) { failures += ok ? 0 : 1; };

  // chebyshev
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(u(rng) * 20);
    const double a = 10 * u(rng) - 5;
    const double b = a + 0.01 + 5 * u(rng);
    const ChebyshevGrid1D grid(n, a, b);
    for (int j = 0; j <= n; ++j) {
      const auto e = grid.eval_basis(grid.points()[j]);
      for (int k = 0; k <= n; ++k) expect(e[k] == (k == j ? 1.0 : 0.0));
    }
    for (int s = 0; s < 10; ++s) {
      const double t = a + (b - a) * u(rng);
      const auto l = grid.eval_basis(t);
      double sum = 0, lin = 0;
      for (int k = 0; k <= n; ++k) {
        sum += l[k];
        lin += (grid.points()[k] - a) / (b - a) * l[k];
      }
      expect(std::abs(sum - 1.0) <= 1e-14);
      expect(std::abs(lin - (t - a) / (b - a)) <= 1e-12);
    }
    const double t = (u(rng) * 2046 - 1023) / 1024.0;
    const auto ref = ChebyshevGrid1D(n, -1, 1).eval_basis(t);
    const auto mapped = ChebyshevGrid1D(n, 2, 6).eval_basis(4 + 2 * t);
    for (int k = 0; k <= n; ++k) expect(std::abs(ref[k] - mapped[k]) <= 1e-14);
  }

  // kernels
  const auto s0 = mrs_scalars(0.0, 1.0);
  const double c = 8 * std::numbers::pi;
  expect(std::abs(s0.h1 - 2 / c) <= 1e-15 && std::abs(s0.h2 - 1 / c) <= 1e-15 && std::abs(s0.q - 5 / c) <= 1e-15 &&
         std::abs(s0.d1 - 10 / c) <= 1e-15 && std::abs(s0.d2 - 21 / c) <= 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    const Vec3 y{u(rng), u(rng), u(rng)};
    std::array<double, 6> f{}, g{}, h{};
    const double al = u(rng), be = u(rng);
    for (int i = 0; i < 6; ++i) {
      f[i] = u(rng) - 0.5;
      g[i] = u(rng) - 0.5;
      h[i] = al * f[i] + be * g[i];
    }
    const StokesletRotlet k{0.1};
    const auto lf = k.evaluate(x, y, f), lg = k.evaluate(x, y, g), lh = k.evaluate(x, y, h);
    for (int i = 0; i < 6; ++i)
      expect(std::abs(lh[i] - al * lf[i] - be * lg[i]) <= 1e-13 * std::max({std::abs(al * lf[i]), std::abs(be * lg[i]), 1e-300}));
    const std::array<double, 3> f3{f[0], f[1], f[2]};
    expect(stokeslet_eval(x, y, f3, 0.1) == stokeslet_eval(y, x, f3, 0.1));
  }

  // tree
  {
    std::vector<Vec3> pos(4000);
    std::vector<double> w(4000);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      pos[i] = {8 * u(rng), 8 * u(rng), 2 * u(rng)};
      w[i] = double(i);
    }
    ParticleSystem sys(pos, w, 1);
    const auto tree = build_tree(sys, {64, false});
    expect(tree.root().num_children == 4);
    std::vector<int> hits(sys.size(), 0);
    for (const auto& cl : tree.clusters) {
      for (std::size_t i = cl.begin; i < cl.end; ++i) expect(cl.box.contains(sys.positions[i], 1e-12));
      if (cl.is_leaf()) {
        expect(cl.count() <= 64);
        for (std::size_t i = cl.begin; i < cl.end; ++i) ++hits[i];
      }
    }
    for (std::size_t i = 0; i < sys.size(); ++i) expect(hits[i] == 1 && sys.weights[i] == double(sys.permutation[i]));
  }

  // moments
  for (int trial = 0; trial < 5; ++trial) {
    const Box box{{u(rng), u(rng), u(rng)}, {1.5 + u(rng), 1.5 + u(rng), 1.5 + u(rng)}};
    std::vector<Vec3> pos(60);
    std::vector<double> w(60);
    double total = 0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      for (int a = 0; a < 3; ++a) pos[j][a] = box.lo[a] + (box.hi[a] - box.lo[a]) * u(rng);
      w[j] = u(rng) - 0.5;
      total += w[j];
    }
    const int n = 6;
    const auto mw = compute_modified_weights(box, n, pos, w, 1);
    double msum = 0;
    for (double v : mw.weights) msum += v;
    expect(std::abs(msum - total) <= 1e-13 * std::max(1.0, std::abs(total)) * 10);
    std::vector<long double> want(mw.weights.size(), 0.0L);
    for (std::size_t j = 0; j < pos.size(); ++j) {
      const auto l1 = oracle::lagrange_product(mw.nodes[0], pos[j].x);
      const auto l2 = oracle::lagrange_product(mw.nodes[1], pos[j].y);
      const auto l3 = oracle::lagrange_product(mw.nodes[2], pos[j].z);
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
          for (int d = 0; d <= n; ++d) want[(a * (n + 1) + b) * (n + 1) + d] += l1[a] * l2[b] * l3[d] * w[j];
    }
    long double scale = 0;
    for (auto v : want) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < want.size(); ++i) expect(std::abs(mw.weights[i] - want[i]) <= 1e-12 * scale);
  }
  return {failures == 0, fmt("%d property violations", failures)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence (theta = 1e-12)", c1_oracle_equivalence},
      {2, "example 1 accuracy anchor, N = 10K", c2_accuracy_anchor},
      {3, "degree convergence", c3_degree_convergence},
      {4, "MAC accuracy trend", c4_mac_trend},
      {5, "O(N log N) complexity", c5_complexity},
      {6, "speedup over direct at N = 80K", c6_speedup},
      {7, "eps sweep robustness", c7_eps_sweep},
      {8, "example 2 accuracy anchor", c8_example2},
      {9, "thread scaling at 8 threads", c9_thread_scaling},
      {10, "moment phase cost", c10_moment_cost},
      {11, "property suites", c11_properties},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Verdict v{false, ""};
    const double t = seconds([&] { v = c.run(); });
    std::printf("[%s] C%-2d %-38s %s  [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), t);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
