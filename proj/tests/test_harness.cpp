#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kitc/harness.hpp"
#include "kitc/particle_io.hpp"
#include "kitc/report.hpp"

#include <sstream>

using kitc::Vec3;

TEST_CASE("example 1 generator") {
  kitc::Example1Config cfg;
  cfg.N = 2000;
  const auto sys = kitc::gen_example1(cfg);
  REQUIRE(sys.size() == 2000);
  CHECK(sys.weight_dim == 3);
  std::array<double, 3> total{};
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (int c = 0; c < 3; ++c) total[c] += sys.weight(i)[c];
  // forces cancel pairwise, so the running sum returns to 0 after each pair
  CHECK(total == std::array<double, 3>{0, 0, 0});
  for (const auto& p : sys.positions)
    for (int a = 0; a < 3; ++a) {
      CHECK(p[a] >= -cfg.length / 2);
      CHECK(p[a] <= cfg.L + cfg.length / 2);
    }
  for (std::size_t k = 0; k < sys.size(); k += 2) {
    CHECK(kitc::norm(sys.positions[k] - sys.positions[k + 1]) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(kitc::norm({sys.weight(k)[0], sys.weight(k)[1], sys.weight(k)[2]}) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(kitc::gen_example1({.N = 11}), std::invalid_argument);
  CHECK_THROWS_AS(kitc::gen_example1({.N = 10, .L = 10, .length = 0}), std::invalid_argument);
}

TEST_CASE("example 2 generator") {
  kitc::Example2Config cfg;
  cfg.g = 4;
  cfg.M = 25;
  const auto small = kitc::gen_example2(cfg);
  CHECK(small.size() == 416);
  CHECK(small.weight_dim == 6);

  cfg.g = 15;
  cfg.M = 150;
  const auto sys = kitc::gen_example2(cfg);
  CHECK(sys.size() == 33975);
  const double edge = 7.0 * 16.0 / 15.0;
  // base point of the first rod and its z = 0 sample
  CHECK(sys.positions[0].x == doctest::Approx(-edge + 0.3));
  CHECK(sys.positions[0].y == doctest::Approx(-edge));
  CHECK(sys.positions[0].z == 0.0);
  CHECK(edge == doctest::Approx(7.4667).epsilon(1e-4));
  // grid cells of width h around the base points tile [-8, 8]^2
  CHECK(edge + 8.0 / 15.0 == doctest::Approx(8.0));
  double zmax = 0;
  for (const auto& p : sys.positions) zmax = std::max(zmax, p.z);
  CHECK(zmax == doctest::Approx(9.0));
  for (double w : sys.weights) {
    CHECK(w >= -1.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("generators are seeded and deterministic") {
  kitc::Example1Config a;
  a.N = 1000;
  CHECK(kitc::gen_example1(a).positions == kitc::gen_example1(a).positions);
  kitc::Example1Config b = a;
  b.seed = 2;
  CHECK_FALSE(kitc::gen_example1(a).positions == kitc::gen_example1(b).positions);
}

TEST_CASE("relative error") {
  const std::vector<double> ref{1, 0, 0};
  CHECK(kitc::relative_error(ref, ref) == 0.0);
  CHECK(kitc::relative_error(ref, std::vector<double>{0, 0, 0}) == 1.0);
  CHECK(kitc::relative_error(std::vector<double>{3, 4}, std::vector<double>{3, 0}) == doctest::Approx(0.8));
  CHECK_THROWS_AS(kitc::relative_error(std::vector<double>{0, 0}, std::vector<double>{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(kitc::relative_error(ref, std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("run experiment: full and sampled error agree") {
  kitc::ExperimentSpec spec;
  spec.example1.N = 10000;
  spec.params = {0.7, 7, 2000, false};
  spec.threads = 1;
  const auto full = kitc::run_experiment(spec);
  CHECK_FALSE(full.report.sampled);
  CHECK(full.report.E <= 1e-5);
  CHECK(full.report.N == 10000);
  CHECK(full.report.kernel == "stokeslet");
  CHECK(full.report.moment_scalars == 13824);

  spec.reference.budget = 5000;
  const auto sampled = kitc::run_experiment(spec);
  CHECK(sampled.report.sampled);
  CHECK(sampled.report.E <= 3 * full.report.E);
  CHECK(sampled.report.E >= full.report.E / 3);
  CHECK(sampled.values.values == full.values.values);

  spec.params.theta = 1e-12;
  spec.reference.budget = 200000;
  CHECK(kitc::run_experiment(spec).report.E <= 1e-12);

  spec.kernel = "coulomb";
  CHECK_THROWS_AS(kitc::run_experiment(spec), std::invalid_argument);
}

TEST_CASE("report round trips") {
  kitc::RunReport r;
  r.example = 2;
  r.kernel = "stokeslet-rotlet";
  r.N = 33975;
  r.theta = 0.7;
  r.n = 7;
  r.N0 = 1000;
  r.eps = 0.3;
  r.seed = 12345678901234ULL;
  r.threads = 4;
  r.E = 1.2345678901234567e-6;
  r.t_tree_s = 0.1 / 3;
  r.t_moments_s = 2.0 / 7;
  r.t_treecode_s = 3.14159;
  r.t_direct_s = 1e-300;
  r.speedup = 0.1;
  r.kernel_evals = 1ULL << 40;
  r.moment_scalars = 99;
  r.sampled = true;
  CHECK(kitc::from_json(kitc::to_json(r)) == r);
  CHECK(kitc::from_csv_row(kitc::to_csv_row(r)) == r);
  CHECK(kitc::csv_header() ==
        "example,kernel,N,theta,n,N0,eps,seed,threads,E,t_tree_s,t_moments_s,t_treecode_s,t_direct_s,speedup,"
        "kernel_evals,moment_scalars,sampled");
  CHECK_THROWS_AS(kitc::from_csv_row("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(kitc::from_json("{\"E\": 1}"), std::invalid_argument);
}

TEST_CASE("particle and value files") {
  kitc::Example2Config cfg;
  cfg.g = 2;
  cfg.M = 3;
  const auto sys = kitc::gen_example2(cfg);
  std::stringstream ss;
  kitc::write_particles(ss, sys);
  const auto back = kitc::read_particles(ss);
  CHECK(back.positions == sys.positions);
  CHECK(back.weights == sys.weights);
  CHECK(back.weight_dim == 6);

  std::stringstream bad("3 1\n0 0 0 1\n1 1 1\n");
  CHECK_THROWS_AS(kitc::read_particles(bad), std::runtime_error);
  std::stringstream nohdr("hello");
  CHECK_THROWS_AS(kitc::read_particles(nohdr), std::runtime_error);

  kitc::EvalResult v{{1.5, -2.0, 1e-20, 3.0}, 2, {}};
  std::stringstream vs;
  kitc::write_values(vs, v);
  const auto vb = kitc::read_values(vs);
  CHECK(vb.values == v.values);
  CHECK(vb.output_dim == 2);
}
