#include "kitc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "kitc/harness.hpp"
#include "kitc/particle_io.hpp"

namespace kitc::cli {

namespace {

// Bad user-supplied values; mapped to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  int example = 1;
  std::string input;
  std::string kernel;
  std::size_t N = 10000;
  int g = 15;
  int M = 150;
  std::optional<double> eps;
  double length = 0.02;
  std::uint64_t seed = 1;
  int threads = 0;
  double theta = 0.7;
  int degree = 7;
  std::optional<std::size_t> N0;
  bool shrink = false;
  std::size_t direct_budget = 200000;
  std::string format = "csv";
  std::string output;
  std::string velocities;
  std::string theta_range = "0.4:0.8:0.1";
  std::string degree_range = "1:10";
  std::string reference_file;
  std::string approx_file;
};

void add_instance_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--example", o.example, "1: organisms in a cube, 2: helical rods")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--N", o.N, "particle count (example 1)");
  cmd->add_option("--g", o.g, "rods per side (example 2)");
  cmd->add_option("--M", o.M, "segments per rod (example 2)");
  cmd->add_option("--eps", o.eps, "regularization parameter (default 0.02 / 0.3)");
  cmd->add_option("--length", o.length, "organism length (example 1)");
  cmd->add_option("--seed", o.seed, "random seed");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "particle file to read instead of generating an example");
  cmd->add_option("--kernel", o.kernel, "stokeslet | stokeslet-rotlet | coulomb");
  cmd->add_option("--N0", o.N0, "maximum leaf size (default 2000 / 1000)");
  cmd->add_flag("--shrink", o.shrink, "shrink child boxes to their particles");
  cmd->add_option("--threads", o.threads, "thread count (0 = OpenMP default)")->envname("KITC_THREADS");
  cmd->add_option("--direct-budget", o.direct_budget, "largest N scored against a full direct sum");
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", o.output, "output file (default stdout)");
}

double default_eps(const Options& o) { return o.example == 2 ? 0.3 : 0.02; }

void validate(const TreecodeParams& p, double eps) {
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!(eps >= 0.0)) throw UsageError("eps must be >= 0");
}

ExperimentSpec make_spec(const Options& o) {
  ExperimentSpec spec;
  spec.example = o.example;
  const double eps = o.eps.value_or(default_eps(o));
  spec.example1 = {o.N, 10.0, o.length, eps, o.seed};
  spec.example2.g = o.g;
  spec.example2.M = o.M;
  spec.example2.epsilon = eps;
  spec.example2.seed = o.seed;
  spec.kernel = o.kernel;
  spec.threads = o.threads;
  spec.params.theta = o.theta;
  spec.params.degree = o.degree;
  spec.params.max_leaf_size = o.N0.value_or(o.example == 2 ? 1000 : 2000);
  spec.params.shrink = o.shrink;
  spec.reference.budget = o.direct_budget;
  spec.reference.seed = o.seed;
  try {
    if (o.example == 1)
      spec.example1.validate();
    else
      spec.example2.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

// Writes to the named file, or to `fallback` when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      os_ = file_.get();
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

struct Instance {
  ParticleSystem system;
  AnyKernel kernel;
  int example = 0;
};

Instance load_instance(const ExperimentSpec& spec, const Options& o) {
  Instance inst{ParticleSystem{}, Coulomb{}, spec.example};
  const double eps = o.eps.value_or(default_eps(o));
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw std::runtime_error("cannot open '" + o.input + "'");
    inst.system = read_particles(in);
    inst.example = 0;
    std::string name = o.kernel;
    if (name.empty()) name = inst.system.weight_dim == 6 ? "stokeslet-rotlet" : inst.system.weight_dim == 1 ? "coulomb" : "stokeslet";
    inst.kernel = make_kernel(name, eps);
  } else {
    inst.system = generate(spec);
    try {
      inst.kernel = experiment_kernel(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (weight_dim(inst.kernel) != inst.system.weight_dim)
    throw UsageError("kernel '" + kernel_name(inst.kernel) + "' expects " + std::to_string(weight_dim(inst.kernel)) +
                     " weights per particle, instance has " + std::to_string(inst.system.weight_dim));
  return inst;
}

void emit(std::ostream& os, const std::vector<RunReport>& reports, const std::string& format) {
  if (format == "json") {
    if (reports.size() == 1)
      os << to_json(reports.front()) << '\n';
    else
      os << to_json(reports) << '\n';
    return;
  }
  os << csv_header() << '\n';
  for (const auto& r : reports) os << to_csv_row(r) << '\n';
}

int cmd_generate(const Options& o, std::ostream& out) {
  const ExperimentSpec spec = make_spec(o);
  const ParticleSystem system = generate(spec);
  Sink sink(o.output, out);
  write_particles(sink.get(), system);
  return 0;
}

int cmd_run(const Options& o, std::ostream& out) {
  const ExperimentSpec spec = make_spec(o);
  validate(spec.params, o.eps.value_or(default_eps(o)));
  const Instance inst = load_instance(spec, o);
  ReferenceOptions ropt = spec.reference;
  const DirectReference ref = compute_reference(inst.system, inst.kernel, o.threads, ropt);
  RunResult res = run_treecode(inst.system, inst.kernel, spec.params, o.threads, ref, inst.example, o.seed);
  if (!o.velocities.empty()) {
    std::ofstream vf(o.velocities);
    if (!vf) throw std::runtime_error("cannot open '" + o.velocities + "' for writing");
    write_values(vf, res.values);
  }
  Sink sink(o.output, out);
  emit(sink.get(), {res.report}, o.format);
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  std::vector<double> thetas;
  std::vector<double> degrees;
  try {
    thetas = parse_range(o.theta_range);
    degrees = parse_range(o.degree_range);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ExperimentSpec spec = make_spec(o);
  const double eps = o.eps.value_or(default_eps(o));
  for (double t : thetas) {
    for (double d : degrees) {
      TreecodeParams p = spec.params;
      p.theta = t;
      if (d != std::round(d)) throw UsageError("degrees must be integers");
      p.degree = static_cast<int>(d);
      validate(p, eps);
    }
  }
  const Instance inst = load_instance(spec, o);
  const DirectReference ref = compute_reference(inst.system, inst.kernel, o.threads, spec.reference);
  std::vector<RunReport> reports;
  for (double t : thetas) {
    for (double d : degrees) {
      TreecodeParams p = spec.params;
      p.theta = t;
      p.degree = static_cast<int>(d);
      reports.push_back(run_treecode(inst.system, inst.kernel, p, o.threads, ref, inst.example, o.seed).report);
    }
  }
  Sink sink(o.output, out);
  emit(sink.get(), reports, o.format);
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  std::ifstream rf(o.reference_file);
  if (!rf) throw std::runtime_error("cannot open '" + o.reference_file + "'");
  std::ifstream af(o.approx_file);
  if (!af) throw std::runtime_error("cannot open '" + o.approx_file + "'");
  const EvalResult ref = read_values(rf);
  const EvalResult approx = read_values(af);
  if (ref.output_dim != approx.output_dim || ref.size() != approx.size())
    throw std::runtime_error("value files have different shapes");
  const double e = relative_error(ref.values, approx.values);
  Sink sink(o.output, out);
  auto& os = sink.get();
  os.precision(17);
  if (o.format == "json")
    os << "{\"N\": " << ref.size() << ", \"E\": " << e << "}\n";
  else
    os << "N,E\n" << ref.size() << ',' << e << '\n';
  return 0;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad number '" + s + "' in range '" + text + "'");
    }
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "' in range '" + text + "'");
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
    return parts;
  };
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("range must be a:b or a:b:step");
    const double a = num(parts[0]);
    const double b = num(parts[1]);
    const double step = parts.size() == 3 ? num(parts[2]) : 1.0;
    if (!(step > 0.0) || b < a) throw std::invalid_argument("range needs a <= b and step > 0");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(num(p));
  }
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel-independent treecode: fast summation of regularized Stokeslet sums"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "write an example particle system");
  add_instance_flags(gen, o);
  gen->add_option("--output,-o", o.output, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "treecode run scored against direct summation");
  add_instance_flags(run, o);
  add_run_flags(run, o);
  run->add_option("--theta", o.theta, "MAC parameter in (0, 1]");
  run->add_option("--n", o.degree, "interpolation degree in [1, 20]");
  run->add_option("--velocities", o.velocities, "write treecode outputs to this file");

  auto* sweep = app.add_subcommand("sweep", "grid of (theta, n) runs on one instance");
  add_instance_flags(sweep, o);
  add_run_flags(sweep, o);
  sweep->add_option("--theta", o.theta_range, "theta values: a:b:step or a,b,c");
  sweep->add_option("--n", o.degree_range, "degrees: a:b[:step] or a,b,c");

  auto* compare = app.add_subcommand("compare", "relative error between two value files");
  compare->add_option("--reference", o.reference_file, "exact values")->required();
  compare->add_option("--approx", o.approx_file, "approximate values")->required();
  compare->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  compare->add_option("--output,-o", o.output, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out);
    if (run->parsed()) return cmd_run(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace kitc::cli
