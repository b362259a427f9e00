#include "kitc/kernels.hpp"

#include <stdexcept>

namespace kitc {

static_assert(Kernel<Stokeslet>);
static_assert(Kernel<StokesletRotlet>);
static_assert(Kernel<Coulomb>);

MrsScalars mrs_scalars(double r, double epsilon) {
  if (r < 0.0 || epsilon < 0.0) throw std::invalid_argument("mrs_scalars: negative argument");
  if (r == 0.0 && epsilon == 0.0) throw std::invalid_argument("mrs_scalars: r and epsilon both zero");
  const double r2 = r * r;
  const double e2 = epsilon * epsilon;
  const double s2 = r2 + e2;
  const double s = std::sqrt(s2);
  const double c = 8.0 * std::numbers::pi;
  const double p3 = c * s2 * s;
  const double p5 = p3 * s2;
  const double p7 = p5 * s2;
  return {(2.0 * e2 + r2) / p3, 1.0 / p3, (5.0 * e2 + 2.0 * r2) / p5,
          (10.0 * e2 * e2 - 7.0 * e2 * r2 - 2.0 * r2 * r2) / p7, (21.0 * e2 + 6.0 * r2) / p7};
}

double coulomb_eval(const Vec3& x, const Vec3& y, double q) {
  if (x == y) throw std::invalid_argument("coulomb_eval: coincident points");
  const std::array<double, 1> w{q};
  return Coulomb{}.evaluate(x, y, w)[0];
}

std::array<double, 3> stokeslet_eval(const Vec3& x, const Vec3& y, const std::array<double, 3>& f,
                                     double epsilon) {
  return Stokeslet{epsilon}.evaluate(x, y, f);
}

std::array<double, 6> stokeslet_rotlet_eval(const Vec3& x, const Vec3& y,
                                            const std::array<double, 6>& fn, double epsilon) {
  return StokesletRotlet{epsilon}.evaluate(x, y, fn);
}

AnyKernel make_kernel(std::string_view name, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("kernel epsilon must be >= 0");
  if (name == "stokeslet") return Stokeslet{epsilon};
  if (name == "stokeslet-rotlet") return StokesletRotlet{epsilon};
  if (name == "coulomb") return Coulomb{};
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::string kernel_name(const AnyKernel& kernel) {
  struct Namer {
    std::string operator()(const Stokeslet&) const { return "stokeslet"; }
    std::string operator()(const StokesletRotlet&) const { return "stokeslet-rotlet"; }
    std::string operator()(const Coulomb&) const { return "coulomb"; }
  };
  return std::visit(Namer{}, kernel);
}

std::size_t weight_dim(const AnyKernel& kernel) {
  return std::visit([](const auto& k) { return std::decay_t<decltype(k)>::weight_dim; }, kernel);
}

std::size_t output_dim(const AnyKernel& kernel) {
  return std::visit([](const auto& k) { return std::decay_t<decltype(k)>::output_dim; }, kernel);
}

}  // namespace kitc
