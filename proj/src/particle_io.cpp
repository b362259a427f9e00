#include "kitc/particle_io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace kitc {

namespace {

void read_header(std::istream& is, std::size_t& rows, std::size_t& cols, const char* what) {
  long long r = -1;
  long long c = -1;
  if (!(is >> r >> c) || r < 0 || c < 1)
    throw std::runtime_error(std::string("bad ") + what + " header, expected 'N m'");
  rows = static_cast<std::size_t>(r);
  cols = static_cast<std::size_t>(c);
}

double read_number(std::istream& is, std::size_t row) {
  double v = 0.0;
  if (!(is >> v) || !std::isfinite(v))
    throw std::runtime_error("missing or non-finite value in row " + std::to_string(row + 1));
  return v;
}

}  // namespace

void write_particles(std::ostream& os, const ParticleSystem& system) {
  const auto old = os.precision(17);
  os << system.size() << ' ' << system.weight_dim << '\n';
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Vec3& p = system.positions[i];
    os << p.x << ' ' << p.y << ' ' << p.z;
    for (double w : system.weight(i)) os << ' ' << w;
    os << '\n';
  }
  os.precision(old);
}

ParticleSystem read_particles(std::istream& is) {
  std::size_t n = 0;
  std::size_t m = 0;
  read_header(is, n, m, "particle file");
  std::vector<Vec3> pos(n);
  std::vector<double> w(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = {read_number(is, i), read_number(is, i), read_number(is, i)};
    for (std::size_t c = 0; c < m; ++c) w[i * m + c] = read_number(is, i);
  }
  return ParticleSystem(std::move(pos), std::move(w), m);
}

void write_values(std::ostream& os, const EvalResult& values) {
  const auto old = os.precision(17);
  os << values.size() << ' ' << values.output_dim << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto row = values.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
    os << '\n';
  }
  os.precision(old);
}

EvalResult read_values(std::istream& is) {
  std::size_t n = 0;
  std::size_t p = 0;
  read_header(is, n, p, "value file");
  EvalResult out{std::vector<double>(n * p), p, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < p; ++c) out.values[i * p + c] = read_number(is, i);
  return out;
}

}  // namespace kitc
