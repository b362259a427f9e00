#pragma once

#include <iosfwd>

#include "kitc/engine.hpp"
#include "kitc/tree.hpp"

namespace kitc {

// Plain-text tables. Particle files: a header line "N m", then N rows of
// "x y z w_1 .. w_m". Value files: a header line "N p", then N rows of p
// values. Numbers are written with 17 significant digits.

void write_particles(std::ostream& os, const ParticleSystem& system);
/// Throws std::runtime_error on a malformed or truncated file.
ParticleSystem read_particles(std::istream& is);

void write_values(std::ostream& os, const EvalResult& values);
EvalResult read_values(std::istream& is);

}  // namespace kitc
