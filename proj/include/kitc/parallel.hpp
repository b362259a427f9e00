#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kitc {

/// Thread count to use for a parallel region: `requested` when positive,
/// otherwise the OpenMP default (1 when built without OpenMP).
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kitc
