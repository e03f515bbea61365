#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nsbm {

/// Worker count for parallel regions: NSBM_THREADS overrides the OpenMP
/// default. All parallel loops in this library write to disjoint,
/// preallocated slots, so results do not depend on this value.
inline int thread_count() {
  if (const char* env = std::getenv("NSBM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace nsbm
