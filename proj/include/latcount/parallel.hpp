#pragma once

// Thin OpenMP compatibility layer so the library builds and runs unchanged
// without -fopenmp; the fallbacks pin everything to one thread.
#if defined(_OPENMP)
#include <omp.h>
#else
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif
