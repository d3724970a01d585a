#include "wavebranch/exec.hpp"

#include <omp.h>

#include <cstdlib>

namespace wavebranch {

int thread_cap() {
  if (const char* env = std::getenv("WAVEBRANCH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

}  // namespace wavebranch
