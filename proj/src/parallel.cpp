#include "frachardy/parallel.hpp"

#if defined(FRACHARDY_HAVE_OPENMP)
#include <omp.h>
#endif

namespace frachardy::parallel {

int resolve_threads(int requested) {
#if defined(FRACHARDY_HAVE_OPENMP)
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

bool openmp_enabled() {
#if defined(FRACHARDY_HAVE_OPENMP)
  return true;
#else
  return false;
#endif
}

}  // namespace frachardy::parallel
