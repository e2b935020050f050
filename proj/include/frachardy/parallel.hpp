#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace frachardy::parallel {

// Number of worker threads a parallel map will use when asked for `requested`
// (≤ 0 means "all available"). Always 1 without OpenMP.
int resolve_threads(int requested);
bool openmp_enabled();

// Reference implementation: evaluates f(0), ..., f(n-1) in order.
template <class F>
auto serial_map(std::size_t n, F&& f) {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

// Same contract as serial_map; slots are filled concurrently, so the output
// order never depends on scheduling. f must be safe to call concurrently.
template <class F>
auto parallel_map(std::size_t n, F&& f, int threads = 0) {
  using R = std::invoke_result_t<F&, std::size_t>;
  static_assert(std::is_default_constructible_v<R>, "parallel_map needs default-constructible results");
  std::vector<R> out(n);
  const long count = static_cast<long>(n);
#if defined(FRACHARDY_HAVE_OPENMP)
  const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
#else
  (void)threads;
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
#endif
  return out;
}

}  // namespace frachardy::parallel
