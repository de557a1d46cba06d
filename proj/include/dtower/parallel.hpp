#pragma once

// Index-parallel map over [0, n) with OpenMP.  Results land in per-index
// slots, so the returned order never depends on scheduling.  If any task
// throws, the exception of the lowest failing index is rethrown after the
// loop.

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace dtower {

template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errs(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Threads OpenMP will use for the next parallel region.
inline int worker_count() { return omp_get_max_threads(); }

/// Sets the default team size; n <= 0 leaves it unchanged.
inline void set_worker_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace dtower
