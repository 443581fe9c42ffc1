#ifndef MMT_PARALLEL_HPP
#define MMT_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mmt {

/// Execution mode for the data-parallel kernels.  The serial path is the
/// reference implementation; the parallel path must produce identical
/// results (work is split per item, reductions stay in index order).
enum class Exec { serial, par };

/// Apply fn(i) for i in [0, n).  Exceptions thrown by fn are captured and
/// rethrown (first one wins) so error behaviour matches the serial path.
template <typename Fn>
void parallel_for(std::size_t n, Exec exec, Fn&& fn) {
#ifdef _OPENMP
  if (exec == Exec::par) {
    std::exception_ptr err;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mmt

#endif
