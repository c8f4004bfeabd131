#pragma once

#include <exception>
#include <mutex>
#include <utility>

namespace cbo::detail {

// Static-schedule parallel map over [0, n). Bodies must be independent per
// index; the first exception thrown by any body is rethrown on the caller.
// threads == 0 uses the runtime default, threads == 1 stays serial.
template <class F>
void parallel_for(long n, int threads, F&& body) {
  if (n <= 0) return;
  if (threads == 1 || n == 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr error;
  std::mutex error_mutex;
  auto guarded = [&](long i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long i = 0; i < n; ++i) guarded(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) guarded(i);
  }
  if (error) std::rethrow_exception(error);
#else
  for (long i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace cbo::detail
