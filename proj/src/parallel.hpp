#pragma once

#include <exception>
#include <mutex>

namespace genss::detail {

// OpenMP loop over [0, n) that rethrows the first exception raised by a body.
template <class Body>
void parallel_for(long n, Body&& body) {
  std::exception_ptr first;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace genss::detail
