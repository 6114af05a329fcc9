#pragma once

#include <cstddef>
#include <exception>

namespace rkdual {

/// Selects the serial reference path or the OpenMP kernel. Both produce
/// identical results; the serial path is kept for testing and benchmarking.
enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, n). Results must be written to pre-sized,
/// per-index slots so that the merge order is independent of scheduling.
/// An exception thrown by body is rethrown on the calling thread (the one
/// with the smallest index wins, as in the serial loop).
template <class Body>
void for_each_index(Exec exec, std::size_t n, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const long long count = static_cast<long long>(n);
  std::exception_ptr first;
  long long first_index = count;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(rkdual_for_each_index)
      if (i < first_index) {
        first_index = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace rkdual
