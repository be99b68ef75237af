#pragma once

#include <cstdint>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lmmse/linalg.hpp"

namespace lmmse {

/// Serial reference loop: fn(i) for i = 0 .. count-1 in order.
template <class Fn>
void for_each_index_serial(std::int64_t count, Fn&& fn) {
  for (std::int64_t i = 0; i < count; ++i) fn(i);
}

/// OpenMP version of for_each_index_serial. fn(i) must write only to slot i
/// of caller-owned storage. The exception of the lowest failing index is
/// rethrown after the join, so error reporting does not depend on scheduling.
template <class Fn>
void for_each_index(std::int64_t count, int workers, Fn&& fn) {
#ifdef _OPENMP
  if (workers > 1 && count > 1) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    return;
  }
#endif
  (void)workers;
  for_each_index_serial(count, fn);
}

/// Rows per partial sum in the chunked covariance kernel. Fixed, so results
/// do not depend on the worker count.
inline constexpr Eigen::Index kCovarianceChunkRows = 512;

/// (1/n) X^T X as a single product.
Matrix empirical_covariance_serial(const Matrix& rows);

/// (1/n) X^T X from per-chunk partial Gram matrices reduced in chunk order.
Matrix empirical_covariance_chunked(const Matrix& rows, int workers);

}  // namespace lmmse
