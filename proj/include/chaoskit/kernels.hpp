#pragma once

// Data-parallel kernels. Every parallel kernel has a *_serial twin with the
// same arithmetic order per output element, used as the test oracle and as
// the benchmark baseline.

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <vector>

#include "chaoskit/numerics.hpp"

namespace chaoskit::kernels {

// Problems smaller than this run on one thread.
inline constexpr std::size_t kParallelMinDim = 128;

/// Number of threads the kernels will use (honours CHAOSKIT_THREADS).
int thread_count();

/// Reads CHAOSKIT_THREADS and caps the OpenMP team size. Idempotent.
void configure_threads_from_env();

// y = T x
void matvec(const DenseOperator& t, std::span<const Complex> x, std::span<Complex> y);
void matvec_serial(const DenseOperator& t, std::span<const Complex> x, std::span<Complex> y);

/// Column extent [lo, hi) of the nonzeros in each row, computed once per
/// operator so repeated products skip the zero parts of banded and
/// block-diagonal matrices.
struct RowProfile {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;

  static RowProfile of(const DenseOperator& t);
  std::size_t stored_entries() const noexcept;
};

void matvec_profiled(const DenseOperator& t, const RowProfile& p, std::span<const Complex> x,
                     std::span<Complex> y);
void matvec_profiled_serial(const DenseOperator& t, const RowProfile& p,
                            std::span<const Complex> x, std::span<Complex> y);

DenseOperator matmul(const DenseOperator& a, const DenseOperator& b);
DenseOperator matmul_serial(const DenseOperator& a, const DenseOperator& b);

/// Sum of term(0) + ... + term(count-1). Terms are evaluated in parallel into
/// a per-index buffer and reduced serially in index order, so the result does
/// not depend on the thread count.
double panel_sum(std::size_t count, const std::function<double(std::size_t)>& term);
double panel_sum_serial(std::size_t count, const std::function<double(std::size_t)>& term);

/// Runs body(i) for i in [0, n) across threads. The first exception thrown by
/// any body is rethrown on the calling thread after the loop.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  std::mutex guard;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace chaoskit::kernels
