#include "chaoskit/kernels.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chaoskit::kernels {

namespace {

void check_dims(const DenseOperator& t, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != t.dim() || y.size() != t.dim())
    throw Error(ErrorCode::DimensionMismatch, "matvec: operator and vector sizes differ");
}

inline Complex row_dot(const Complex* row, const Complex* x, std::size_t lo, std::size_t hi) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = lo; j < hi; ++j) {
    const double ar = row[j].real(), ai = row[j].imag();
    const double xr = x[j].real(), xi = x[j].imag();
    re += ar * xr - ai * xi;
    im += ar * xi + ai * xr;
  }
  return {re, im};
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void configure_threads_from_env() {
#ifdef _OPENMP
  static std::once_flag once;
  std::call_once(once, [] {
    if (const char* env = std::getenv("CHAOSKIT_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap >= 1 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
      } catch (const std::exception&) {
        // ignore malformed values
      }
    }
  });
#endif
}

void matvec(const DenseOperator& t, std::span<const Complex> x, std::span<Complex> y) {
  check_dims(t, x, y);
  const long n = static_cast<long>(t.dim());
  const Complex* a = t.entries().data();
#pragma omp parallel for schedule(static) if (t.dim() >= kParallelMinDim)
  for (long i = 0; i < n; ++i) y[i] = row_dot(a + i * n, x.data(), 0, n);
}

void matvec_serial(const DenseOperator& t, std::span<const Complex> x, std::span<Complex> y) {
  check_dims(t, x, y);
  const std::size_t n = t.dim();
  const Complex* a = t.entries().data();
  for (std::size_t i = 0; i < n; ++i) y[i] = row_dot(a + i * n, x.data(), 0, n);
}

RowProfile RowProfile::of(const DenseOperator& t) {
  const std::size_t n = t.dim();
  RowProfile p;
  p.lo.assign(n, 0);
  p.hi.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = t.row(i);
    std::size_t lo = 0;
    while (lo < n && r[lo] == Complex{}) ++lo;
    std::size_t hi = n;
    while (hi > lo && r[hi - 1] == Complex{}) --hi;
    p.lo[i] = lo;
    p.hi[i] = hi;
  }
  return p;
}

std::size_t RowProfile::stored_entries() const noexcept {
  std::size_t s = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) s += hi[i] - lo[i];
  return s;
}

void matvec_profiled(const DenseOperator& t, const RowProfile& p, std::span<const Complex> x,
                     std::span<Complex> y) {
  check_dims(t, x, y);
  const long n = static_cast<long>(t.dim());
  const Complex* a = t.entries().data();
#pragma omp parallel for schedule(static) if (t.dim() >= kParallelMinDim)
  for (long i = 0; i < n; ++i) y[i] = row_dot(a + i * n, x.data(), p.lo[i], p.hi[i]);
}

void matvec_profiled_serial(const DenseOperator& t, const RowProfile& p,
                            std::span<const Complex> x, std::span<Complex> y) {
  check_dims(t, x, y);
  const std::size_t n = t.dim();
  const Complex* a = t.entries().data();
  for (std::size_t i = 0; i < n; ++i) y[i] = row_dot(a + i * n, x.data(), p.lo[i], p.hi[i]);
}

namespace {

void matmul_row(const DenseOperator& a, const DenseOperator& b, DenseOperator& c, std::size_t i) {
  const std::size_t n = a.dim();
  auto crow = c.row(i);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex aik = a(i, k);
    if (aik == Complex{}) continue;
    auto brow = b.row(k);
    for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
  }
}

void check_square_pair(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "matmul: sizes differ");
}

}  // namespace

DenseOperator matmul(const DenseOperator& a, const DenseOperator& b) {
  check_square_pair(a, b);
  DenseOperator c(a.dim());
  const long n = static_cast<long>(a.dim());
#pragma omp parallel for schedule(static) if (a.dim() >= kParallelMinDim / 2)
  for (long i = 0; i < n; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

DenseOperator matmul_serial(const DenseOperator& a, const DenseOperator& b) {
  check_square_pair(a, b);
  DenseOperator c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) matmul_row(a, b, c, i);
  return c;
}

double panel_sum(std::size_t count, const std::function<double(std::size_t)>& term) {
  std::vector<double> parts(count);
  parallel_for(count, [&](std::size_t i) { parts[i] = term(i); });
  double s = 0.0;
  for (double v : parts) s += v;
  return s;
}

double panel_sum_serial(std::size_t count, const std::function<double(std::size_t)>& term) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += term(i);
  return s;
}

}  // namespace chaoskit::kernels
