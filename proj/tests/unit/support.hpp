#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "doctest.h"

#include "chaoskit/numerics.hpp"
#include "chaoskit/rng.hpp"

namespace testing {

using chaoskit::Complex;
using chaoskit::DenseOperator;
using chaoskit::SplitMix64;
using chaoskit::StateVector;

inline DenseOperator random_operator(SplitMix64& rng, std::size_t n) {
  DenseOperator a(n);
  for (Complex& z : a.entries()) z = rng.complex_normal();
  return a;
}

inline StateVector random_state(SplitMix64& rng, std::size_t n) {
  StateVector x(n);
  for (Complex& z : x.entries()) z = rng.complex_normal();
  return x;
}

// Random operator with condition number at most (n + 1) / 1: a diagonal
// dominant shift of a scaled Gaussian matrix.
inline DenseOperator well_conditioned(SplitMix64& rng, std::size_t n) {
  DenseOperator a = random_operator(rng, n);
  a *= 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 2.0;
  return a;
}

inline double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// Triple-loop product, the reference for the kernel-backed operator*.
inline DenseOperator naive_product(const DenseOperator& a, const DenseOperator& b) {
  const std::size_t n = a.dim();
  DenseOperator c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Determinant by Gaussian elimination with partial pivoting.
inline Complex determinant(DenseOperator a) {
  const std::size_t n = a.dim();
  Complex det{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == Complex{}) return {};
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testing

namespace testing {

// Error code raised by f, or nullopt when it returns normally.
template <class F>
std::optional<chaoskit::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const chaoskit::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
