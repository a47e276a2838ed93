#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "chaoskit/error.hpp"

namespace chaoskit {

using Complex = std::complex<double>;

/// Complex N-vector; the x in orbit norms ||T^n x||.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : v_(dim) {}
  StateVector(std::initializer_list<Complex> values);
  explicit StateVector(std::vector<Complex> values);

  static StateVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return v_.size(); }
  Complex operator[](std::size_t i) const { return v_[i]; }
  Complex& operator[](std::size_t i) { return v_[i]; }

  std::span<const Complex> entries() const noexcept { return v_; }
  std::span<Complex> entries() noexcept { return v_; }

  double norm() const noexcept;
  bool all_finite() const noexcept;

  StateVector& operator*=(Complex s) noexcept;
  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> v_;
};

StateVector operator*(Complex s, StateVector x);
StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);

/// N x N complex matrix, row-major. A finite truncation or discretization of
/// a bounded operator.
class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(std::size_t dim) : n_(dim), a_(dim * dim) {}
  DenseOperator(std::initializer_list<std::initializer_list<Complex>> rows);

  static DenseOperator identity(std::size_t dim);
  static DenseOperator zero(std::size_t dim) { return DenseOperator(dim); }
  static DenseOperator diagonal(std::span<const Complex> diag);
  static DenseOperator diagonal(std::initializer_list<Complex> diag);

  std::size_t dim() const noexcept { return n_; }

  Complex operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  std::span<const Complex> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  std::span<Complex> row(std::size_t i) { return {a_.data() + i * n_, n_}; }

  std::span<const Complex> entries() const noexcept { return a_; }
  std::span<Complex> entries() noexcept { return a_; }

  bool all_finite() const noexcept;
  bool is_upper_triangular() const noexcept;
  bool is_lower_triangular() const noexcept;

  DenseOperator& operator*=(Complex s) noexcept;
  DenseOperator& operator+=(const DenseOperator& other);
  DenseOperator& operator-=(const DenseOperator& other);

  friend bool operator==(const DenseOperator&, const DenseOperator&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> a_;
};

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator*(Complex s, DenseOperator a);
DenseOperator operator+(DenseOperator a, const DenseOperator& b);
DenseOperator operator-(DenseOperator a, const DenseOperator& b);

// Throws InvalidArgument when any entry is NaN or infinite.
void require_finite(const DenseOperator& t, const char* what);
void require_finite(const StateVector& x, const char* what);

/// Conjugate transpose.
DenseOperator adjoint(const DenseOperator& t);

/// Matrix-vector product. Throws DimensionMismatch.
StateVector apply(const DenseOperator& t, const StateVector& x);

/// T^k by repeated squaring.
DenseOperator power(const DenseOperator& t, unsigned k);

double frobenius_norm(const DenseOperator& t) noexcept;
double one_norm(const DenseOperator& t) noexcept;
double max_abs_entry(const DenseOperator& t) noexcept;

// Reject inversion above this 1-norm condition estimate.
inline constexpr double kConditionLimit = 1e12;

/// Inverse by LU with partial pivoting. Throws SingularOperator when a pivot
/// falls below N * eps * max|T_ij| or the condition estimate exceeds
/// kConditionLimit.
DenseOperator invert(const DenseOperator& t);

/// 1-norm condition number ||T||_1 ||T^{-1}||_1 (inf for singular T).
double condition_estimate(const DenseOperator& t);

inline constexpr std::size_t kDefaultEigenCap = 256;

/// All N eigenvalues with multiplicity, unordered. Triangular input returns
/// its diagonal exactly; otherwise Hessenberg reduction followed by shifted
/// complex QR. Throws InvalidArgument when N exceeds `cap` on the QR path and
/// ConvergenceFailure when the iteration budget is exhausted.
std::vector<Complex> eigenvalues(const DenseOperator& t, std::size_t cap = kDefaultEigenCap);

struct SvdResult {
  DenseOperator u;             // left singular vectors (columns)
  std::vector<double> sigma;   // descending
  DenseOperator v;             // right singular vectors (columns)
};

/// Full SVD T = U diag(sigma) V^* by one-sided Jacobi.
SvdResult svd(const DenseOperator& t);

/// Singular values, descending.
std::vector<double> singular_values(const DenseOperator& t);

/// Largest singular value.
double operator_norm(const DenseOperator& t);

}  // namespace chaoskit
