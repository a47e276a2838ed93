#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "chaoskit/numerics.hpp"

namespace chaoskit {

inline constexpr std::size_t kMaxPolynomialDegree = 64;

/// Finite Taylor series a_0 + a_1 z + ... + a_d z^d on the unit disk.
/// Trailing zero coefficients are trimmed; the zero polynomial has degree 0.
class AnalyticPolynomial {
 public:
  AnalyticPolynomial() : c_{Complex{}} {}
  AnalyticPolynomial(std::initializer_list<Complex> coeffs);
  explicit AnalyticPolynomial(std::vector<Complex> coeffs);

  static AnalyticPolynomial constant(Complex c) { return AnalyticPolynomial({c}); }
  // c + z
  static AnalyticPolynomial shifted_identity(Complex c) { return AnalyticPolynomial({c, 1.0}); }
  // c z^k
  static AnalyticPolynomial monomial(Complex c, std::size_t k);

  std::size_t degree() const noexcept { return c_.size() - 1; }
  bool is_constant() const noexcept { return c_.size() == 1; }
  bool is_zero() const noexcept { return is_constant() && c_[0] == Complex{}; }

  Complex coefficient(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : Complex{}; }
  const std::vector<Complex>& coefficients() const noexcept { return c_; }

  Complex operator()(Complex z) const noexcept;
  AnalyticPolynomial derivative() const;

  friend AnalyticPolynomial operator+(const AnalyticPolynomial& p, const AnalyticPolynomial& q);
  friend AnalyticPolynomial operator-(const AnalyticPolynomial& p, const AnalyticPolynomial& q);
  friend AnalyticPolynomial operator*(const AnalyticPolynomial& p, const AnalyticPolynomial& q);
  friend bool operator==(const AnalyticPolynomial&, const AnalyticPolynomial&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Complex> c_;
};

}  // namespace chaoskit
