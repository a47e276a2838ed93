#include "chaoskit/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chaoskit {

AnalyticPolynomial::AnalyticPolynomial(std::initializer_list<Complex> coeffs)
    : AnalyticPolynomial(std::vector<Complex>(coeffs)) {}

AnalyticPolynomial::AnalyticPolynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(Complex{});
  for (const Complex& z : c_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::InvalidArgument, "polynomial: non-finite coefficient");
  trim();
  if (degree() > kMaxPolynomialDegree)
    throw Error(ErrorCode::DegreeTooLarge,
                "polynomial degree " + std::to_string(degree()) + " exceeds " +
                    std::to_string(kMaxPolynomialDegree));
}

AnalyticPolynomial AnalyticPolynomial::monomial(Complex c, std::size_t k) {
  std::vector<Complex> v(k + 1);
  v[k] = c;
  return AnalyticPolynomial(std::move(v));
}

void AnalyticPolynomial::trim() {
  while (c_.size() > 1 && c_.back() == Complex{}) c_.pop_back();
}

Complex AnalyticPolynomial::operator()(Complex z) const noexcept {
  Complex acc = c_.back();
  for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

AnalyticPolynomial AnalyticPolynomial::derivative() const {
  if (c_.size() == 1) return AnalyticPolynomial();
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return AnalyticPolynomial(std::move(d));
}

AnalyticPolynomial operator+(const AnalyticPolynomial& p, const AnalyticPolynomial& q) {
  std::vector<Complex> s(std::max(p.c_.size(), q.c_.size()));
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = p.coefficient(k) + q.coefficient(k);
  return AnalyticPolynomial(std::move(s));
}

AnalyticPolynomial operator-(const AnalyticPolynomial& p, const AnalyticPolynomial& q) {
  std::vector<Complex> s(std::max(p.c_.size(), q.c_.size()));
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = p.coefficient(k) - q.coefficient(k);
  return AnalyticPolynomial(std::move(s));
}

AnalyticPolynomial operator*(const AnalyticPolynomial& p, const AnalyticPolynomial& q) {
  std::vector<Complex> s(p.c_.size() + q.c_.size() - 1);
  for (std::size_t i = 0; i < p.c_.size(); ++i)
    for (std::size_t j = 0; j < q.c_.size(); ++j) s[i + j] += p.c_[i] * q.c_[j];
  return AnalyticPolynomial(std::move(s));
}

std::string AnalyticPolynomial::to_string() const {
  std::string out;
  char buf[96];
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == Complex{} && c_.size() > 1) continue;
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c_[k].real(), c_[k].imag());
    out += buf;
    if (k == 1) out += "z";
    if (k > 1) out += "z^" + std::to_string(k);
  }
  return out;
}

}  // namespace chaoskit
