#include "chaoskit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "chaoskit/kernels.hpp"

namespace chaoskit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ---- StateVector ----------------------------------------------------------

StateVector::StateVector(std::initializer_list<Complex> values) : v_(values) {}
StateVector::StateVector(std::vector<Complex> values) : v_(std::move(values)) {}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  StateVector e(dim);
  e[k] = 1.0;
  return e;
}

double StateVector::norm() const noexcept {
  // scaled sum of squares, safe against overflow of intermediate squares
  double scale = 0.0, ssq = 1.0;
  for (const Complex& z : v_) {
    for (double c : {z.real(), z.imag()}) {
      if (c == 0.0) continue;
      const double a = std::abs(c);
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

bool StateVector::all_finite() const noexcept {
  return std::all_of(v_.begin(), v_.end(), finite);
}

StateVector& StateVector::operator*=(Complex s) noexcept {
  for (auto& z : v_) z *= s;
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += other.v_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  if (other.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= other.v_[i];
  return *this;
}

StateVector operator*(Complex s, StateVector x) { return x *= s; }
StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }

// ---- DenseOperator --------------------------------------------------------

DenseOperator::DenseOperator(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()), a_(rows.size() * rows.size()) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix literal is not square");
    std::copy(r.begin(), r.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    ++i;
  }
}

DenseOperator DenseOperator::identity(std::size_t dim) {
  DenseOperator t(dim);
  for (std::size_t i = 0; i < dim; ++i) t(i, i) = 1.0;
  return t;
}

DenseOperator DenseOperator::diagonal(std::span<const Complex> diag) {
  DenseOperator t(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) t(i, i) = diag[i];
  return t;
}

DenseOperator DenseOperator::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

bool DenseOperator::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), finite);
}

bool DenseOperator::is_upper_triangular() const noexcept {
  for (std::size_t i = 1; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != Complex{}) return false;
  return true;
}

bool DenseOperator::is_lower_triangular() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != Complex{}) return false;
  return true;
}

DenseOperator& DenseOperator::operator*=(Complex s) noexcept {
  for (auto& z : a_) z *= s;
  return *this;
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "operator sum");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& other) {
  if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "operator difference");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  return kernels::matmul(a, b);
}
DenseOperator operator*(Complex s, DenseOperator a) { return a *= s; }
DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }

void require_finite(const DenseOperator& t, const char* what) {
  if (!t.all_finite())
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-finite matrix entry");
}

void require_finite(const StateVector& x, const char* what) {
  if (!x.all_finite())
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-finite vector entry");
}

DenseOperator adjoint(const DenseOperator& t) {
  const std::size_t n = t.dim();
  DenseOperator r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(t(j, i));
  return r;
}

StateVector apply(const DenseOperator& t, const StateVector& x) {
  if (x.dim() != t.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "apply: operator dim " + std::to_string(t.dim()) + ", vector dim " +
                    std::to_string(x.dim()));
  StateVector y(t.dim());
  kernels::matvec(t, x.entries(), y.entries());
  return y;
}

DenseOperator power(const DenseOperator& t, unsigned k) {
  DenseOperator result = DenseOperator::identity(t.dim());
  DenseOperator base = t;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

double frobenius_norm(const DenseOperator& t) noexcept {
  double s = 0.0;
  for (const Complex& z : t.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double one_norm(const DenseOperator& t) noexcept {
  const std::size_t n = t.dim();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(t(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_abs_entry(const DenseOperator& t) noexcept {
  double m = 0.0;
  for (const Complex& z : t.entries()) m = std::max(m, std::abs(z));
  return m;
}

// ---- inversion ------------------------------------------------------------

namespace {

// Plain LU inverse without the condition gate; throws on a tiny pivot.
DenseOperator lu_inverse(const DenseOperator& t) {
  const std::size_t n = t.dim();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "invert: empty operator");
  require_finite(t, "invert");
  const double scale = max_abs_entry(t);
  const double pivot_tol = static_cast<double>(n) * kEps * scale;
  if (scale == 0.0) throw Error(ErrorCode::SingularOperator, "invert: zero operator");

  DenseOperator lu = t;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) best = v, p = i;
    }
    if (best <= pivot_tol)
      throw Error(ErrorCode::SingularOperator,
                  "invert: pivot " + std::to_string(best) + " at column " + std::to_string(k));
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap(perm[k], perm[p]);
    }
    const Complex pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (lu(i, k) == Complex{}) continue;
      const Complex m = lu(i, k) / pivot;
      lu(i, k) = m;
      auto ri = lu.row(i);
      auto rk = lu.row(k);
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
    }
  }

  // Solve L U X = P I column by column; X is built transposed for row access.
  DenseOperator xt(n);
  std::vector<Complex> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = col[i];
      for (std::size_t j = 0; j < i; ++j)
        if (col[j] != Complex{} && lu(i, j) != Complex{}) s -= lu(i, j) * col[j];
      col[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = col[ii];
      for (std::size_t j = ii + 1; j < n; ++j)
        if (col[j] != Complex{} && lu(ii, j) != Complex{}) s -= lu(ii, j) * col[j];
      col[ii] = s / lu(ii, ii);
    }
    std::copy(col.begin(), col.end(), xt.row(c).begin());
  }
  DenseOperator x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = xt(j, i);
  return x;
}

}  // namespace

DenseOperator invert(const DenseOperator& t) {
  DenseOperator inv = lu_inverse(t);
  const double kappa = one_norm(t) * one_norm(inv);
  if (!(kappa <= kConditionLimit))
    throw Error(ErrorCode::SingularOperator,
                "invert: condition estimate " + std::to_string(kappa) + " exceeds limit");
  return inv;
}

double condition_estimate(const DenseOperator& t) {
  try {
    return one_norm(t) * one_norm(lu_inverse(t));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularOperator) return std::numeric_limits<double>::infinity();
    throw;
  }
}

// ---- eigenvalues ----------------------------------------------------------

namespace {

// Householder reduction to upper Hessenberg form, in place.
void to_hessenberg(DenseOperator& h) {
  const std::size_t n = h.dim();
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const Complex phase = (std::abs(x0) == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;

    std::fill(v.begin(), v.end(), Complex{});
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vn = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    if (vn == 0.0) continue;
    const double beta = 2.0 / vn;

    // H <- (I - beta v v^*) H
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    // H <- H (I - beta v v^*)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex m1 = d - half + disc;  // (a+d)/2 + disc
  const Complex m2 = d - half - disc;
  return (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
}

std::vector<Complex> hessenberg_qr(DenseOperator h) {
  const std::size_t n = h.dim();
  std::vector<Complex> eig;
  eig.reserve(n);
  const double hnorm = frobenius_norm(h);
  const std::size_t max_iter_per_eig = 60;
  std::size_t total_budget = max_iter_per_eig * n;
  std::size_t iter = 0;

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    // locate the start of the active unreduced block
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double ref = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (ref == 0.0) ref = hnorm;
      if (sub <= kEps * ref) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (total_budget == 0)
      throw Error(ErrorCode::ConvergenceFailure, "eigenvalues: QR iteration budget exhausted");
    --total_budget;
    ++iter;

    Complex mu;
    if (iter % 11 == 0) {
      // exceptional shift to break cycles
      mu = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.4375 * std::abs(h(hi, hi - 1)));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    // implicit single-shift sweep on rows/columns lo..hi
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      Complex x, y;
      if (k == lo) {
        x = h(k, k) - mu;
        y = h(k + 1, k);
      } else {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const double r = std::hypot(std::abs(x), std::abs(y));
      if (r == 0.0) continue;
      const Complex c = x / r;
      const Complex s = y / r;
      // rows k, k+1: [conj(c) conj(s); -s c]
      const std::ptrdiff_t col0 = (k == lo) ? k : k - 1;
      for (std::ptrdiff_t j = col0; j <= hi; ++j) {
        const Complex a = h(k, j), b = h(k + 1, j);
        h(k, j) = std::conj(c) * a + std::conj(s) * b;
        h(k + 1, j) = -s * a + c * b;
      }
      if (k > lo) h(k + 1, k - 1) = 0.0;
      // columns k, k+1: multiply by the adjoint
      const std::ptrdiff_t row1 = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= row1; ++i) {
        const Complex a = h(i, k), b = h(i, k + 1);
        h(i, k) = a * c + b * s;
        h(i, k + 1) = -a * std::conj(s) + b * std::conj(c);
      }
    }
  }
  return eig;
}

}  // namespace

std::vector<Complex> eigenvalues(const DenseOperator& t, std::size_t cap) {
  require_finite(t, "eigenvalues");
  const std::size_t n = t.dim();
  if (t.is_upper_triangular() || t.is_lower_triangular()) {
    std::vector<Complex> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t(i, i);
    return d;
  }
  if (n > cap)
    throw Error(ErrorCode::InvalidArgument, "eigenvalues: dimension " + std::to_string(n) +
                                                " exceeds cap " + std::to_string(cap));
  DenseOperator h = t;
  to_hessenberg(h);
  return hessenberg_qr(std::move(h));
}

// ---- SVD ------------------------------------------------------------------

namespace {

// One-sided Jacobi on the columns of w; v accumulates the right rotations.
// Both are stored column-major as vectors of columns.
void jacobi_orthogonalize(std::vector<std::vector<Complex>>& w,
                          std::vector<std::vector<Complex>>& v) {
  const std::size_t n = w.size();
  constexpr int kMaxSweeps = 60;
  constexpr double kTol = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(w[p][i]);
          beta += std::norm(w[q][i]);
          gamma += std::conj(w[p][i]) * w[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Complex cp = std::conj(phase);
        for (auto* m : {&w, &v}) {
          auto& cols = *m;
          for (std::size_t i = 0; i < n; ++i) {
            const Complex a = cols[p][i];
            const Complex b = cp * cols[q][i];
            cols[p][i] = c * a - s * b;
            cols[q][i] = s * a + c * b;
          }
        }
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorCode::ConvergenceFailure, "svd: Jacobi sweeps did not converge");
}

}  // namespace

SvdResult svd(const DenseOperator& t) {
  require_finite(t, "svd");
  const std::size_t n = t.dim();
  std::vector<std::vector<Complex>> w(n, std::vector<Complex>(n));
  std::vector<std::vector<Complex>> v(n, std::vector<Complex>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) w[j][i] = t(i, j);
    v[j][j] = 1.0;
  }
  jacobi_orthogonalize(w, v);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (const Complex& z : w[j]) s += std::norm(z);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  SvdResult r{DenseOperator(n), std::vector<double>(n), DenseOperator(n)};
  const double smax = n ? sigma[order[0]] : 0.0;
  std::vector<bool> filled(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    r.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) r.v(i, k) = v[j][i];
    if (sigma[j] > kEps * smax * static_cast<double>(n) && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) r.u(i, k) = w[j][i] / sigma[j];
      filled[k] = true;
    }
  }
  // complete U for (numerically) zero singular values by Gram-Schmidt on
  // standard basis vectors
  std::size_t candidate = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (filled[k]) continue;
    while (candidate < n) {
      std::vector<Complex> e(n);
      e[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!filled[c]) continue;
          Complex d{};
          for (std::size_t i = 0; i < n; ++i) d += std::conj(r.u(i, c)) * e[i];
          for (std::size_t i = 0; i < n; ++i) e[i] -= d * r.u(i, c);
        }
      }
      double en = 0.0;
      for (const Complex& z : e) en += std::norm(z);
      en = std::sqrt(en);
      if (en > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) r.u(i, k) = e[i] / en;
        filled[k] = true;
        break;
      }
    }
  }
  return r;
}

std::vector<double> singular_values(const DenseOperator& t) { return svd(t).sigma; }

double operator_norm(const DenseOperator& t) {
  if (t.dim() == 0) return 0.0;
  return singular_values(t).front();
}

}  // namespace chaoskit
