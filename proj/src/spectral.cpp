#include "chaoskit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace chaoskit {

PolarDecomposition polar_decompose(const DenseOperator& t) {
  const SvdResult s = svd(t);
  const std::size_t n = t.dim();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "polar: empty operator");
  const double smin = s.sigma.back();
  if (!(smin > 0.0) || s.sigma.front() / smin > kConditionLimit)
    throw Error(ErrorCode::SingularOperator, "polar: operator is numerically singular");

  PolarDecomposition pd{DenseOperator(n), DenseOperator(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex u{}, p{};
      for (std::size_t k = 0; k < n; ++k) {
        const Complex vjk = std::conj(s.v(j, k));
        u += s.u(i, k) * vjk;
        p += s.v(i, k) * s.sigma[k] * vjk;
      }
      pd.u(i, j) = u;
      pd.p(i, j) = p;
    }
  }
  return pd;
}

ReciprocityReport check_singular_reciprocity(const DenseOperator& t, double tol) {
  ReciprocityReport r;
  r.sigma = singular_values(t);
  r.sigma_inverse = singular_values(invert(t));
  const std::size_t n = r.sigma.size();
  r.max_rel_defect = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double expected = 1.0 / r.sigma[n - 1 - k];
    const double defect = std::abs(r.sigma_inverse[k] - expected) / expected;
    r.max_rel_defect = std::max(r.max_rel_defect, defect);
  }
  r.holds = r.max_rel_defect <= tol;
  return r;
}

double spectral_radius_estimate(const DenseOperator& t, RadiusMode mode, unsigned n_max) {
  if (t.dim() == 0) return 0.0;
  if (mode == RadiusMode::Eigen) {
    double r = 0.0;
    for (const Complex& z : eigenvalues(t)) r = std::max(r, std::abs(z));
    return r;
  }
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "gelfand estimate needs n_max >= 1");
  // T^n = exp(log_scale) * result with result kept at unit max entry
  DenseOperator result = DenseOperator::identity(t.dim());
  DenseOperator base = t;
  double log_result = 0.0, log_base = 0.0;
  auto renormalize = [](DenseOperator& m, double& log_scale) {
    const double s = max_abs_entry(m);
    if (s == 0.0) return false;
    m *= 1.0 / s;
    log_scale += std::log(s);
    return true;
  };
  if (!renormalize(base, log_base)) return 0.0;
  unsigned k = n_max;
  while (k > 0) {
    if (k & 1u) {
      result = result * base;
      log_result += log_base;
      if (!renormalize(result, log_result)) return 0.0;
    }
    k >>= 1u;
    if (k > 0) {
      base = base * base;
      log_base *= 2.0;
      if (!renormalize(base, log_base)) {
        return 0.0;
      }
    }
  }
  const double nrm = operator_norm(result);
  if (nrm == 0.0) return 0.0;
  return std::exp((std::log(nrm) + log_result) / static_cast<double>(n_max));
}

// ---- densities ------------------------------------------------------------

double DensityFamily::support_lo() const { return std::pow(a, static_cast<double>(n)); }
double DensityFamily::support_hi() const { return std::pow(b, static_cast<double>(n)); }

void DensityFamily::validate() const {
  if (!(a > 0.0 && a < 1.0 && b > 1.0 && std::isfinite(b)))
    throw Error(ErrorCode::InvalidArgument, "density family needs 0 < a < 1 < b");
  if (std::abs(a * b - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "density family needs a = 1/b");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "density power n must be >= 1");
}

double base_density(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveArgument, "density argument must be positive");
  return std::abs(std::log(x)) / x;
}

double density_fn(double t, const DensityFamily& family) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveArgument, "density argument must be positive");
  if (t < family.support_lo() || t > family.support_hi()) return 0.0;
  const double inv_n = 1.0 / static_cast<double>(family.n);
  const double root = std::pow(t, inv_n);
  return inv_n * base_density(root) * std::pow(t, inv_n - 1.0);
}

double check_density_reciprocal_identity(const DensityFamily& family, std::span<const double> grid) {
  double worst = 0.0;
  for (double t : grid) {
    const double lhs = t * t * density_fn(t, family);
    const double rhs = density_fn(1.0 / t, family);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<double> log_spaced_interior(const DensityFamily& family, std::size_t count) {
  family.validate();
  const double lo = std::log(family.support_lo());
  const double hi = std::log(family.support_hi());
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    pts[k] = std::exp(lo + (hi - lo) * (static_cast<double>(k) + 1.0) /
                               (static_cast<double>(count) + 1.0));
  return pts;
}

// ---- reflection integrals ------------------------------------------------

IntegralIdentityReport reflection_integrals(const AnalyticPolynomial& g, const DensityFamily& family,
                                            const QuadratureGrid& left, const QuadratureGrid& right) {
  auto i1 = [&](double x) { return x * x * std::norm(g(x)) * density_fn(x, family); };
  auto i2 = [&](double x) { return std::norm(g(1.0 / x)) * density_fn(x, family) / (x * x); };
  IntegralIdentityReport r;
  r.i1 = integrate(i1, left) + integrate(i1, right);
  r.i2 = integrate(i2, left) + integrate(i2, right);
  r.panels = left.panels;
  const double big = std::max(r.i1, r.i2);
  if (big < 1e-300)
    throw Error(ErrorCode::DegenerateIntegral, "both integrals vanish");
  r.rel_defect = std::abs(r.i1 - r.i2) / big;
  return r;
}

IntegralIdentityReport check_reflection_integral_identity(const AnalyticPolynomial& g,
                                                          const DensityFamily& family,
                                                          const RefinementOptions& options) {
  family.validate();
  if (options.start_panels == 0 || options.max_panels < options.start_panels)
    throw Error(ErrorCode::InvalidArgument, "bad refinement options");
  const double lo = family.support_lo(), hi = family.support_hi();
  // below this the defect is rounding noise and successive values need not agree
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();

  IntegralIdentityReport prev;
  bool have_prev = false;
  for (std::size_t panels = options.start_panels;; panels *= 2) {
    const auto left = composite_gauss_grid(lo, 1.0, panels);
    const auto right = composite_gauss_grid(1.0, hi, panels);
    IntegralIdentityReport cur = reflection_integrals(g, family, left, right);
    if (have_prev) {
      const double d0 = prev.rel_defect, d1 = cur.rel_defect;
      const bool agree = std::abs(d1 - d0) <= options.agreement * std::max(d0, d1);
      const bool noise = d0 <= floor && d1 <= floor;
      if (agree || noise) {
        cur.converged = true;
        return cur;
      }
    }
    if (panels * 2 > options.max_panels) {
      cur.converged = false;
      return cur;
    }
    prev = cur;
    have_prev = true;
  }
}

}  // namespace chaoskit
