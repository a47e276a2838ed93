#include "chaoskit/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "chaoskit/operators.hpp"

namespace chaoskit {

namespace {

void require_nonconstant(const AnalyticPolynomial& p) {
  if (p.is_constant()) throw Error(ErrorCode::ConstantPolynomial, "polynomial is constant");
}

Complex polish(const AnalyticPolynomial& p, const AnalyticPolynomial& dp, Complex z) {
  double res = std::abs(p(z));
  for (int it = 0; it < 8 && res > 0.0; ++it) {
    const Complex d = dp(z);
    if (d == Complex{}) break;
    const Complex cand = z - p(z) / d;
    const double r2 = std::abs(p(cand));
    if (!(r2 < res)) break;
    z = cand;
    res = r2;
  }
  return z;
}

}  // namespace

RootReport roots_in_disk(const AnalyticPolynomial& p, double tol) {
  require_nonconstant(p);
  const std::size_t d = p.degree();
  const Complex lead = p.coefficient(d);
  std::vector<Complex> roots;
  if (d == 1) {
    roots.push_back(-p.coefficient(0) / lead);
  } else {
    DenseOperator c(d);
    for (std::size_t k = 0; k < d; ++k) c(0, k) = -p.coefficient(d - 1 - k) / lead;
    for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    roots = eigenvalues(c);
    const AnalyticPolynomial dp = p.derivative();
    for (auto& r : roots) r = polish(p, dp, r);
  }
  RootReport rep;
  rep.roots = roots;
  for (const Complex& r : roots) {
    const double m = std::abs(r);
    if (std::abs(m - 1.0) <= tol)
      ++rep.on_circle_count;
    else if (m < 1.0)
      ++rep.inside_count;
    else
      ++rep.outside_count;
  }
  return rep;
}

AnalyticPolynomial deflate(const AnalyticPolynomial& p, const std::vector<Complex>& roots) {
  std::vector<Complex> c = p.coefficients();
  for (const Complex& r : roots) {
    if (c.size() <= 1) throw Error(ErrorCode::InvalidArgument, "deflate: more roots than degree");
    // synthetic division by (z - r), remainder dropped
    std::vector<Complex> q(c.size() - 1);
    Complex carry = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      q[k] = carry;
      carry = c[k] + carry * r;
    }
    c = std::move(q);
  }
  return AnalyticPolynomial(std::move(c));
}

// ---- Cowen-Douglas classification -----------------------------------------

std::string_view to_string(CdStatus s) noexcept {
  switch (s) {
    case CdStatus::Yes: return "yes";
    case CdStatus::No: return "no";
    case CdStatus::Undetermined: return "undetermined";
  }
  return "unknown";
}

std::string_view to_string(CdFailure f) noexcept {
  switch (f) {
    case CdFailure::RootCountVaries: return "root_count_varies";
    case CdFailure::RootOnCircle: return "root_on_circle";
    case CdFailure::RoterNotOuter: return "roter_not_outer";
    case CdFailure::ConstantSymbol: return "constant_symbol";
  }
  return "unknown";
}

std::vector<Complex> ProbeSet::points() const {
  std::vector<Complex> pts;
  if (include_origin) pts.emplace_back(0.0, 0.0);
  for (double r : radii)
    for (std::size_t k = 0; k < angles; ++k)
      pts.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                      static_cast<double>(angles)));
  return pts;
}

CowenDouglasReport is_cowen_douglas(const AnalyticPolynomial& phi, const ProbeSet& probes,
                                    double tol) {
  require_nonconstant(phi);
  CowenDouglasReport rep;
  std::optional<std::size_t> count;
  bool roter_ok = true;
  for (const Complex& z0 : probes.points()) {
    ++rep.probes;
    const AnalyticPolynomial q = phi - AnalyticPolynomial::constant(phi(z0));
    const RootReport roots = roots_in_disk(q, tol);
    if (roots.on_circle_count > 0) {
      rep.is_cd = CdStatus::Undetermined;
      rep.failure_reason = CdFailure::RootOnCircle;
      return rep;
    }
    if (count && *count != roots.inside_count) {
      rep.is_cd = CdStatus::No;
      rep.failure_reason = CdFailure::RootCountVaries;
      return rep;
    }
    count = roots.inside_count;

    // roter function: q divided by its in-disk factor must be zero-free on
    // the closed disk
    std::vector<Complex> inside;
    for (const Complex& r : roots.roots)
      if (std::abs(r) < 1.0) inside.push_back(r);
    const AnalyticPolynomial roter = deflate(q, inside);
    if (!roter.is_constant()) {
      const RootReport hr = roots_in_disk(roter, tol);
      if (hr.inside_count + hr.on_circle_count > 0) roter_ok = false;
    } else if (roter.is_zero()) {
      roter_ok = false;
    }
  }
  if (!roter_ok) {
    rep.is_cd = CdStatus::No;
    rep.failure_reason = CdFailure::RoterNotOuter;
    return rep;
  }
  if (!count || *count == 0) {
    rep.is_cd = CdStatus::No;
    rep.failure_reason = CdFailure::RootCountVaries;
    return rep;
  }
  rep.is_cd = CdStatus::Yes;
  rep.folder_m = static_cast<unsigned>(*count);
  return rep;
}

std::size_t kernel_dimension(const AnalyticPolynomial& phi, Complex lambda, double tol) {
  require_nonconstant(phi);
  const RootReport r = roots_in_disk(phi - AnalyticPolynomial::constant(lambda), tol);
  if (r.on_circle_count > 0)
    throw Error(ErrorCode::RootOnCircle, "phi - lambda has a root within tol of the unit circle");
  return r.inside_count;
}

// ---- range of phi on the disk ---------------------------------------------

namespace {

// Golden-section search for an extremum of g on [a, b]; sign = +1 for max.
double golden_extremum(const std::function<double(double)>& g, double a, double b, double sign) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double gc = sign * g(c), gd = sign * g(d);
  for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = sign * g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = sign * g(d);
    }
  }
  return sign * std::max({gc, gd, sign * g(0.5 * (a + b))});
}

}  // namespace

ModulusRange modulus_range_on_disk(const AnalyticPolynomial& phi, std::size_t boundary_samples) {
  if (boundary_samples < 256)
    throw Error(ErrorCode::InvalidArgument, "modulus range needs at least 256 boundary samples");
  ModulusRange r;
  if (phi.is_constant()) {
    r.root_inside = phi.is_zero();
    r.inf_mod = r.sup_mod = std::abs(phi.coefficient(0));
    return r;
  }
  const std::size_t m = boundary_samples;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  auto g = [&](double theta) { return std::abs(phi(std::polar(1.0, theta))); };
  std::vector<double> vals(m);
  for (std::size_t k = 0; k < m; ++k) vals[k] = g(step * static_cast<double>(k));

  r.sup_mod = *std::max_element(vals.begin(), vals.end());
  double boundary_min = *std::min_element(vals.begin(), vals.end());
  // refine every discrete local extremum
  for (std::size_t k = 0; k < m; ++k) {
    const double prev = vals[(k + m - 1) % m], next = vals[(k + 1) % m], v = vals[k];
    const double theta = step * static_cast<double>(k);
    if (v >= prev && v >= next)
      r.sup_mod = std::max(r.sup_mod, golden_extremum(g, theta - step, theta + step, 1.0));
    if (v <= prev && v <= next)
      boundary_min = std::min(boundary_min, golden_extremum(g, theta - step, theta + step, -1.0));
  }

  const RootReport roots = roots_in_disk(phi);
  r.root_inside = roots.inside_count + roots.on_circle_count > 0;
  r.inf_mod = r.root_inside ? 0.0 : boundary_min;
  return r;
}

MultiplierChaosVerdict classify_multiplier(const AnalyticPolynomial& phi, double tol) {
  const CowenDouglasReport cd = is_cowen_douglas(phi);
  if (cd.is_cd != CdStatus::Yes)
    throw Error(ErrorCode::NotCowenDouglas,
                std::string("symbol is not a verified Cowen-Douglas function (") +
                    std::string(cd.failure_reason ? to_string(*cd.failure_reason) : "unknown") + ")");
  const ModulusRange range = modulus_range_on_disk(phi);
  MultiplierChaosVerdict v;
  v.inf_mod = range.inf_mod;
  v.sup_mod = range.sup_mod;
  v.folder_m = *cd.folder_m;
  const double d_inf = std::abs(range.inf_mod - 1.0);
  const double d_sup = std::abs(range.sup_mod - 1.0);
  if (d_inf <= kTangencyTol || d_sup <= kTangencyTol) {
    v.meets_circle = false;
  } else if (d_inf <= tol || d_sup <= tol) {
    throw Error(ErrorCode::BoundaryUncertain, "range endpoint within tolerance of the unit circle");
  } else {
    v.meets_circle = range.inf_mod < 1.0 - tol && range.sup_mod > 1.0 + tol;
  }
  v.chaotic_all_senses = v.meets_circle;
  return v;
}

double adjoint_eigen_residual(const AnalyticPolynomial& phi, Complex z, std::size_t dim) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDisk, "kernel point must satisfy |z| < 1");
  if (dim <= phi.degree())
    throw Error(ErrorCode::DegreeTooLarge, "truncation must exceed the symbol degree");
  const StateVector f = reproducing_kernel_vector(z, dim);
  const DenseOperator ms = adjoint(make_multiplication_truncation(phi, dim));
  StateVector r = apply(ms, f);
  r -= std::conj(phi(z)) * f;
  return r.norm() / f.norm();
}

}  // namespace chaoskit
