#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaoskit/numerics.hpp"
#include "chaoskit/polynomial.hpp"
#include "chaoskit/quadrature.hpp"

namespace chaoskit {

// ---- polar decomposition and singular-value reciprocity -------------------

struct PolarDecomposition {
  DenseOperator u;  // unitary factor
  DenseOperator p;  // |T| = (T^* T)^{1/2}
};

/// T = U P from the SVD T = W S V^*: U = W V^*, P = V S V^*.
/// Throws SingularOperator when sigma_max / sigma_min exceeds kConditionLimit.
PolarDecomposition polar_decompose(const DenseOperator& t);

struct ReciprocityReport {
  bool holds = false;
  double max_rel_defect = 0.0;
  std::vector<double> sigma;          // singular values of T, descending
  std::vector<double> sigma_inverse;  // singular values of T^{-1}, descending
};

/// Compares singular values of T^{-1} with reciprocals of those of T taken
/// in reverse order.
ReciprocityReport check_singular_reciprocity(const DenseOperator& t, double tol);

// ---- spectral radius ------------------------------------------------------

enum class RadiusMode { Eigen, Gelfand };

/// Eigen: max |eigenvalue|. Gelfand: ||T^n_max||^{1/n_max}, evaluated with
/// rescaled repeated squaring so large powers do not overflow.
double spectral_radius_estimate(const DenseOperator& t, RadiusMode mode, unsigned n_max = 64);

// ---- density family and identities ----------------------------------------

/// Base density f(x) = |ln x| / x on [a, b] pushed forward by x -> x^n.
struct DensityFamily {
  double a = 0.5;
  double b = 2.0;
  unsigned n = 1;

  double support_lo() const;  // a^n
  double support_hi() const;  // b^n
  void validate() const;
};

double base_density(double x);

/// f_n(t) = (1/n) f(t^{1/n}) t^{1/n - 1} on [a^n, b^n], 0 outside.
/// Throws NonpositiveArgument for t <= 0.
double density_fn(double t, const DensityFamily& family);

/// max |t^2 f_n(t) - f_n(1/t)| over the grid.
double check_density_reciprocal_identity(const DensityFamily& family, std::span<const double> grid);

/// `count` log-spaced points strictly inside (a^n, b^n).
std::vector<double> log_spaced_interior(const DensityFamily& family, std::size_t count);

struct IntegralIdentityReport {
  double i1 = 0.0;  // integral of x^2 |g(x)|^2 f_n(x)
  double i2 = 0.0;  // integral of x^-2 |g(1/x)|^2 f_n(x)
  double rel_defect = 0.0;
  std::size_t panels = 0;  // per half-interval at the final refinement
  bool converged = false;
};

struct RefinementOptions {
  std::size_t start_panels = 2048;
  std::size_t max_panels = std::size_t{1} << 14;
  double agreement = 1e-2;
};

/// Both integrals on fixed grids over [a^n, 1] and [1, b^n].
IntegralIdentityReport reflection_integrals(const AnalyticPolynomial& g, const DensityFamily& family,
                                            const QuadratureGrid& left, const QuadratureGrid& right);

/// Panel-doubling driver around reflection_integrals. Throws DegenerateIntegral
/// when both integrals are below 1e-300.
IntegralIdentityReport check_reflection_integral_identity(const AnalyticPolynomial& g,
                                                          const DensityFamily& family,
                                                          const RefinementOptions& options = {});

}  // namespace chaoskit
