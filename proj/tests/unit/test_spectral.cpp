#include <cmath>
#include <numbers>

#include "support.hpp"

#include "chaoskit/operators.hpp"
#include "chaoskit/quadrature.hpp"
#include "chaoskit/spectral.hpp"

using namespace chaoskit;
using testing::code_of;

namespace {

void check_polar(const DenseOperator& t, double tol) {
  const PolarDecomposition pd = polar_decompose(t);
  const std::size_t n = t.dim();
  CHECK(testing::max_abs_diff(adjoint(pd.u) * pd.u, DenseOperator::identity(n)) <= tol);
  CHECK(testing::max_abs_diff(pd.p, adjoint(pd.p)) <= tol);
  for (const Complex& z : eigenvalues(pd.p)) CHECK(z.real() >= -tol);
  CHECK(frobenius_norm(pd.u * pd.p - t) <= tol * operator_norm(t) * std::sqrt(static_cast<double>(n)));
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("polar decomposition examples") {
  const PolarDecomposition id = polar_decompose(DenseOperator::identity(3));
  CHECK(testing::max_abs_diff(id.u, DenseOperator::identity(3)) < 1e-14);
  CHECK(testing::max_abs_diff(id.p, DenseOperator::identity(3)) < 1e-14);

  const PolarDecomposition d = polar_decompose(DenseOperator::diagonal({2.0, 3.0}));
  CHECK(testing::max_abs_diff(d.u, DenseOperator::identity(2)) < 1e-14);
  CHECK(testing::max_abs_diff(d.p, DenseOperator::diagonal({2.0, 3.0})) < 1e-14);

  const PolarDecomposition s = polar_decompose(DenseOperator{{0.0, 2.0}, {1.0, 0.0}});
  CHECK(testing::max_abs_diff(s.u, DenseOperator{{0.0, 1.0}, {1.0, 0.0}}) < 1e-14);
  CHECK(testing::max_abs_diff(s.p, DenseOperator::diagonal({1.0, 2.0})) < 1e-14);

  CHECK(code_of([] { polar_decompose(DenseOperator{{1.0, 1.0}, {1.0, 1.0}}); }) == ErrorCode::SingularOperator);
}

TEST_CASE("polar decomposition of random operators") {
  SplitMix64 rng(61);
  for (std::size_t n : {1u, 4u, 16u, 64u}) check_polar(testing::well_conditioned(rng, n), 1e-10);
}

TEST_CASE("singular reciprocity examples") {
  CHECK(check_singular_reciprocity(DenseOperator::identity(4), 1e-12).holds);
  const ReciprocityReport r = check_singular_reciprocity(DenseOperator::diagonal({2.0, 4.0}), 1e-12);
  CHECK(r.holds);
  CHECK(r.sigma == std::vector<double>{4.0, 2.0});
  CHECK(r.sigma_inverse == std::vector<double>{0.5, 0.25});
}

TEST_CASE("singular reciprocity holds for random invertible operators") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const DenseOperator t = testing::random_operator(rng, 32);
    if (condition_estimate(t) > 1e10) continue;
    const ReciprocityReport r = check_singular_reciprocity(t, 1e-10);
    CHECK(r.holds);
    CHECK(r.max_rel_defect <= 1e-10);
  }
}

TEST_CASE("density examples") {
  const DensityFamily base{0.5, 2.0, 1};
  for (double t : {0.6, 0.9, 1.3, 1.9}) CHECK(density_fn(t, base) == doctest::Approx(std::abs(std::log(t)) / t));
  for (unsigned n = 1; n <= 4; ++n) CHECK(density_fn(1.0, {0.5, 2.0, n}) == 0.0);
  const double expect = 0.5 * (std::numbers::ln2 / 2.0) * 0.5;
  CHECK(density_fn(4.0, {0.5, 2.0, 2}) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(density_fn(4.5, {0.5, 2.0, 2}) == 0.0);
  CHECK(density_fn(0.1, {0.5, 2.0, 2}) == 0.0);
  CHECK(code_of([&] { density_fn(0.0, base); }) == ErrorCode::NonpositiveArgument);
  CHECK(code_of([&] { density_fn(-1.0, base); }) == ErrorCode::NonpositiveArgument);
}

TEST_CASE("density integrates to the base mass") {
  // pushing forward by x -> x^n preserves total mass
  for (unsigned n = 1; n <= 3; ++n) {
    const DensityFamily fam{0.5, 2.0, n};
    const double lo = fam.support_lo(), hi = fam.support_hi();
    const double m = integrate([&](double t) { return density_fn(t, fam); }, composite_gauss_grid(lo, 1.0, 256)) +
                     integrate([&](double t) { return density_fn(t, fam); }, composite_gauss_grid(1.0, hi, 256));
    const double ln2 = std::numbers::ln2;
    CHECK(m == doctest::Approx(ln2 * ln2).epsilon(1e-12));
  }
}

TEST_CASE("reciprocal identity of the density family") {
  const double t = 2.0;
  CHECK(check_density_reciprocal_identity({0.5, 2.0, 1}, std::vector<double>{t}) < 1e-15);
  CHECK(check_density_reciprocal_identity({0.5, 2.0, 3}, std::vector<double>{1.0}) == 0.0);
  for (unsigned n = 1; n <= 5; ++n) {
    const DensityFamily fam{0.5, 2.0, n};
    const auto grid = log_spaced_interior(fam, 1000);
    REQUIRE(grid.size() == 1000);
    CHECK(grid.front() > fam.support_lo());
    CHECK(grid.back() < fam.support_hi());
    CHECK(check_density_reciprocal_identity(fam, grid) <= 1e-12);
  }
}

TEST_CASE("reflection integrals against an independent closed form") {
  // g = 1, n = 1: I1 = int_{1/2}^{2} x |ln x| dx has antiderivative
  // x^2 ln x / 2 - x^2 / 4 on each side of 1
  auto anti = [](double x) { return x * x * std::log(x) / 2.0 - x * x / 4.0; };
  const double exact = (anti(0.5) - anti(1.0)) + (anti(2.0) - anti(1.0));
  const IntegralIdentityReport r = check_reflection_integral_identity(AnalyticPolynomial{1.0}, {0.5, 2.0, 1});
  CHECK(r.i1 == doctest::Approx(exact).epsilon(1e-12));
  CHECK(r.rel_defect <= 1e-10);
  CHECK(r.converged);

  const IntegralIdentityReport x = check_reflection_integral_identity(AnalyticPolynomial{0.0, 1.0}, {0.5, 2.0, 1});
  CHECK(x.rel_defect <= 1e-10);
  CHECK(code_of([] { check_reflection_integral_identity(AnalyticPolynomial{}, {0.5, 2.0, 1}); }) ==
        ErrorCode::DegenerateIntegral);
}

TEST_CASE("reflection identity for random polynomials") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Complex> c(1 + trial % 5);
    for (Complex& z : c) z = rng.complex_normal();
    const unsigned n = 1 + static_cast<unsigned>(trial % 3);
    const IntegralIdentityReport r = check_reflection_integral_identity(AnalyticPolynomial(c), {0.5, 2.0, n});
    CHECK(r.panels >= 2048);
    CHECK(r.rel_defect <= 1e-8);
  }
}

TEST_CASE("spectral radius examples") {
  const DenseOperator s = make_weighted_backward_shift(WeightedShiftSpec::from_rule(16, SequenceRule::reciprocal()));
  CHECK(spectral_radius_estimate(s, RadiusMode::Eigen) == 0.0);
  BlockPerturbationSpec spec;
  spec.block_count = 9;
  CHECK(spectral_radius_estimate(make_block_perturbation(spec), RadiusMode::Eigen) ==
        doctest::Approx(1.0 - 1.0 / 3.0).epsilon(1e-12));
  CHECK(spectral_radius_estimate(DenseOperator::identity(4), RadiusMode::Eigen) == doctest::Approx(1.0));
  CHECK(spectral_radius_estimate(DenseOperator::identity(4), RadiusMode::Gelfand) == doctest::Approx(1.0));
  // nilpotent: the 16th power vanishes
  CHECK(spectral_radius_estimate(s, RadiusMode::Gelfand, 16) == 0.0);
}

TEST_CASE("gelfand estimates bound the eigen radius and decrease for normal operators") {
  SplitMix64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseOperator t = testing::random_operator(rng, 10);
    const double eig = spectral_radius_estimate(t, RadiusMode::Eigen);
    for (unsigned n : {1u, 4u, 32u, 128u}) CHECK(spectral_radius_estimate(t, RadiusMode::Gelfand, n) >= eig - 1e-8);

    std::vector<Complex> d(10);
    for (Complex& z : d) z = rng.complex_normal();
    const DenseOperator normal = DenseOperator::diagonal(d);
    for (unsigned n : {1u, 2u, 8u, 32u})
      CHECK(spectral_radius_estimate(normal, RadiusMode::Gelfand, 2 * n) <=
            spectral_radius_estimate(normal, RadiusMode::Gelfand, n) + 1e-8);
  }
  // very large powers stay finite
  CHECK(spectral_radius_estimate(3.0 * DenseOperator::identity(3), RadiusMode::Gelfand, 4096) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

}
