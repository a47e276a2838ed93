#include <algorithm>
#include <cmath>
#include <complex>

#include "support.hpp"

using namespace chaoskit;
using testing::code_of;

namespace {

const Complex I{0.0, 1.0};

std::vector<double> sorted_moduli(std::vector<Complex> z) {
  std::vector<double> m;
  for (const Complex& v : z) m.push_back(std::abs(v));
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("adjoint examples") {
  CHECK(adjoint(DenseOperator{{0.0, 1.0}, {0.0, 0.0}}) == DenseOperator{{0.0, 0.0}, {1.0, 0.0}});
  CHECK(adjoint(DenseOperator::identity(3)) == DenseOperator::identity(3));
  CHECK(adjoint(DenseOperator{{I, 0.0}, {0.0, 0.0}}) == DenseOperator{{-I, 0.0}, {0.0, 0.0}});
}

TEST_CASE("adjoint is an involution") {
  SplitMix64 rng(42);
  for (std::size_t n : {1u, 2u, 5u, 17u}) {
    const DenseOperator a = testing::random_operator(rng, n);
    CHECK(adjoint(adjoint(a)) == a);
  }
}

TEST_CASE("invert examples") {
  CHECK(testing::max_abs_diff(invert(DenseOperator::identity(4)), DenseOperator::identity(4)) == 0.0);
  const double e = 0.25;
  const DenseOperator block{{1.0 - e, 2.0 * e}, {0.0, 1.0 - e}};
  const DenseOperator expect = (1.0 / 0.75) * DenseOperator{{1.0, -(0.5 / 0.75)}, {0.0, 1.0}};
  CHECK(testing::max_abs_diff(invert(block), expect) < 1e-15);
  CHECK(testing::max_abs_diff(invert(DenseOperator::diagonal({2.0, 4.0})),
                              DenseOperator::diagonal({0.5, 0.25})) == 0.0);
}

TEST_CASE("invert rejects singular and ill-conditioned input") {
  CHECK(code_of([] { invert(DenseOperator{{1.0, 2.0}, {2.0, 4.0}}); }) == ErrorCode::SingularOperator);
  CHECK(code_of([] { invert(DenseOperator::zero(3)); }) == ErrorCode::SingularOperator);
  CHECK(code_of([] { invert(DenseOperator::diagonal({1.0, 1e-14})); }) == ErrorCode::SingularOperator);
  CHECK(std::isinf(condition_estimate(DenseOperator::zero(2))));
}

TEST_CASE("invert residual on random well-conditioned operators") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 64.0);
    const DenseOperator a = testing::well_conditioned(rng, n);
    REQUIRE(condition_estimate(a) < 1e6);
    const DenseOperator r = invert(a) * a - DenseOperator::identity(n);
    CHECK(frobenius_norm(r) <= 1e-10 * static_cast<double>(n));
  }
}

TEST_CASE("apply examples") {
  SplitMix64 rng(3);
  const StateVector x = testing::random_state(rng, 5);
  CHECK(apply(DenseOperator::identity(5), x) == x);
  const DenseOperator shift{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  CHECK(apply(shift, StateVector::basis(3, 1)) == StateVector::basis(3, 0));
  const StateVector y = apply(DenseOperator{{0.0, 0.2}, {0.0, 0.0}}, StateVector{1.0, 1.0});
  CHECK(std::abs(y[0] - 0.2) < 1e-16);
  CHECK(y[1] == Complex{});
  CHECK(code_of([] { apply(DenseOperator::identity(2), StateVector(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("product matches the triple-loop oracle") {
  SplitMix64 rng(11);
  for (std::size_t n : {1u, 3u, 16u, 40u}) {
    const DenseOperator a = testing::random_operator(rng, n), b = testing::random_operator(rng, n);
    CHECK(testing::max_abs_diff(a * b, testing::naive_product(a, b)) < 1e-12 * static_cast<double>(n));
  }
}

TEST_CASE("power by squaring matches repeated products") {
  SplitMix64 rng(5);
  const DenseOperator a = 0.4 * testing::random_operator(rng, 6);
  DenseOperator p = DenseOperator::identity(6);
  for (unsigned k = 0; k <= 9; ++k) {
    CHECK(testing::max_abs_diff(power(a, k), p) < 1e-13);
    p = p * a;
  }
}

TEST_CASE("eigenvalue examples") {
  auto ev = eigenvalues(DenseOperator::diagonal({1.0, 2.0, 3.0}));
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(ev == std::vector<Complex>{1.0, 2.0, 3.0});

  DenseOperator shift(8);
  for (std::size_t n = 1; n < 8; ++n) shift(n - 1, n) = 1.0 / static_cast<double>(n);
  for (const Complex& z : eigenvalues(shift)) CHECK(z == Complex{});

  for (const Complex& z : eigenvalues(DenseOperator{{0.75, 0.5}, {0.0, 0.75}})) CHECK(z == Complex{0.75});
}

TEST_CASE("eigenvalues reproduce trace and determinant") {
  SplitMix64 rng(19);
  for (std::size_t n : {2u, 5u, 12u, 30u}) {
    const DenseOperator a = testing::random_operator(rng, n);
    const auto ev = eigenvalues(a);
    REQUIRE(ev.size() == n);
    Complex tr{}, prod{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) tr += a(i, i);
    for (const Complex& z : ev) prod *= z;
    Complex sum{};
    for (const Complex& z : ev) sum += z;
    CHECK(std::abs(sum - tr) < 1e-10 * static_cast<double>(n));
    const Complex det = testing::determinant(a);
    CHECK(std::abs(prod - det) < 1e-9 * std::abs(det));
  }
}

TEST_CASE("eigenvalues refuse dimensions above the cap") {
  SplitMix64 rng(1);
  const DenseOperator a = testing::random_operator(rng, 10);
  CHECK(code_of([&] { eigenvalues(a, 8); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("singular value examples") {
  CHECK(singular_values(DenseOperator::identity(3)) == std::vector<double>{1.0, 1.0, 1.0});
  const auto s = singular_values(DenseOperator::diagonal({3.0, -4.0 * I}));
  CHECK(std::abs(s[0] - 4.0) < 1e-15);
  CHECK(std::abs(s[1] - 3.0) < 1e-15);
  const auto t = singular_values(DenseOperator{{0.0, 2.0}, {0.0, 0.0}});
  CHECK(std::abs(t[0] - 2.0) < 1e-15);
  CHECK(t[1] == 0.0);
}

TEST_CASE("singular values are square roots of the gram spectrum") {
  SplitMix64 rng(23);
  for (std::size_t n : {2u, 7u, 20u}) {
    const DenseOperator a = testing::random_operator(rng, n);
    const auto s = singular_values(a);
    std::vector<double> g;
    for (const Complex& z : eigenvalues(adjoint(a) * a)) g.push_back(std::sqrt(std::max(z.real(), 0.0)));
    std::sort(g.rbegin(), g.rend());
    REQUIRE(s.size() == n);
    for (std::size_t k = 0; k < n; ++k) CHECK(testing::rel_close(s[k], g[k], 1e-9));
  }
}

TEST_CASE("svd reconstructs the operator") {
  SplitMix64 rng(29);
  const DenseOperator a = testing::random_operator(rng, 9);
  const SvdResult r = svd(a);
  DenseOperator us = r.u;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) us(i, j) *= r.sigma[j];
  CHECK(testing::max_abs_diff(us * adjoint(r.v), a) < 1e-12);
  CHECK(testing::max_abs_diff(adjoint(r.u) * r.u, DenseOperator::identity(9)) < 1e-12);
  CHECK(std::is_sorted(r.sigma.rbegin(), r.sigma.rend()));
}

TEST_CASE("operator norm examples and submultiplicativity") {
  CHECK(std::abs(operator_norm(DenseOperator::identity(5)) - 1.0) < 1e-15);
  CHECK(std::abs(operator_norm(2.0 * DenseOperator::identity(3)) - 2.0) < 1e-15);
  CHECK(std::abs(operator_norm(DenseOperator{{0.0, 0.6}, {0.0, 0.0}}) - 0.6) < 1e-15);
  SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 12.0);
    const DenseOperator a = testing::random_operator(rng, n), b = testing::random_operator(rng, n);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-10);
  }
}

TEST_CASE("spectral radius never exceeds the operator norm") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseOperator a = testing::random_operator(rng, 8);
    const auto m = sorted_moduli(eigenvalues(a));
    CHECK(m.back() <= operator_norm(a) * (1.0 + 1e-12));
  }
}

TEST_CASE("non-finite input is rejected") {
  DenseOperator a = DenseOperator::identity(2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { require_finite(a, "test"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("rng stream is the documented SplitMix64") {
  // reference outputs for seed 0 of the published algorithm
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

}
