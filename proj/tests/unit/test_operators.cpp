#include <cmath>

#include "support.hpp"

#include "chaoskit/operators.hpp"

using namespace chaoskit;
using testing::code_of;

TEST_SUITE("operators") {

TEST_CASE("sequence rules") {
  CHECK(SequenceRule::parse("1/n")(4) == 0.25);
  CHECK(SequenceRule::parse("const:0.3")(17) == 0.3);
  CHECK(std::abs(SequenceRule::parse("pow:-0.5")(9) - 1.0 / 3.0) < 1e-16);
  for (const char* bad : {"", "1/m", "const:", "pow:x", "const:0.5z", "sqrt"})
    CHECK(code_of([&] { SequenceRule::parse(bad); }).has_value());
}

TEST_CASE("weighted backward shift examples") {
  CHECK(make_weighted_backward_shift(WeightedShiftSpec::unit(3)) ==
        DenseOperator{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}});
  const DenseOperator s = make_weighted_backward_shift(WeightedShiftSpec::from_rule(4, SequenceRule::reciprocal()));
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 2) == 0.5);
  CHECK(std::abs(s(2, 3) - 1.0 / 3.0) < 1e-16);
  CHECK(frobenius_norm(s) == doctest::Approx(std::sqrt(1.0 + 0.25 + 1.0 / 9.0)));
  const double e = 0.3;
  CHECK(make_weighted_backward_shift({2, {2.0 * e}}) == DenseOperator{{0.0, 2.0 * e}, {0.0, 0.0}});
}

TEST_CASE("weighted shift rejects zero weights") {
  CHECK(code_of([] { make_weighted_backward_shift({3, {1.0, 0.0}}); }) == ErrorCode::InvalidWeights);
}

TEST_CASE("truncated shift is nilpotent of order N") {
  for (std::size_t n : {1u, 2u, 5u, 16u}) {
    const DenseOperator s = make_weighted_backward_shift(WeightedShiftSpec::from_rule(n, SequenceRule::reciprocal()));
    CHECK(power(s, static_cast<unsigned>(n)) == DenseOperator::zero(n));
    if (n > 1) CHECK(power(s, static_cast<unsigned>(n - 1)) != DenseOperator::zero(n));
  }
}

TEST_CASE("scalar perturbation examples") {
  SplitMix64 rng(2);
  const DenseOperator t = testing::random_operator(rng, 4);
  CHECK(scalar_perturb(0.0, t) == t);
  CHECK(scalar_perturb(1.0, DenseOperator::zero(2)) == DenseOperator::identity(2));
  const double e = 0.25;
  DenseOperator padded = DenseOperator::zero(2);
  padded(0, 1) = 2.0 * e;
  CHECK(scalar_perturb(1.0 - e, padded) == make_perturbation_block(2, e, 1.0));
}

TEST_CASE("block perturbation examples") {
  BlockPerturbationSpec one;
  one.block_count = 1;
  one.epsilon = [](std::size_t) { return 0.5; };
  CHECK(make_block_perturbation(one) == DenseOperator{{0.5}});

  BlockPerturbationSpec two;
  two.block_count = 2;
  two.block_size = [](std::size_t j) { return j; };
  const DenseOperator t = make_block_perturbation(two);
  const double e2 = 1.0 / std::sqrt(2.0);
  REQUIRE(t.dim() == 3);
  CHECK(t(0, 0) == 0.0);
  CHECK(std::abs(t(1, 1) - (1.0 - e2)) < 1e-16);
  CHECK(std::abs(t(2, 2) - (1.0 - e2)) < 1e-16);
  CHECK(std::abs(t(1, 2) - 2.0 * e2) < 1e-16);
  CHECK(t(0, 1) == 0.0);
  CHECK(t(0, 2) == 0.0);
}

TEST_CASE("block layout is contiguous and capped") {
  BlockPerturbationSpec s;
  s.block_count = 10;
  const auto layout = block_layout(s);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    CHECK(layout[k].index == k + 1);
    CHECK(layout[k].offset == offset);
    CHECK(layout[k].size == k + 1);
    offset += layout[k].size;
  }
  s.dim_cap = 54;
  CHECK(code_of([&] { block_layout(s); }) == ErrorCode::DimensionCap);
}

TEST_CASE("block spectrum is the block diagonal") {
  BlockPerturbationSpec s;
  s.block_count = 9;
  const DenseOperator t = make_block_perturbation(s);
  for (const auto& b : block_layout(s))
    for (std::size_t i = 0; i < b.size; ++i) CHECK(std::abs(t(b.offset + i, b.offset + i) - (1.0 - b.epsilon)) < 1e-15);
  double rho = 0.0;
  for (const Complex& z : eigenvalues(t)) rho = std::max(rho, std::abs(z));
  CHECK(std::abs(rho - (1.0 - 1.0 / 3.0)) < 1e-10);
}

TEST_CASE("closed-form block inverse examples") {
  CHECK(std::abs(block_inverse_closed_form(1, 0.25, 1.0)(0, 0) - 1.0 / 0.75) < 1e-15);
  const DenseOperator expect = (1.0 / 0.75) * DenseOperator{{1.0, -0.5 / 0.75}, {0.0, 1.0}};
  CHECK(testing::max_abs_diff(block_inverse_closed_form(2, 0.25, 1.0), expect) < 1e-15);
  CHECK(code_of([] { block_inverse_closed_form(3, 0.5, 0.5); }) == ErrorCode::SingularBlock);
}

TEST_CASE("closed-form block inverse agrees with brute-force inversion") {
  for (double eps : {0.1, 0.5})
    for (Complex lambda : {Complex{1.0}, Complex{2.0, 0.5}, Complex{-1.5}})
      for (std::size_t j : {1u, 3u, 8u, 20u, 40u}) {
        const DenseOperator block = make_perturbation_block(j, eps, lambda);
        const DenseOperator inv = block_inverse_closed_form(j, eps, lambda);
        CHECK(testing::max_abs_diff(inv * block, DenseOperator::identity(j)) <= 1e-10 * static_cast<double>(j));
        if (j <= 8) {
          const DenseOperator brute = invert(block);
          CHECK(testing::max_abs_diff(inv, brute) <= 1e-10 * max_abs_entry(brute));
        }
      }
}

TEST_CASE("closed-form block inverse of an ill-conditioned block") {
  // lambda - eps = 0.3 makes the entries grow like 4.7^k; the residual is
  // measured against the entry scale
  for (std::size_t j : {10u, 20u, 40u}) {
    const DenseOperator block = make_perturbation_block(j, 0.7, 1.0);
    const DenseOperator inv = block_inverse_closed_form(j, 0.7, 1.0);
    const double scale = max_abs_entry(inv) * max_abs_entry(block);
    CHECK(testing::max_abs_diff(inv * block, DenseOperator::identity(j)) <= 1e-14 * static_cast<double>(j) * scale);
  }
}

TEST_CASE("inverse block powers match repeated inversion") {
  for (unsigned m : {1u, 2u, 5u, 12u}) {
    const DenseOperator direct = power(block_inverse_closed_form(6, 0.3, 1.0), m);
    const DenseOperator closed = block_inverse_power(6, 0.3, 1.0, m);
    CHECK(testing::max_abs_diff(direct, closed) <= 1e-12 * max_abs_entry(direct));
  }
}

TEST_CASE("block unit vectors") {
  BlockPerturbationSpec s;
  s.block_count = 4;
  const auto layout = block_layout(s);
  const StateVector f = block_unit_vector(layout, 10, 3);
  CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < 10; ++i) CHECK((f[i] != Complex{}) == (i >= 3 && i < 6));
}

TEST_CASE("star number examples") {
  CHECK(star_number(3, 1).value == 6);
  CHECK(star_number(3, 2).value == 10);
  for (unsigned m = 0; m < 6; ++m) CHECK(star_number(1, m).value == 1);
}

TEST_CASE("star numbers satisfy the partial-sum recursion and the binomial form") {
  for (unsigned j = 1; j <= 30; ++j)
    for (unsigned m = 0; m <= 6; ++m) {
      BigInt sum = 0;
      for (unsigned k = 1; k <= j; ++k) sum += star_number(k, m).value;
      CHECK(star_number(j, m + 1).value == sum);
      CHECK(star_number(j, m).value == binomial(j + m, m + 1));
    }
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("multiplication truncation examples") {
  const DenseOperator mz = make_multiplication_truncation(AnalyticPolynomial{0.0, 1.0}, 3);
  CHECK(mz == DenseOperator{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  CHECK(adjoint(mz) == make_weighted_backward_shift(WeightedShiftSpec::unit(3)));
  CHECK(make_multiplication_truncation(AnalyticPolynomial::constant(2.5), 2) == 2.5 * DenseOperator::identity(2));
  const DenseOperator m = make_multiplication_truncation(AnalyticPolynomial{0.5, 0.0, 1.0}, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(m(i, j) == (i == j ? Complex{0.5} : i == j + 2 ? Complex{1.0} : Complex{}));
  CHECK(code_of([] { make_multiplication_truncation(AnalyticPolynomial{0.0, 0.0, 1.0}, 2); }) ==
        ErrorCode::DegreeTooLarge);
}

TEST_CASE("multiplication truncation is multiplicative below the truncation degree") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> a(1 + trial % 4), b(1 + (trial / 4) % 4);
    for (Complex& c : a) c = rng.complex_normal();
    for (Complex& c : b) c = rng.complex_normal();
    const AnalyticPolynomial p(a), q(b);
    const std::size_t n = 12;
    const DenseOperator lhs = make_multiplication_truncation(p * q, n);
    const DenseOperator rhs = make_multiplication_truncation(p, n) * make_multiplication_truncation(q, n);
    CHECK(testing::max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("reproducing kernel vectors") {
  CHECK(reproducing_kernel_vector(0.0, 4) == StateVector::basis(4, 0));
  CHECK(reproducing_kernel_vector(0.5, 3) == StateVector{1.0, 0.5, 0.25});
  const Complex z{0.3, -0.6};
  const StateVector f = reproducing_kernel_vector(z, 5);
  CHECK(std::abs(f[2] - std::conj(z) * std::conj(z)) < 1e-16);
  const double r2 = std::norm(z);
  CHECK(f.norm() * f.norm() == doctest::Approx((1.0 - std::pow(r2, 5)) / (1.0 - r2)).epsilon(1e-14));
  CHECK(code_of([] { reproducing_kernel_vector(1.0, 3); }) == ErrorCode::OutsideDisk);
}

TEST_CASE("lebesgue operator examples") {
  const LebesgueOperator two = make_lebesgue_operator({0.5, 2.0, 2});
  const double x1 = two.midpoints[0], x2 = two.midpoints[1];
  CHECK(x1 == 0.875);
  CHECK(x2 == 1.625);
  CHECK(two.plain == DenseOperator{{0.0, x2}, {x1, 0.0}});
  CHECK(code_of([] { make_lebesgue_operator({0.5, 2.0, 7}); }) == ErrorCode::OddGrid);
  CHECK(code_of([] { make_lebesgue_operator({0.5, 3.0, 8}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lebesgue operator in the weighted inner product") {
  const LebesgueOperator op = make_lebesgue_operator({0.5, 2.0, 64});
  const std::size_t n = 64;
  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = op.midpoints[k];
  const DenseOperator d = DenseOperator::diagonal(x);
  // a real diagonal is self-adjoint for any weights
  CHECK(testing::max_abs_diff(weighted_adjoint(d, op.weights), d) < 1e-15);

  // the weighted gram is diagonal with x_k^2 w_pi(k) / w_k
  const DenseOperator gram = weighted_adjoint(op.plain, op.weights) * op.plain;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = (k + n / 2) % n;
    const double expect = op.midpoints[k] * op.midpoints[k] * op.weights[p] / op.weights[k];
    CHECK(std::abs(gram(k, k) - expect) <= 1e-12 * expect);
  }
  // orthonormal-coordinate form has the same gram up to similarity
  const DenseOperator g2 = adjoint(op.weighted) * op.weighted;
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(g2(k, k) - gram(k, k)) <= 1e-12 * std::abs(gram(k, k)));

  // without weights the gram is D^2 exactly
  const DenseOperator plain_gram = adjoint(op.plain) * op.plain;
  CHECK(testing::max_abs_diff(plain_gram, d * d) == 0.0);
}

}
