#include <algorithm>
#include <cmath>

#include "support.hpp"

#include "chaoskit/diagnostics.hpp"
#include "chaoskit/operators.hpp"

using namespace chaoskit;
using testing::code_of;

namespace {

BlockPerturbationSpec example_family(std::size_t blocks, std::size_t first = 1) {
  BlockPerturbationSpec s;
  s.block_count = blocks;
  s.first_block = first;
  return s;
}

std::vector<double> log_taus(double lo, double hi, std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k)
    t[k] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
  return t;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("orbit norm examples") {
  SplitMix64 rng(81);
  const StateVector x = testing::random_state(rng, 5);
  const OrbitRecord id = orbit_norms(DenseOperator::identity(5), x, 20);
  REQUIRE(id.norms.size() == 21);
  for (double v : id.norms) CHECK(v == doctest::Approx(x.norm()).epsilon(1e-15));

  const OrbitRecord half = orbit_norms(0.5 * DenseOperator::identity(3), StateVector::basis(3, 0), 40);
  for (std::size_t n = 0; n <= 40; ++n) CHECK(half.norms[n] == std::ldexp(1.0, -static_cast<int>(n)));
  CHECK(half.tail_start == 20);
  CHECK(code_of([] { orbit_norms(DenseOperator::identity(2), StateVector(3), 4); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("block vectors grow before they decay") {
  // ||T^n f_j|| >= (1 + eps_j)^n sqrt((j - n) / j) for n < j: the last
  // column of the binomial expansion contributes (1+eps)^n on j-n coordinates
  const auto spec = example_family(20);
  const DenseOperator t = make_block_perturbation(spec);
  const auto layout = block_layout(spec);
  const std::size_t j = 16;
  const double eps = layout[j - 1].epsilon;
  CHECK(eps == 0.25);
  const OrbitRecord r = orbit_norms(t, block_unit_vector(layout, t.dim(), j), 60);
  for (std::size_t n = 1; n < j; ++n) {
    const double bound = std::pow(1.0 + eps, static_cast<double>(n)) *
                         std::sqrt(static_cast<double>(j - n) / static_cast<double>(j));
    CHECK(r.norms[n] >= bound * (1.0 - 1e-12));
  }
  CHECK(r.peak() > 10.0);
  CHECK(r.norms.back() < r.peak());
}

TEST_CASE("orbit norms are homogeneous") {
  SplitMix64 rng(83);
  const DenseOperator t = make_block_perturbation(example_family(10));
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector x = testing::random_state(rng, t.dim());
    const Complex alpha = 3.0 * rng.complex_normal();
    const OrbitRecord a = orbit_norms(t, x, 100), b = orbit_norms(t, alpha * x, 100);
    for (std::size_t n = 0; n <= 100; ++n) CHECK(testing::rel_close(b.norms[n], std::abs(alpha) * a.norms[n], 1e-12));
  }
}

TEST_CASE("overflow stops the orbit") {
  const OrbitRecord r = orbit_norms(1e61 * DenseOperator::identity(2), StateVector::basis(2, 0), 20);
  REQUIRE(r.overflowed());
  CHECK(*r.overflow_index == 5);
  CHECK(r.norms.size() == 6);
  CHECK(li_yorke_evidence(r).kind == VerdictKind::Inconclusive);
}

TEST_CASE("log orbit norms match direct norms and survive long horizons") {
  const DenseOperator t = make_block_perturbation(example_family(8));
  const StateVector x = block_unit_vector(block_layout(example_family(8)), t.dim(), 6);
  const auto lg = log_orbit_norms(t, x, 3000);
  const OrbitRecord r = orbit_norms(t, x, 200);
  for (std::size_t n = 0; n <= 200; ++n)
    if (r.norms[n] > 1e-250) CHECK(lg[n] == doctest::Approx(std::log10(r.norms[n])).epsilon(1e-10));
  CHECK(std::isfinite(lg.back()));
  CHECK(lg.back() < -100.0);
}

TEST_CASE("li-yorke evidence examples") {
  SplitMix64 rng(85);
  const StateVector x = testing::random_state(rng, 4);
  CHECK(li_yorke_evidence(DenseOperator::identity(4), x, 100).kind == VerdictKind::NoEvidence);
  CHECK(li_yorke_evidence(0.5 * DenseOperator::identity(4), x, 100).kind == VerdictKind::NoEvidence);
}

TEST_CASE("composite block vector rises and then vanishes") {
  const auto spec = example_family(36);
  const auto layout = block_layout(spec);
  const DenseOperator t = make_block_perturbation(spec);
  StateVector x(t.dim());
  for (std::size_t j = 1; j <= 36; ++j)
    x += (1.0 / static_cast<double>(j * j)) * block_unit_vector(layout, t.dim(), j);
  const ChaosVerdict v = li_yorke_evidence(t, x, 800);
  CHECK(v.kind == VerdictKind::LiYorkeEvidence);
  CHECK(v.limsup_est > 10.0 * x.norm());
  CHECK(v.liminf_est < 1e-6 * x.norm());
  REQUIRE(v.witness.has_value());
}

TEST_CASE("contracting triangular operators show no evidence") {
  SplitMix64 rng(87);
  for (int trial = 0; trial < 10; ++trial) {
    DenseOperator t(12);
    for (std::size_t i = 0; i < 12; ++i) {
      t(i, i) = std::polar(rng.uniform(0.0, 0.8), rng.uniform(0.0, 6.28));
      for (std::size_t j = i + 1; j < 12; ++j) t(i, j) = 0.3 * rng.complex_normal();
    }
    const StateVector x = testing::random_state(rng, 12);
    const OrbitRecord r = orbit_norms(t, x, 400);
    CHECK(r.norms.back() <= 1e3 * x.norm() * std::pow(0.9, 400.0));
    CHECK(li_yorke_evidence(r).kind == VerdictKind::NoEvidence);
  }
}

TEST_CASE("operators bounded below by one never shrink orbits") {
  SplitMix64 rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    DenseOperator t = testing::random_operator(rng, 10);
    t *= 1.0 / singular_values(t).back();
    const StateVector x = testing::random_state(rng, 10);
    const OrbitRecord r = orbit_norms(t, x, 60);
    for (double v : r.norms) CHECK(v >= x.norm() * (1.0 - 1e-12));
  }
}

TEST_CASE("distributional profile of a contraction") {
  const StateVector x = StateVector::basis(2, 0);
  const DistributionalProfile p = distributional_profile(0.5 * DenseOperator::identity(2), x, 64, {0.1});
  // F^n(0.1) = (n - 3) / (n + 1) over the tail window [32, 64]
  CHECK(p.tail_start == 32);
  CHECK(p.f_lower[0] == doctest::Approx(29.0 / 33.0).epsilon(1e-15));
  CHECK(p.f_upper[0] == doctest::Approx(61.0 / 65.0).epsilon(1e-15));
  // at H = 64 the envelopes still differ by 61/65 - 29/33 > eta; by H = 256 they are within eta
  const DistributionalProfile q = distributional_profile(0.5 * DenseOperator::identity(2), x, 256, {0.1});
  CHECK(q.f_upper[0] - q.f_lower[0] < 0.05);
  CHECK(classify_dc(q).cls == DcClass::None);
}

TEST_CASE("distributional profile of the identity and a dilation") {
  const StateVector x = StateVector::basis(3, 1);
  const auto taus = log_taus(-3.0, -0.01, 10);
  const DistributionalProfile id = distributional_profile(DenseOperator::identity(3), x, 100, taus);
  for (std::size_t k = 0; k < taus.size(); ++k) {
    CHECK(id.f_lower[k] == 0.0);
    CHECK(id.f_upper[k] == 0.0);
  }
  CHECK(classify_dc(id).cls == DcClass::None);
  const DistributionalProfile grow = distributional_profile(2.0 * DenseOperator::identity(3), x, 100, {1.0});
  CHECK(grow.f_upper[0] == 0.0);
}

TEST_CASE("profile envelopes are monotone and bounded") {
  SplitMix64 rng(91);
  const auto spec = example_family(16);
  const DenseOperator t = make_block_perturbation(spec);
  const auto taus = log_taus(-8.0, 2.0, 41);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector x = testing::random_state(rng, t.dim());
    const DistributionalProfile p = distributional_profile(t, x, 300, taus);
    for (std::size_t k = 0; k < taus.size(); ++k) {
      CHECK(0.0 <= p.f_lower[k]);
      CHECK(p.f_lower[k] <= p.f_upper[k]);
      CHECK(p.f_upper[k] <= 1.0);
      if (k > 0) {
        CHECK(p.f_lower[k] >= p.f_lower[k - 1]);
        CHECK(p.f_upper[k] >= p.f_upper[k - 1]);
      }
    }
  }
}

TEST_CASE("dc classification readings") {
  DistributionalProfile p;
  p.horizon = 100;
  p.tail_start = 50;
  p.tau_grid = {0.1, 1.0, 10.0};
  p.f_lower = {0.2, 0.5, 0.9};
  p.f_upper = p.f_lower;
  CHECK(classify_dc(p).cls == DcClass::None);

  p.f_upper = {0.2, 0.7, 0.9};
  CHECK(classify_dc(p).cls == DcClass::DC3);
  p.f_upper = {0.97, 0.98, 1.0};
  CHECK(classify_dc(p).cls == DcClass::DC2);
  p.f_lower = {0.0, 0.5, 0.9};
  const DcVerdict v = classify_dc(p);
  CHECK(v.cls == DcClass::DC1);
  CHECK(v.max_gap == doctest::Approx(0.97));
  CHECK(!v.reading.empty());
}

TEST_CASE("criterion search examples") {
  const CriterionEvidence half =
      criterion_search(0.5 * DenseOperator::identity(3), {StateVector::basis(3, 0)}, 1.0, 100);
  CHECK(half.vanishing_set == std::vector<std::size_t>{0});
  CHECK(half.unbounded_pairs.empty());
  CHECK(!half.witnessed);

  const CriterionEvidence id = criterion_search(DenseOperator::identity(3), {StateVector::basis(3, 2)}, 1.0, 100);
  CHECK(id.vanishing_set.empty());
  CHECK(!id.witnessed);
}

TEST_CASE("criterion search witnesses the block family") {
  const auto spec = example_family(36);
  const auto layout = block_layout(spec);
  const DenseOperator t = make_block_perturbation(spec);
  std::vector<StateVector> cands;
  for (std::size_t j = 1; j <= 36; ++j) cands.push_back(block_unit_vector(layout, t.dim(), j));
  const CriterionEvidence ev = criterion_search(t, cands, 1.0, 800);
  CHECK(ev.witnessed);
  CHECK(ev.escalation >= 1e3);
  CHECK(ev.vanishing_set.size() >= 30);
  double last = 0.0;
  for (const UnboundedPair& p : ev.unbounded_pairs) {
    CHECK(cands[p.candidate].norm() <= 1.0 + 1e-12);
    CHECK(p.norm > last);
    last = p.norm;
  }
}

TEST_CASE("inverse orbit floors") {
  SplitMix64 rng(93);
  const StateVector x = testing::random_state(rng, 3);
  const auto contracting = inverse_orbit_floor(2.0 * DenseOperator::identity(3), {x}, 60);
  CHECK(contracting[0].floor == doctest::Approx(x.norm() * std::pow(0.5, 60)).epsilon(1e-12));
  CHECK(contracting[0].argmin == 60);

  // the first block alone: a single eigenvalue 1 - eps_1 below one
  BlockPerturbationSpec one;
  one.block_count = 1;
  one.epsilon = [](std::size_t) { return 0.5; };
  const auto single = inverse_orbit_floor(make_block_perturbation(one), {StateVector{1.0}}, 30);
  CHECK(single[0].floor == 1.0);
  CHECK(single[0].argmin == 0);
  CHECK(single[0].log10_final == doctest::Approx(30.0 * std::log10(2.0)));

  CHECK(code_of([] { inverse_orbit_floor(DenseOperator::zero(2), {StateVector{1.0, 0.0}}, 5); }) ==
        ErrorCode::SingularOperator);
}

TEST_CASE("inverse orbits of the block family are bounded below and diverge") {
  // block 1 has eps_1 = 1 and is singular, so the family starts at block 2
  const auto spec = example_family(35, 2);
  const DenseOperator t = make_block_perturbation(spec);
  SplitMix64 rng(95);
  std::vector<StateVector> xs;
  for (int k = 0; k < 5; ++k) xs.push_back(testing::random_state(rng, t.dim()));
  for (const InverseFloor& f : inverse_orbit_floor(t, xs, 200)) {
    CHECK(f.floor > 0.0);
    CHECK(f.log10_final >= 2.0 + std::log10(xs[0].norm()) - 1.0);
  }
}

TEST_CASE("block orbit floors agree with direct orbits") {
  const auto spec = example_family(12, 2);
  const auto layout = block_layout(spec);
  const DenseOperator t = make_block_perturbation(spec);
  const DenseOperator a = invert(t);
  SplitMix64 rng(97);
  const StateVector x = testing::random_state(rng, t.dim());
  const BlockOrbitFloors bf = block_orbit_floors(a, layout, x, 80);
  const OrbitRecord r = orbit_norms(a, x, 80);
  const auto it = std::min_element(r.norms.begin(), r.norms.end());
  CHECK(bf.log10_global_floor == doctest::Approx(std::log10(*it)).epsilon(1e-10));
  CHECK(bf.global_argmin == static_cast<std::size_t>(it - r.norms.begin()));
  CHECK(bf.log10_initial == doctest::Approx(std::log10(x.norm())).epsilon(1e-12));
  CHECK(bf.log10_final == doctest::Approx(std::log10(r.norms.back())).epsilon(1e-10));
  REQUIRE(bf.log10_block_floor.size() == layout.size());
  // the global floor never undercuts the largest block floor
  const double best = *std::max_element(bf.log10_block_floor.begin(), bf.log10_block_floor.end());
  CHECK(bf.log10_global_floor >= best - 1e-12);
}

TEST_CASE("first coordinate of the adjoint shift orbit keeps its modulus") {
  const auto spec = WeightedShiftSpec::from_rule(64, SequenceRule::reciprocal());
  const FirstCoordinateReport e0 = first_coordinate_invariance(Complex{0.0, 1.0}, spec, StateVector::basis(64, 0), 100);
  CHECK(e0.max_deviation == 0.0);
  const Complex lambda = std::polar(1.0, 0.7);
  CHECK(first_coordinate_invariance(lambda, spec, StateVector::basis(64, 0), 100).max_deviation <= 1e-13);

  SplitMix64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector x = testing::random_state(rng, 64);
    const FirstCoordinateReport r = first_coordinate_invariance(lambda, spec, x, 100);
    CHECK(r.max_deviation <= 1e-12 * std::abs(x[0]));
    CHECK(r.verdict.kind == VerdictKind::NoEvidence);
    for (double v : r.record.norms) CHECK(v >= std::abs(x[0]) * (1.0 - 1e-12));
  }
  CHECK(code_of([&] { first_coordinate_invariance(0.5, spec, StateVector::basis(64, 0), 10); }) ==
        ErrorCode::NotUnimodular);
}

}
