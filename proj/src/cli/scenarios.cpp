#include "chaoskit/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "chaoskit/chaos_map.hpp"
#include "chaoskit/diagnostics.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/hardy.hpp"
#include "chaoskit/operators.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/spectral.hpp"

namespace chaoskit::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- parameters -----------------------------------------------------------

class Params {
 public:
  Params(std::string_view scenario, Json defaults, const Json& overrides) : values_(std::move(defaults)) {
    if (!overrides.is_object()) throw Error(ErrorCode::InvalidConfig, "parameters must be a JSON object");
    for (const auto& [key, value] : overrides.items()) {
      if (!values_.contains(key))
        throw Error(ErrorCode::InvalidConfig,
                    "scenario '" + std::string(scenario) + "' has no parameter '" + key + "'");
      const Json& def = values_[key];
      const bool ok = def.is_number_integer() ? value.is_number_integer()
                      : def.is_number()       ? value.is_number()
                      : def.is_string()       ? value.is_string()
                                              : def.type() == value.type();
      if (!ok) throw Error(ErrorCode::InvalidConfig, "parameter '" + key + "' has the wrong type");
      values_[key] = value;
    }
  }

  std::size_t size(const char* key) const {
    const std::int64_t v = values_.at(key).get<std::int64_t>();
    if (v <= 0) throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be positive");
    return static_cast<std::size_t>(v);
  }
  double real(const char* key) const {
    const double v = values_.at(key).get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be finite");
    return v;
  }
  std::string text(const char* key) const { return values_.at(key).get<std::string>(); }
  const Json& resolved() const { return values_; }

 private:
  Json values_;
};

// ---- shared helpers -------------------------------------------------------

StateVector random_vector(SplitMix64& rng, std::size_t dim) {
  StateVector x(dim);
  for (Complex& z : x.entries()) z = rng.complex_normal();
  return x;
}

std::string str(std::size_t v) { return std::to_string(v); }

BlockPerturbationSpec block_spec(std::size_t blocks, const std::string& eps_rule, Complex lambda,
                                 bool double_size = false) {
  BlockPerturbationSpec spec;
  spec.lambda = lambda;
  spec.block_count = blocks;
  const SequenceRule eps = SequenceRule::parse(eps_rule);
  spec.epsilon = [eps](std::size_t j) { return eps(j); };
  if (double_size) spec.block_size = [](std::size_t j) { return 2 * j; };
  return spec;
}

std::vector<StateVector> block_candidates(const std::vector<BlockInfo>& layout, std::size_t dim) {
  std::vector<StateVector> c;
  for (const BlockInfo& b : layout) c.push_back(block_unit_vector(layout, dim, b.index));
  return c;
}

// sum_j f_j / j^2
StateVector composite_vector(const std::vector<BlockInfo>& layout, std::size_t dim) {
  StateVector x(dim);
  for (const BlockInfo& b : layout) {
    const double j = static_cast<double>(b.index);
    x += (1.0 / (j * j)) * block_unit_vector(layout, dim, b.index);
  }
  return x;
}

Table orbit_table(const std::string& name, const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  Table t{name, {"n"}, {}};
  std::size_t len = 0;
  for (const auto& [col, values] : series) {
    t.columns.push_back(col);
    len = std::max(len, values.size());
  }
  for (std::size_t n = 0; n < len; ++n) {
    std::vector<std::string> row{str(n)};
    for (const auto& [col, values] : series) row.push_back(n < values.size() ? format_real(values[n]) : "nan");
    t.add_row(std::move(row));
  }
  return t;
}

Table map_table(const std::string& name, const ChaosMap& map) {
  Table t{name, {"re", "im", "verdict", "margin"}, {}};
  for (std::size_t k = 0; k < map.lambdas.size(); ++k)
    t.add_row({format_real(map.lambdas[k].real()), format_real(map.lambdas[k].imag()),
               std::string(to_string(map.verdicts[k])), format_real(map.margin[k])});
  return t;
}

Json map_counts(const ChaosMap& map) {
  Json j = Json::object();
  for (MapVerdict v : {MapVerdict::Decay, MapVerdict::BoundedBelow, MapVerdict::Chaotic,
                       MapVerdict::BoundaryUncertain})
    j[std::string(to_string(v))] = map.count(v);
  return j;
}

void add_verdict(ResultBundle& b, std::string name, bool holds, Json evidence) {
  b.verdicts.push_back({std::move(name), holds, std::move(evidence)});
}

// ---- example2: adjoint of a weighted shift --------------------------------

void run_example2(const Params& p, std::uint64_t seed, ResultBundle& out) {
  const std::size_t dim = p.size("dim"), horizon = p.size("horizon"), samples = p.size("samples"),
                    angles = p.size("angles");
  const WeightedShiftSpec spec = WeightedShiftSpec::from_rule(dim, SequenceRule::parse(p.text("weights")));

  SplitMix64 rng(seed);
  std::vector<StateVector> xs;
  for (std::size_t s = 0; s < samples; ++s) {
    StateVector x = random_vector(rng, dim);
    while (x[0] == Complex{}) x[0] = rng.complex_normal();
    xs.push_back(std::move(x));
  }

  Table rigidity{"adjoint_rigidity",
                 {"angle", "sample", "x0_abs", "min_norm", "max_first_coord_deviation", "verdict"},
                 {}};
  bool floor_ok = true, no_evidence = true;
  double worst_margin = kInf, worst_dev = 0.0;
  for (std::size_t a = 0; a < angles; ++a) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(angles);
    const Complex lambda = std::polar(1.0, theta);
    for (std::size_t s = 0; s < samples; ++s) {
      const FirstCoordinateReport rep = first_coordinate_invariance(lambda, spec, xs[s], horizon);
      const double x0 = std::abs(xs[s][0]);
      const double min_norm = *std::min_element(rep.record.norms.begin(), rep.record.norms.end());
      worst_margin = std::min(worst_margin, min_norm - x0);
      worst_dev = std::max(worst_dev, rep.max_deviation);
      if (!(min_norm >= x0 - 1e-10) || rep.record.norms.size() != horizon + 1) floor_ok = false;
      if (rep.verdict.kind != VerdictKind::NoEvidence) no_evidence = false;
      rigidity.add_row({format_real(theta), str(s), format_real(x0), format_real(min_norm),
                        format_real(rep.max_deviation), std::string(to_string(rep.verdict.kind))});
    }
  }
  out.tables.push_back(std::move(rigidity));

  const DenseOperator shift = make_weighted_backward_shift(spec);
  const OrbitRecord adj = orbit_norms(scalar_perturb(1.0, adjoint(shift)), xs[0], horizon);
  const OrbitRecord fwd = orbit_norms(scalar_perturb(1.0, shift), xs[0], horizon);
  out.tables.push_back(orbit_table("orbit", {{"adjoint_norm", adj.norms}, {"forward_norm", fwd.norms}}));
  out.plots.push_back({"orbit", PlotKind::Orbit});

  add_verdict(out, "adjoint_rigidity", floor_ok && no_evidence,
              {{"orbits", angles * samples},
               {"floor_holds", floor_ok},
               {"all_no_evidence", no_evidence},
               {"min_norm_minus_x0", worst_margin},
               {"max_first_coordinate_deviation", worst_dev}});
}

// ---- example3: block perturbation of the identity -------------------------

void run_example3(const Params& p, std::uint64_t seed, ResultBundle& out) {
  const std::size_t blocks = p.size("blocks"), horizon = p.size("horizon"), samples = p.size("samples");
  const std::string eps_rule = p.text("eps");
  const double bound = p.real("bound");
  const Complex lambda{1.0, 0.0};
  const BlockPerturbationSpec spec = block_spec(blocks, eps_rule, lambda);
  const auto layout = block_layout(spec);
  const DenseOperator t = make_block_perturbation(spec);
  const std::size_t dim = t.dim();

  // growth of single blocks at n = j and decay at the horizon, block by block
  Table growth{"block_growth", {"j", "epsilon", "norm_at_n_eq_j", "bound_1_plus_eps_pow_j", "ratio"}, {}};
  Table decay{"block_decay", {"j", "epsilon", "spectral_radius", "norm_at_horizon"}, {}};
  double rho = 0.0, worst_tail = 0.0;
  for (const BlockInfo& b : layout) {
    const DenseOperator blk = make_perturbation_block(b.size, b.epsilon, lambda);
    StateVector f(b.size);
    for (Complex& z : f.entries()) z = 1.0 / std::sqrt(static_cast<double>(b.size));
    const OrbitRecord rec = orbit_norms(blk, f, std::max(horizon, b.index));
    const double at_j = rec.norms.size() > b.index ? rec.norms[b.index] : kInf;
    const double lit = std::pow(1.0 + b.epsilon, static_cast<double>(b.index));
    growth.add_row({str(b.index), format_real(b.epsilon), format_real(at_j), format_real(lit),
                    format_real(at_j / lit)});
    const double r = spectral_radius_estimate(blk, RadiusMode::Eigen);
    const double tail = rec.norms.size() > horizon ? rec.norms[horizon] : kInf;
    rho = std::max(rho, r);
    worst_tail = std::max(worst_tail, tail);
    decay.add_row({str(b.index), format_real(b.epsilon), format_real(r), format_real(tail)});
  }
  const double expected_rho = std::abs(lambda - layout.back().epsilon);
  out.tables.push_back(std::move(growth));
  out.tables.push_back(std::move(decay));
  add_verdict(out, "decay", std::abs(rho - expected_rho) <= 1e-12 && worst_tail <= 1e-6,
              {{"spectral_radius", rho},
               {"expected_spectral_radius", expected_rho},
               {"max_norm_at_horizon", worst_tail},
               {"horizon", horizon}});

  // forward orbit of the composite vector
  const StateVector x = composite_vector(layout, dim);
  const OrbitRecord rec = orbit_norms(t, x, horizon);
  const ChaosVerdict composite = li_yorke_evidence(rec);
  out.tables.push_back(orbit_table("orbit", {{"composite_norm", rec.norms}}));
  out.plots.push_back({"orbit", PlotKind::Orbit});

  // Li-Yorke criterion over the block vectors
  const auto candidates = block_candidates(layout, dim);
  const CriterionEvidence ev = criterion_search(t, candidates, bound, horizon);
  Table crit{"criterion", {"j", "peak", "floor", "vanishing"}, {}};
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const bool vanishing = std::find(ev.vanishing_set.begin(), ev.vanishing_set.end(), k) != ev.vanishing_set.end();
    crit.add_row({str(layout[k].index), format_real(ev.peaks[k]), format_real(ev.floors[k]), format_bool(vanishing)});
  }
  out.tables.push_back(std::move(crit));
  Json ladder = Json::array();
  for (const UnboundedPair& u : ev.unbounded_pairs)
    ladder.push_back({{"n", u.n}, {"j", layout[u.candidate].index}, {"norm", u.norm}});
  add_verdict(out, "criterion_witnessed", ev.witnessed,
              {{"vanishing_count", ev.vanishing_set.size()},
               {"escalation", ev.escalation},
               {"bound", bound},
               {"ladder", ladder},
               {"composite_vector_verdict", std::string(to_string(composite.kind))},
               {"composite_liminf", composite.liminf_est},
               {"composite_limsup", composite.limsup_est}});

  // inverse orbits on the invertible blocks
  std::size_t first = 1;
  while (first <= blocks && std::abs(lambda - spec.epsilon(first)) <= 1e-12) ++first;
  if (first > blocks) throw Error(ErrorCode::InvalidConfig, "no invertible block in the layout");
  BlockPerturbationSpec inv_spec = spec;
  inv_spec.first_block = first;
  inv_spec.block_count = blocks - first + 1;
  const auto inv_layout = block_layout(inv_spec);
  const DenseOperator a = invert(make_block_perturbation(inv_spec));

  SplitMix64 rng(seed);
  Table floors{"inverse_floors",
               {"sample", "log10_initial", "log10_min_block_floor", "log10_global_floor", "global_argmin",
                "log10_final"},
               {}};
  bool diverge = true;
  double worst_floor_margin = kInf, worst_growth = kInf;
  for (std::size_t s = 0; s < samples; ++s) {
    StateVector y = random_vector(rng, a.dim());
    y *= 1.0 / y.norm();
    const BlockOrbitFloors bf = block_orbit_floors(a, inv_layout, y, horizon);
    const double min_block = *std::min_element(bf.log10_block_floor.begin(), bf.log10_block_floor.end());
    const double floor_margin = bf.log10_global_floor - (std::log10(0.5) + min_block);
    const double growth_margin = bf.log10_final - (2.0 + bf.log10_initial);
    worst_floor_margin = std::min(worst_floor_margin, floor_margin);
    worst_growth = std::min(worst_growth, bf.log10_final - bf.log10_initial);
    if (!(floor_margin >= 0.0) || !(growth_margin >= 0.0)) diverge = false;
    floors.add_row({str(s), format_real(bf.log10_initial), format_real(min_block), format_real(bf.log10_global_floor),
                    str(bf.global_argmin), format_real(bf.log10_final)});
  }
  out.tables.push_back(std::move(floors));
  add_verdict(out, "inverse_divergence", diverge,
              {{"samples", samples},
               {"first_invertible_block", first},
               {"min_log10_floor_margin", worst_floor_margin},
               {"min_log10_growth", worst_growth},
               {"horizon", horizon}});
}

// ---- theorem7: discretized Lebesgue operator ------------------------------

void run_theorem7(const Params& p, std::uint64_t, ResultBundle& out) {
  const std::size_t dim = p.size("dim"), n_max = p.size("n_max"), points = p.size("points");
  const double b = p.real("b");

  Table dens{"density_identity", {"n", "max_defect", "points"}, {}};
  double worst = 0.0;
  for (unsigned n = 1; n <= n_max; ++n) {
    const DensityFamily fam{1.0 / b, b, n};
    const auto grid = log_spaced_interior(fam, points);
    const double d = check_density_reciprocal_identity(fam, grid);
    worst = std::max(worst, d);
    dens.add_row({str(n), format_real(d), str(points)});
  }
  out.tables.push_back(std::move(dens));
  add_verdict(out, "density_identity", worst <= 1e-12, {{"max_defect", worst}, {"tolerance", 1e-12}});

  const LebesgueOperator op = make_lebesgue_operator({1.0 / b, b, dim});
  const DenseOperator& t = op.plain;
  const DenseOperator tstar = adjoint(t);
  const DenseOperator gram = tstar * t, cogram = t * tstar;
  std::vector<Complex> d2(dim);
  for (std::size_t k = 0; k < dim; ++k) d2[k] = op.midpoints[k] * op.midpoints[k];
  DenseOperator perm(dim);
  for (std::size_t k = 0; k < dim; ++k) perm(k, (k + dim / 2) % dim) = 1.0;
  const double gnorm = frobenius_norm(gram);
  const double gram_defect = frobenius_norm(gram - DenseOperator::diagonal(d2)) / gnorm;
  const double conj_defect = frobenius_norm(gram - adjoint(perm) * cogram * perm) / gnorm;
  const double normality_gap = frobenius_norm(gram - cogram) / gnorm;

  std::vector<double> sigma = singular_values(t);
  std::vector<double> mids = op.midpoints;
  std::sort(mids.rbegin(), mids.rend());
  double sv_defect = 0.0;
  for (std::size_t k = 0; k < dim; ++k) sv_defect = std::max(sv_defect, std::abs(sigma[k] - mids[k]));
  const bool in_support = sigma.back() >= 1.0 / b && sigma.front() <= b;
  const ReciprocityReport recip = check_singular_reciprocity(op.weighted, 1e-10);

  Table checks{"operator_checks", {"quantity", "value"}, {}};
  checks.add_row({"gram_minus_x_squared_rel", format_real(gram_defect)});
  checks.add_row({"gram_vs_conjugated_cogram_rel", format_real(conj_defect)});
  checks.add_row({"normality_gap_rel", format_real(normality_gap)});
  checks.add_row({"sigma_min", format_real(sigma.back())});
  checks.add_row({"sigma_max", format_real(sigma.front())});
  checks.add_row({"sigma_vs_grid_max_abs", format_real(sv_defect)});
  checks.add_row({"weighted_reciprocity_defect", format_real(recip.max_rel_defect)});
  out.tables.push_back(std::move(checks));

  add_verdict(out, "non_normal", normality_gap > 1e-6 && conj_defect <= 1e-12,
              {{"normality_gap", normality_gap}, {"conjugation_defect", conj_defect}, {"gram_defect", gram_defect}});
  add_verdict(out, "singular_values_in_support", in_support && sv_defect <= 1e-12,
              {{"sigma_min", sigma.back()}, {"sigma_max", sigma.front()}, {"grid_defect", sv_defect}});
  add_verdict(out, "weighted_reciprocity", recip.holds, {{"max_rel_defect", recip.max_rel_defect}});
}

// ---- theorem13: distributional profile of a block operator ----------------

void run_theorem13(const Params& p, std::uint64_t, ResultBundle& out) {
  const std::size_t blocks = p.size("blocks"), horizon = p.size("horizon"), taus = p.size("taus");
  const BlockPerturbationSpec spec = block_spec(blocks, p.text("eps"), 1.0, true);
  const auto layout = block_layout(spec);
  const DenseOperator t = make_block_perturbation(spec);
  const StateVector x = composite_vector(layout, t.dim());

  const OrbitRecord rec = orbit_norms(t, x, horizon);
  std::vector<double> tau_grid(taus);
  const double lo = p.real("tau_lo_log10"), hi = p.real("tau_hi_log10");
  for (std::size_t k = 0; k < taus; ++k) {
    const double e = taus == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(taus - 1);
    tau_grid[k] = x.norm() * std::pow(10.0, e);
  }
  const DistributionalProfile prof = distributional_profile(rec, tau_grid);
  const DcVerdict dc = classify_dc(prof);

  Table pt{"profile", {"tau", "f_lower", "f_upper"}, {}};
  for (std::size_t k = 0; k < taus; ++k)
    pt.add_row({format_real(prof.tau_grid[k]), format_real(prof.f_lower[k]), format_real(prof.f_upper[k])});
  out.tables.push_back(std::move(pt));
  out.tables.push_back(orbit_table("orbit", {{"composite_norm", rec.norms}}));
  out.plots.push_back({"profile", PlotKind::Profile});
  out.plots.push_back({"orbit", PlotKind::Orbit});

  add_verdict(out, "envelope_gap", dc.cls != DcClass::None,
              {{"class", std::string(to_string(dc.cls))},
               {"max_gap", dc.max_gap},
               {"upper_near_one", dc.upper_near_one},
               {"lower_near_zero", dc.lower_near_zero},
               {"reading", dc.reading},
               {"dimension", t.dim()},
               {"horizon", horizon}});
}

// ---- theorem14: angular dichotomy -----------------------------------------

void run_theorem14(const Params& p, std::uint64_t seed, ResultBundle& out) {
  const std::size_t blocks = p.size("blocks"), horizon = p.size("horizon"), samples = p.size("samples");
  const std::string eps_rule = p.text("eps");
  const double bound = p.real("bound"), target = p.real("target");
  const double pi = std::numbers::pi;
  const std::vector<double> angles{0.0, pi / 4, -pi / 4, 3 * pi / 4, -3 * pi / 4, pi};

  const auto layout = block_layout(block_spec(blocks, eps_rule, 1.0));
  const std::size_t dim = layout.back().offset + layout.back().size;
  SplitMix64 rng(seed);
  std::vector<StateVector> xs;
  for (std::size_t s = 0; s < samples; ++s) xs.push_back(random_vector(rng, dim));
  const auto candidates = block_candidates(layout, dim);

  Table growth{"growth_decay", {"angle", "witnessed", "escalation", "vanishing_count"}, {}};
  Table floors{"floors", {"angle", "sample", "floor_block", "log10_block_norm", "log10_min_orbit", "holds"}, {}};
  bool growth_ok = true, floor_ok = true;
  double min_escalation = kInf, min_floor_margin = kInf;
  for (double theta : angles) {
    const Complex lambda = std::polar(1.0, theta);
    const DenseOperator t = make_block_perturbation(block_spec(blocks, eps_rule, lambda));
    if (std::cos(theta) > 0.0) {
      const CriterionEvidence ev = criterion_search(t, candidates, bound, horizon, target);
      growth_ok = growth_ok && ev.witnessed;
      min_escalation = std::min(min_escalation, ev.escalation);
      growth.add_row({format_real(theta), format_bool(ev.witnessed), format_real(ev.escalation),
                      str(ev.vanishing_set.size())});
      continue;
    }
    // blocks whose smallest singular value is at least 1 give an orbit floor
    std::vector<bool> expanding(layout.size());
    for (std::size_t k = 0; k < layout.size(); ++k)
      expanding[k] = singular_values(make_perturbation_block(layout[k].size, layout[k].epsilon, lambda)).back() >= 1.0;
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t best = layout.size();
      double best_norm = 0.0;
      for (std::size_t k = 0; k < layout.size(); ++k) {
        if (!expanding[k]) continue;
        double sq = 0.0;
        for (std::size_t i = 0; i < layout[k].size; ++i) sq += std::norm(xs[s][layout[k].offset + i]);
        if (std::sqrt(sq) > best_norm) best = k, best_norm = std::sqrt(sq);
      }
      const auto lg = log_orbit_norms(t, xs[s], horizon);
      const double lmin = *std::min_element(lg.begin(), lg.end());
      const double need = best < layout.size() ? std::log10(best_norm * (1.0 - 1e-6)) : kInf;
      const bool holds = lmin >= need;
      floor_ok = floor_ok && holds;
      min_floor_margin = std::min(min_floor_margin, lmin - need);
      floors.add_row({format_real(theta), str(s), best < layout.size() ? str(layout[best].index) : "none",
                      format_real(best < layout.size() ? std::log10(best_norm) : -kInf), format_real(lmin),
                      format_bool(holds)});
    }
  }
  out.tables.push_back(std::move(growth));
  out.tables.push_back(std::move(floors));
  add_verdict(out, "growth_then_decay", growth_ok,
              {{"angles", "0, pi/4, -pi/4"}, {"min_escalation", min_escalation}, {"target", target}, {"horizon", horizon}});
  add_verdict(out, "bounded_below", floor_ok,
              {{"angles", "3pi/4, -3pi/4, pi"}, {"samples", samples}, {"min_log10_floor_margin", min_floor_margin}});
}

// ---- chaos maps -----------------------------------------------------------

struct Annulus {
  std::size_t wrong_inside = 0, wrong_outside = 0, wrong_band = 0;
};

// chaotic on h <= |l| - c <= R - h, not chaotic for |l - c| >= R + h and at c,
// boundary_uncertain only in between
Annulus check_annulus(const ChaosMap& map, Complex centre, double radius) {
  const double h = map.grid.step, tol = 1e-9;
  Annulus a;
  for (std::size_t k = 0; k < map.lambdas.size(); ++k) {
    const double r = std::abs(map.lambdas[k] - centre);
    const MapVerdict v = map.verdicts[k];
    const bool chaotic = v == MapVerdict::Chaotic, uncertain = v == MapVerdict::BoundaryUncertain;
    if (r >= h - tol && r <= radius - h + tol) {
      if (!chaotic) ++a.wrong_inside;
    } else if (r >= radius + h - tol || r <= tol) {
      if (chaotic || uncertain) ++a.wrong_outside;
    } else if (!uncertain) {
      ++a.wrong_band;
    }
  }
  return a;
}

void run_lemma9_map(const Params& p, std::uint64_t, ResultBundle& out) {
  MapRequest req;
  req.family = MapFamily::MultiplicationShift;
  req.grid = MapGrid::parse(p.text("grid"));
  const ChaosMap map = chaos_parameter_map(req);
  out.tables.push_back(map_table("map", map));
  out.plots.push_back({"map", PlotKind::Map});
  const Annulus a = check_annulus(map, 0.0, 2.0);
  add_verdict(out, "chaotic_set_is_punctured_disk", a.wrong_inside + a.wrong_outside + a.wrong_band == 0,
              {{"radius", 2.0},
               {"wrong_inside", a.wrong_inside},
               {"wrong_outside", a.wrong_outside},
               {"determinate_in_band", a.wrong_band},
               {"counts", map_counts(map)}});
}

struct DiskSplit {
  std::size_t wrong = 0, chaotic = 0;
};

// decay for |l| < 1 - h, bounded_below for |l| > 1 + h, never chaotic
DiskSplit check_unit_split(const ChaosMap& map, Complex centre) {
  const double h = map.grid.step, tol = 1e-9;
  DiskSplit d;
  for (std::size_t k = 0; k < map.lambdas.size(); ++k) {
    const double r = std::abs(map.lambdas[k] - centre);
    const MapVerdict v = map.verdicts[k];
    if (v == MapVerdict::Chaotic) ++d.chaotic;
    if (r < 1.0 - h - tol && v != MapVerdict::Decay) ++d.wrong;
    if (r > 1.0 + h + tol && v != MapVerdict::BoundedBelow) ++d.wrong;
  }
  return d;
}

void run_lemma8_map(const Params& p, std::uint64_t, ResultBundle& out) {
  const std::size_t dim = p.size("dim");
  const DenseOperator shift =
      make_weighted_backward_shift(WeightedShiftSpec::from_rule(dim, SequenceRule::parse(p.text("weights"))));
  MapRequest req;
  req.family = MapFamily::SpectralBounds;
  req.grid = MapGrid::parse(p.text("grid"));
  req.base = shift;
  const ChaosMap m = chaos_parameter_map(req);
  req.base = adjoint(shift);
  const ChaosMap ma = chaos_parameter_map(req);
  out.tables.push_back(map_table("map", m));
  out.tables.push_back(map_table("adjoint_map", ma));
  out.plots.push_back({"map", PlotKind::Map});

  const DiskSplit ds = check_unit_split(m, 0.0), da = check_unit_split(ma, 0.0);
  add_verdict(out, "shift_regions", ds.wrong == 0 && ds.chaotic == 0,
              {{"misclassified", ds.wrong}, {"chaotic", ds.chaotic}, {"counts", map_counts(m)}});
  add_verdict(out, "adjoint_regions", da.wrong == 0 && da.chaotic == 0,
              {{"misclassified", da.wrong}, {"chaotic", da.chaotic}, {"counts", map_counts(ma)}});

  // direct sum of the shift moved to centre c and the unweighted shift of
  // the multiplication family: union of the two maps
  const double c = p.real("offset");
  MapRequest shifted;
  shifted.family = MapFamily::SpectralBounds;
  shifted.grid = MapGrid::parse(p.text("union_grid"));
  shifted.base = scalar_perturb(-c, shift);
  MapRequest mult;
  mult.family = MapFamily::MultiplicationShift;
  mult.grid = shifted.grid;
  const ChaosMap left = chaos_parameter_map(shifted), right = chaos_parameter_map(mult);
  const ChaosMap u = chaos_map_union(left, right);
  out.tables.push_back(map_table("union_map", u));
  out.plots.push_back({"union_map", PlotKind::Map});

  std::size_t on_circle = 0, circle_unresolved = 0, stray_chaotic = 0;
  for (std::size_t k = 0; k < u.lambdas.size(); ++k) {
    const double r = std::abs(u.lambdas[k] - c);
    if (std::abs(r - 1.0) <= 1e-9) {
      ++on_circle;
      if (u.verdicts[k] == MapVerdict::BoundaryUncertain || u.verdicts[k] == MapVerdict::Chaotic) ++circle_unresolved;
    }
    if (u.verdicts[k] == MapVerdict::Chaotic && right.verdicts[k] != MapVerdict::Chaotic) ++stray_chaotic;
  }
  const DiskSplit dl = check_unit_split(left, Complex{c, 0.0});
  add_verdict(out, "union_components", dl.wrong == 0 && stray_chaotic == 0 && on_circle == circle_unresolved &&
                                            u.count(MapVerdict::Chaotic) > 0,
              {{"circle_centre", c},
               {"circle_grid_points", on_circle},
               {"circle_points_marked_uncertain_or_chaotic", circle_unresolved},
               {"chaotic_outside_disk_component", stray_chaotic},
               {"shifted_component_misclassified", dl.wrong},
               {"counts", map_counts(u)}});
}

// ---- theorem5_check: singular-value reciprocity and polar factors ---------

void run_theorem5(const Params& p, std::uint64_t seed, ResultBundle& out) {
  const std::size_t trials = p.size("trials"), dim = p.size("dim");
  SplitMix64 rng(seed);
  Table t{"trials",
          {"trial", "max_rel_defect", "reciprocity_holds", "polar_residual_rel", "unitarity_defect", "min_eig_p",
           "polar_holds"},
          {}};
  std::size_t recip_pass = 0, polar_pass = 0;
  double worst_recip = 0.0, worst_polar = 0.0, worst_unit = 0.0, min_eig = kInf;
  for (std::size_t k = 0; k < trials; ++k) {
    DenseOperator m(dim);
    for (Complex& z : m.entries()) z = rng.complex_normal();
    const ReciprocityReport r = check_singular_reciprocity(m, 1e-10);
    const PolarDecomposition pd = polar_decompose(m);
    const double res = operator_norm(pd.u * pd.p - m) / operator_norm(m);
    const double unit = operator_norm(adjoint(pd.u) * pd.u - DenseOperator::identity(dim));
    double emin = kInf;
    for (const Complex& e : eigenvalues(pd.p)) emin = std::min(emin, e.real());
    const bool polar_ok = res <= 1e-10 && unit <= 1e-10 && emin >= -1e-10;
    recip_pass += r.holds;
    polar_pass += polar_ok;
    worst_recip = std::max(worst_recip, r.max_rel_defect);
    worst_polar = std::max(worst_polar, res);
    worst_unit = std::max(worst_unit, unit);
    min_eig = std::min(min_eig, emin);
    t.add_row({str(k), format_real(r.max_rel_defect), format_bool(r.holds), format_real(res), format_real(unit),
               format_real(emin), format_bool(polar_ok)});
  }
  out.tables.push_back(std::move(t));
  add_verdict(out, "reciprocity_all_pass", recip_pass == trials,
              {{"passed", recip_pass}, {"trials", trials}, {"max_rel_defect", worst_recip}, {"tolerance", 1e-10}});
  add_verdict(out, "polar_all_pass", polar_pass == trials,
              {{"passed", polar_pass},
               {"trials", trials},
               {"max_residual_rel", worst_polar},
               {"max_unitarity_defect", worst_unit},
               {"min_eigenvalue_p", min_eig}});
}

// ---- theorem6_check: reflection integral identity -------------------------

void run_theorem6(const Params& p, std::uint64_t, ResultBundle& out) {
  const std::size_t n_max = p.size("n_max");
  const double b = p.real("b");
  const std::vector<std::pair<std::string, AnalyticPolynomial>> gs{
      {"1", AnalyticPolynomial{1.0}},
      {"x", AnalyticPolynomial{0.0, 1.0}},
      {"x^2", AnalyticPolynomial{0.0, 0.0, 1.0}},
      {"1+x^3", AnalyticPolynomial{1.0, 0.0, 0.0, 1.0}}};
  Table t{"integrals", {"g", "n", "i1", "i2", "rel_defect", "panels", "converged"}, {}};
  double worst = 0.0;
  bool all_converged = true;
  for (const auto& [label, g] : gs) {
    for (unsigned n = 1; n <= n_max; ++n) {
      const IntegralIdentityReport r = check_reflection_integral_identity(g, {1.0 / b, b, n});
      worst = std::max(worst, r.rel_defect);
      all_converged = all_converged && r.converged;
      t.add_row({label, str(n), format_real(r.i1), format_real(r.i2), format_real(r.rel_defect), str(r.panels),
                 format_bool(r.converged)});
    }
  }
  out.tables.push_back(std::move(t));
  add_verdict(out, "identity_holds", worst <= 1e-8,
              {{"max_rel_defect", worst}, {"tolerance", 1e-8}, {"all_converged", all_converged}});
}

// ---- registry -------------------------------------------------------------

using Runner = std::function<void(const Params&, std::uint64_t, ResultBundle&)>;

struct Scenario {
  std::string_view name;
  std::string_view description;
  Json (*defaults)();
  Runner run;
};

const std::vector<Scenario>& registry() {
  static const std::vector<Scenario> r{
      {"example2", "adjoint of a weighted backward shift keeps its first coordinate",
       [] { return Json{{"dim", 64}, {"horizon", 100}, {"samples", 10}, {"weights", "1/n"}, {"angles", 4}}; },
       run_example2},
      {"example3", "identity plus block perturbation: growth, decay, inverse divergence",
       [] {
         return Json{{"blocks", 36}, {"eps", "pow:-0.5"}, {"horizon", 800}, {"samples", 20}, {"bound", 1.0}};
       },
       run_example3},
      {"theorem7", "discretized non-normal Lebesgue operator and density identity",
       [] { return Json{{"dim", 64}, {"b", 2.0}, {"n_max", 5}, {"points", 1000}}; }, run_theorem7},
      {"theorem13", "distributional profile of a doubled-block perturbation",
       [] {
         return Json{{"blocks", 36}, {"eps", "pow:-0.5"}, {"horizon", 2000}, {"taus", 61},
                     {"tau_lo_log10", -8.0}, {"tau_hi_log10", 2.0}};
       },
       run_theorem13},
      {"theorem14", "unimodular shifts of a block perturbation: growth/decay versus floors",
       [] {
         return Json{{"blocks", 36}, {"eps", "pow:-0.5"}, {"horizon", 1500}, {"samples", 20},
                     {"bound", 1.0},  {"target", 1000.0}};
       },
       run_theorem14},
      {"lemma9_map", "chaos map of the adjoint multiplier conj(lambda) + z",
       [] { return Json{{"grid", "-2.5:2.5:0.05"}}; }, run_lemma9_map},
      {"lemma8_map", "spectral-bounds maps of a quasinilpotent weighted shift, its adjoint, and a union",
       [] {
         return Json{{"dim", 32}, {"weights", "1/n"}, {"grid", "-2:2:0.05"}, {"union_grid", "-4.5:4.5:0.05"},
                     {"offset", 3.0}};
       },
       run_lemma8_map},
      {"theorem5_check", "singular values of inverses and polar factors of random matrices",
       [] { return Json{{"trials", 100}, {"dim", 32}}; }, run_theorem5},
      {"theorem6_check", "reflection integral identity under refined quadrature",
       [] { return Json{{"n_max", 3}, {"b", 2.0}}; }, run_theorem6},
  };
  return r;
}

const Scenario& find_scenario(std::string_view name) {
  for (const Scenario& s : registry())
    if (s.name == name) return s;
  throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + std::string(name) + "'");
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  ScenarioConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "scenario" && value.is_string())
      c.scenario = value.get<std::string>();
    else if (key == "seed" && value.is_number_unsigned())
      c.seed = value.get<std::uint64_t>();
    else if (key == "out" && value.is_string())
      c.out_dir = value.get<std::string>();
    else if (key == "plot" && value.is_boolean())
      c.plot = value.get<bool>();
    else if (key == "parameters" && value.is_object())
      c.parameters = value;
    else if (key == "scenario" || key == "seed" || key == "out" || key == "plot" || key == "parameters")
      throw Error(ErrorCode::InvalidConfig, "config key '" + key + "' has the wrong type");
    else
      throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
  }
  return c;
}

bool ResultBundle::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds; });
}

const Table& ResultBundle::table(std::string_view name) const {
  for (const Table& t : tables)
    if (t.name == name) return t;
  throw Error(ErrorCode::InvalidArgument, "no table '" + std::string(name) + "'");
}

const Verdict& ResultBundle::verdict(std::string_view name) const {
  for (const Verdict& v : verdicts)
    if (v.name == name) return v;
  throw Error(ErrorCode::InvalidArgument, "no verdict '" + std::string(name) + "'");
}

std::vector<std::string_view> scenario_names() {
  std::vector<std::string_view> names;
  for (const Scenario& s : registry()) names.push_back(s.name);
  return names;
}

Json scenario_defaults(std::string_view scenario) { return find_scenario(scenario).defaults(); }

ResultBundle run_scenario(const ScenarioConfig& config) {
  const Scenario& sc = find_scenario(config.scenario);
  const Params params(sc.name, sc.defaults(), config.parameters);
  ResultBundle b;
  sc.run(params, config.seed, b);

  b.metadata["scenario"] = sc.name;
  b.metadata["description"] = sc.description;
  b.metadata["artifact_version"] = kArtifactVersion;
  b.metadata["seed"] = config.seed;
  b.metadata["parameters"] = params.resolved();
  Json tables = Json::array(), verdicts = Json::array();
  for (const Table& t : b.tables) tables.push_back(t.name);
  for (const Verdict& v : b.verdicts) verdicts.push_back(v.name);
  b.metadata["tables"] = tables;
  b.metadata["verdicts"] = verdicts;

  b.summary.push_back(std::string(sc.name) + ": " + std::string(sc.description));
  for (const Verdict& v : b.verdicts) b.summary.push_back((v.holds ? "  holds   " : "  FAILS   ") + v.name);
  return b;
}

std::string verdicts_json(const ResultBundle& bundle) {
  Json j;
  j["scenario"] = bundle.metadata.value("scenario", "");
  j["all_hold"] = bundle.all_hold();
  Json v = Json::object();
  for (const Verdict& verdict : bundle.verdicts) {
    Json entry{{"holds", verdict.holds}};
    for (const auto& [key, value] : verdict.evidence.items()) entry[key] = value;
    v[verdict.name] = entry;
  }
  j["verdicts"] = v;
  return j.dump(2) + "\n";
}

std::string metadata_json(const ResultBundle& bundle) { return bundle.metadata.dump(2) + "\n"; }

std::vector<std::filesystem::path> write_bundle(const ResultBundle& bundle, const ScenarioConfig& config) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& name, const std::string& content) {
    write_file(config.out_dir / name, content);
    written.push_back(config.out_dir / name);
  };
  for (const Table& t : bundle.tables) {
    if (t.empty()) throw Error(ErrorCode::IoError, "table '" + t.name + "' is empty");
    put(t.name + ".csv", to_csv(t));
  }
  put("verdicts.json", verdicts_json(bundle));
  put("metadata.json", metadata_json(bundle));
  if (config.plot) {
    for (const PlotSpec& ps : bundle.plots) {
      const std::filesystem::path path = config.out_dir / (ps.table + ".svg");
      emit_plot(bundle.table(ps.table), ps.kind, path);
      written.push_back(path);
    }
  }
  return written;
}

int exit_code(const ResultBundle& bundle) { return bundle.all_hold() ? 0 : 2; }

}  // namespace chaoskit::cli
