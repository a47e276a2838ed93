#include "chaoskit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chaoskit/kernels.hpp"

namespace chaoskit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_orbit_args(const DenseOperator& t, const StateVector& x, std::size_t horizon) {
  if (x.dim() != t.dim())
    throw Error(ErrorCode::DimensionMismatch, "orbit: operator dim " + std::to_string(t.dim()) +
                                                  ", vector dim " + std::to_string(x.dim()));
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "orbit horizon must be >= 1");
  require_finite(x, "orbit");
}

template <class Step>
OrbitRecord run_orbit(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                      const Thresholds& th, Step step) {
  check_orbit_args(t, x, horizon);
  OrbitRecord rec;
  rec.horizon = horizon;
  rec.tail_start = horizon / 2;
  rec.norms.reserve(horizon + 1);
  rec.norms.push_back(x.norm());
  StateVector cur = x, next(x.dim());
  for (std::size_t n = 1; n <= horizon; ++n) {
    step(cur, next);
    std::swap(cur, next);
    const double nrm = cur.norm();
    if (!std::isfinite(nrm)) {
      rec.overflow_index = n;
      break;
    }
    rec.norms.push_back(nrm);
    if (nrm > th.overflow) {
      rec.overflow_index = n;
      break;
    }
  }
  return rec;
}

}  // namespace

double OrbitRecord::tail_min() const {
  if (norms.empty()) return 0.0;
  const std::size_t start = std::min(tail_start, norms.size() - 1);
  return *std::min_element(norms.begin() + static_cast<std::ptrdiff_t>(start), norms.end());
}

double OrbitRecord::peak() const {
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

std::size_t OrbitRecord::peak_index() const {
  if (norms.empty()) return 0;
  return static_cast<std::size_t>(std::max_element(norms.begin(), norms.end()) - norms.begin());
}

OrbitRecord orbit_norms(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                        const Thresholds& th) {
  const auto profile = kernels::RowProfile::of(t);
  return run_orbit(t, x, horizon, th, [&](const StateVector& in, StateVector& out) {
    kernels::matvec_profiled(t, profile, in.entries(), out.entries());
  });
}

OrbitRecord orbit_norms_serial(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                               const Thresholds& th) {
  const auto profile = kernels::RowProfile::of(t);
  return run_orbit(t, x, horizon, th, [&](const StateVector& in, StateVector& out) {
    kernels::matvec_profiled_serial(t, profile, in.entries(), out.entries());
  });
}

std::vector<double> log_orbit_norms(const DenseOperator& t, const StateVector& x,
                                    std::size_t horizon) {
  check_orbit_args(t, x, horizon);
  const auto profile = kernels::RowProfile::of(t);
  std::vector<double> out;
  out.reserve(horizon + 1);
  StateVector cur = x, next(x.dim());
  double log_scale = 0.0;  // true iterate = 10^log_scale * cur
  for (std::size_t n = 0;; ++n) {
    const double nrm = cur.norm();
    if (nrm == 0.0) {
      out.resize(horizon + 1, kNegInf);
      break;
    }
    out.push_back(log_scale + std::log10(nrm));
    if (n == horizon) break;
    if (nrm > 1e100 || nrm < 1e-100) {
      cur *= 1.0 / nrm;
      log_scale += std::log10(nrm);
    }
    kernels::matvec_profiled(t, profile, cur.entries(), next.entries());
    std::swap(cur, next);
  }
  return out;
}

// ---- Li-Yorke evidence ----------------------------------------------------

std::string_view to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::LiYorkeEvidence: return "LiYorkeEvidence";
    case VerdictKind::NoEvidence: return "NoEvidence";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

ChaosVerdict li_yorke_evidence(const OrbitRecord& record, const Thresholds& th) {
  if (record.horizon < 16)
    throw Error(ErrorCode::InvalidArgument, "li_yorke_evidence needs horizon >= 16");
  ChaosVerdict v;
  v.liminf_est = record.tail_min();
  v.limsup_est = record.peak();
  const double x0 = record.initial_norm();
  if (record.overflowed() || x0 == 0.0) {
    v.kind = VerdictKind::Inconclusive;
    return v;
  }
  const bool dips = v.liminf_est < th.delta_low * x0;
  const bool rises = v.limsup_est > th.delta_high * x0;
  v.kind = (dips && rises) ? VerdictKind::LiYorkeEvidence : VerdictKind::NoEvidence;
  return v;
}

ChaosVerdict li_yorke_evidence(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                               const Thresholds& th) {
  ChaosVerdict v = li_yorke_evidence(orbit_norms(t, x, horizon, th), th);
  if (v.kind == VerdictKind::LiYorkeEvidence) v.witness = x;
  return v;
}

// ---- distributional chaos -------------------------------------------------

DistributionalProfile distributional_profile(const OrbitRecord& record,
                                             const std::vector<double>& tau_grid) {
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    if (!(tau_grid[k] > 0.0))
      throw Error(ErrorCode::InvalidArgument, "tau grid must be positive");
    if (k > 0 && !(tau_grid[k] > tau_grid[k - 1]))
      throw Error(ErrorCode::InvalidArgument, "tau grid must be strictly ascending");
  }
  DistributionalProfile p;
  p.tau_grid = tau_grid;
  p.horizon = record.horizon;
  p.tail_start = record.tail_start;
  p.f_lower.assign(tau_grid.size(), 1.0);
  p.f_upper.assign(tau_grid.size(), 0.0);

  // norms past an overflow are treated as above every tau
  auto norm_at = [&](std::size_t i) {
    return i < record.norms.size() ? record.norms[i] : std::numeric_limits<double>::infinity();
  };
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    const double tau = tau_grid[k];
    std::size_t count = 0;
    for (std::size_t n = 0; n <= record.horizon; ++n) {
      if (norm_at(n) < tau) ++count;
      if (n < record.tail_start) continue;
      const double f = static_cast<double>(count) / static_cast<double>(n + 1);
      p.f_lower[k] = std::min(p.f_lower[k], f);
      p.f_upper[k] = std::max(p.f_upper[k], f);
    }
  }
  return p;
}

DistributionalProfile distributional_profile(const DenseOperator& t, const StateVector& x,
                                             std::size_t horizon,
                                             const std::vector<double>& tau_grid) {
  return distributional_profile(orbit_norms(t, x, horizon), tau_grid);
}

std::string_view to_string(DcClass c) noexcept {
  switch (c) {
    case DcClass::DC1: return "DC-I";
    case DcClass::DC2: return "DC-II";
    case DcClass::DC3: return "DC-III";
    case DcClass::None: return "None";
  }
  return "Unknown";
}

DcVerdict classify_dc(const DistributionalProfile& profile, const Thresholds& th) {
  if (profile.horizon < 64) throw Error(ErrorCode::InvalidArgument, "classify_dc needs horizon >= 64");
  const double eta = th.gap_eta;
  DcVerdict v;
  v.reading =
      "DC-I: exists tau F_lower<=eta and all tau F_upper>=1-eta; "
      "DC-II: all tau F_upper>=1-eta and exists tau gap>eta; DC-III: exists tau gap>eta";
  v.upper_near_one = !profile.tau_grid.empty();
  for (std::size_t k = 0; k < profile.tau_grid.size(); ++k) {
    v.max_gap = std::max(v.max_gap, profile.f_upper[k] - profile.f_lower[k]);
    if (profile.f_upper[k] < 1.0 - eta) v.upper_near_one = false;
    if (profile.f_lower[k] <= eta) v.lower_near_zero = true;
  }
  const bool gap = v.max_gap > eta;
  if (v.lower_near_zero && v.upper_near_one)
    v.cls = DcClass::DC1;
  else if (v.upper_near_one && gap)
    v.cls = DcClass::DC2;
  else if (gap)
    v.cls = DcClass::DC3;
  else
    v.cls = DcClass::None;
  return v;
}

// ---- Li-Yorke criterion ---------------------------------------------------

CriterionEvidence criterion_search(const DenseOperator& t, const std::vector<StateVector>& candidates,
                                   double bound, std::size_t horizon, double target_factor,
                                   const Thresholds& th) {
  if (!(bound > 0.0)) throw Error(ErrorCode::InvalidArgument, "criterion bound must be positive");
  for (const auto& c : candidates) {
    const double nrm = c.norm();
    if (nrm == 0.0) throw Error(ErrorCode::InvalidArgument, "criterion candidates must be nonzero");
    if (nrm > bound * (1.0 + 1e-12))
      throw Error(ErrorCode::InvalidArgument, "criterion candidate exceeds the bound");
  }
  std::vector<OrbitRecord> records(candidates.size());
  kernels::parallel_for(candidates.size(), [&](std::size_t i) {
    records[i] = orbit_norms(t, candidates[i], horizon, th);
  });

  CriterionEvidence ev;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    ev.peaks.push_back(r.peak());
    ev.floors.push_back(*std::min_element(r.norms.begin(), r.norms.end()));
    if (!r.overflowed() && ev.floors.back() < th.delta_low * r.initial_norm())
      ev.vanishing_set.push_back(i);
  }

  // ladder rung k: the vanishing candidate with the smallest peak above 10^k * bound
  for (double level = bound;; level *= 10.0) {
    std::optional<std::size_t> pick;
    for (std::size_t i : ev.vanishing_set)
      if (ev.peaks[i] > level && (!pick || ev.peaks[i] < ev.peaks[*pick])) pick = i;
    if (!pick) break;
    if (ev.unbounded_pairs.empty() || ev.unbounded_pairs.back().candidate != *pick)
      ev.unbounded_pairs.push_back({records[*pick].peak_index(), *pick, ev.peaks[*pick]});
  }
  if (!ev.unbounded_pairs.empty()) ev.escalation = ev.unbounded_pairs.back().norm / bound;
  ev.witnessed = !ev.vanishing_set.empty() && ev.escalation >= target_factor;
  return ev;
}

// ---- inverse and adjoint orbits -------------------------------------------

std::vector<InverseFloor> inverse_orbit_floor(const DenseOperator& t,
                                              const std::vector<StateVector>& samples,
                                              std::size_t horizon) {
  const DenseOperator inv = invert(t);
  std::vector<InverseFloor> out(samples.size());
  kernels::parallel_for(samples.size(), [&](std::size_t s) {
    const auto logs = log_orbit_norms(inv, samples[s], horizon);
    const auto it = std::min_element(logs.begin(), logs.end());
    out[s].argmin = static_cast<std::size_t>(it - logs.begin());
    out[s].floor = std::pow(10.0, *it);
    out[s].log10_final = logs.back();
  });
  return out;
}

BlockOrbitFloors block_orbit_floors(const DenseOperator& a, const std::vector<BlockInfo>& layout,
                                    const StateVector& x, std::size_t horizon) {
  check_orbit_args(a, x, horizon);
  for (const BlockInfo& blk : layout)
    if (blk.offset + blk.size > a.dim())
      throw Error(ErrorCode::DimensionMismatch, "block layout exceeds operator dimension");

  // each block is iterated on its own with its own scale, so small blocks
  // do not underflow next to a growing one
  std::vector<std::vector<double>> block_logs(layout.size());
  kernels::parallel_for(layout.size(), [&](std::size_t b) {
    const std::size_t off = layout[b].offset, m = layout[b].size;
    std::vector<Complex> blk(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) blk[i * m + j] = a(off + i, off + j);
    std::vector<Complex> cur(x.entries().begin() + static_cast<std::ptrdiff_t>(off),
                             x.entries().begin() + static_cast<std::ptrdiff_t>(off + m));
    std::vector<Complex> next(m);
    auto& logs = block_logs[b];
    logs.assign(horizon + 1, kNegInf);
    double log_scale = 0.0;
    for (std::size_t n = 0;; ++n) {
      double s = 0.0;
      for (const Complex& c : cur) s += std::norm(c);
      if (s == 0.0) break;
      logs[n] = log_scale + 0.5 * std::log10(s);
      if (n == horizon) break;
      const double nrm = std::sqrt(s);
      if (nrm > 1e100 || nrm < 1e-100) {
        for (Complex& c : cur) c /= nrm;
        log_scale += std::log10(nrm);
      }
      for (std::size_t i = 0; i < m; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < m; ++j) acc += blk[i * m + j] * cur[j];
        next[i] = acc;
      }
      std::swap(cur, next);
    }
  });

  BlockOrbitFloors r;
  r.log10_block_floor.resize(layout.size());
  for (std::size_t b = 0; b < layout.size(); ++b) {
    const auto& logs = block_logs[b];
    r.log10_block_floor[b] =
        logs[0] == kNegInf ? kNegInf : *std::min_element(logs.begin(), logs.end());
  }
  r.log10_global_floor = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= horizon; ++n) {
    // log10 of sqrt(sum_b 10^(2 l_b)), taken relative to the largest term
    double top = kNegInf;
    for (const auto& logs : block_logs) top = std::max(top, logs[n]);
    double lg_total = kNegInf;
    if (top != kNegInf) {
      double acc = 0.0;
      for (const auto& logs : block_logs)
        if (logs[n] != kNegInf) acc += std::pow(10.0, 2.0 * (logs[n] - top));
      lg_total = top + 0.5 * std::log10(acc);
    }
    if (n == 0) r.log10_initial = lg_total;
    if (n == horizon) r.log10_final = lg_total;
    if (lg_total < r.log10_global_floor) {
      r.log10_global_floor = lg_total;
      r.global_argmin = n;
    }
  }
  return r;
}

FirstCoordinateReport first_coordinate_invariance(Complex lambda, const WeightedShiftSpec& spec,
                                                  const StateVector& x, std::size_t horizon) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw Error(ErrorCode::NotUnimodular, "lambda must satisfy |lambda| = 1");
  const DenseOperator t = scalar_perturb(lambda, adjoint(make_weighted_backward_shift(spec)));
  check_orbit_args(t, x, horizon);

  FirstCoordinateReport rep;
  const double x0 = std::abs(x[0]);
  const auto profile = kernels::RowProfile::of(t);
  rep.record = run_orbit(t, x, horizon, Thresholds{}, [&](const StateVector& in, StateVector& out) {
    kernels::matvec_profiled(t, profile, in.entries(), out.entries());
    rep.max_deviation = std::max(rep.max_deviation, std::abs(std::abs(out[0]) - x0));
  });
  rep.verdict = li_yorke_evidence(rep.record);
  return rep;
}

}  // namespace chaoskit
