#include "chaoskit/chaos_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chaoskit/hardy.hpp"
#include "chaoskit/kernels.hpp"
#include "chaoskit/operators.hpp"

namespace chaoskit {

std::string_view to_string(MapFamily f) noexcept {
  switch (f) {
    case MapFamily::MultiplicationShift: return "multiplication_shift";
    case MapFamily::SpectralBounds: return "spectral_bounds";
    case MapFamily::OrbitEvidence: return "orbit_evidence";
  }
  return "unknown";
}

std::string_view to_string(MapVerdict v) noexcept {
  switch (v) {
    case MapVerdict::Decay: return "decay";
    case MapVerdict::BoundedBelow: return "bounded_below";
    case MapVerdict::Chaotic: return "chaotic";
    case MapVerdict::BoundaryUncertain: return "boundary_uncertain";
  }
  return "unknown";
}

MapFamily parse_map_family(std::string_view name) {
  for (MapFamily f : {MapFamily::MultiplicationShift, MapFamily::SpectralBounds,
                      MapFamily::OrbitEvidence})
    if (name == to_string(f)) return f;
  throw Error(ErrorCode::UnknownFamily, "unknown map family '" + std::string(name) + "'");
}

MapGrid MapGrid::parse(const std::string& text) {
  MapGrid g;
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    const std::string piece = text.substr(start, colon == std::string::npos ? std::string::npos
                                                                            : colon - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != piece.size() || !std::isfinite(v))
      throw Error(ErrorCode::InvalidConfig, "grid must be lo:hi:step, got '" + text + "'");
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw Error(ErrorCode::InvalidConfig, "grid must be lo:hi:step, got '" + text + "'");
  g.lo = parts[0];
  g.hi = parts[1];
  g.step = parts[2];
  if (!(g.step > 0.0) || !(g.hi >= g.lo))
    throw Error(ErrorCode::InvalidConfig, "grid needs lo <= hi and step > 0");
  if ((g.hi - g.lo) / g.step > 2000.0) throw Error(ErrorCode::InvalidConfig, "grid has too many points");
  return g;
}

std::vector<double> MapGrid::axis() const {
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    // rounded to 12 decimals so lattice points such as 0 and 1.95 come out exact
    a[k] = std::round((lo + step * static_cast<double>(k)) * 1e12) / 1e12;
  }
  return a;
}

std::size_t ChaosMap::side() const { return grid.axis().size(); }

std::size_t ChaosMap::count(MapVerdict v) const {
  return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v));
}

namespace {

struct PointResult {
  MapVerdict verdict;
  double margin;
  bool tangent = false;  // a range endpoint sits exactly on the circle
};

PointResult classify_multiplication(const MapRequest& req, Complex lambda) {
  const double h = req.grid.step;
  const AnalyticPolynomial phi = AnalyticPolynomial::constant(std::conj(lambda)) + req.symbol;
  if (phi.is_constant()) return {MapVerdict::BoundaryUncertain, 0.0};
  MultiplierChaosVerdict v;
  try {
    v = classify_multiplier(phi);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BoundaryUncertain || e.code() == ErrorCode::NotCowenDouglas)
      return {MapVerdict::BoundaryUncertain, 0.0};
    throw;
  }
  const double d_inf = std::abs(v.inf_mod - 1.0);
  const double d_sup = std::abs(v.sup_mod - 1.0);
  const double margin = std::min(d_inf, d_sup);
  const bool tangent = d_inf <= kTangencyTol || d_sup <= kTangencyTol;
  if (!tangent && margin < h * (1.0 - 1e-6)) return {MapVerdict::BoundaryUncertain, margin};
  if (v.meets_circle) return {MapVerdict::Chaotic, margin, tangent};
  return {v.sup_mod <= 1.0 + kTangencyTol ? MapVerdict::Decay : MapVerdict::BoundedBelow, margin, tangent};
}

PointResult classify_spectral(const MapRequest& req, Complex lambda) {
  const double h = req.grid.step;
  const DenseOperator t = scalar_perturb(lambda, req.base);
  double rho = 0.0, mu = std::numeric_limits<double>::infinity();
  for (const Complex& z : eigenvalues(t)) {
    rho = std::max(rho, std::abs(z));
    mu = std::min(mu, std::abs(z));
  }
  if (rho < 1.0 - h) return {MapVerdict::Decay, 1.0 - rho};
  if (mu > 1.0 + h) return {MapVerdict::BoundedBelow, mu - 1.0};
  const double smin = singular_values(t).back();
  if (smin >= 1.0) return {MapVerdict::BoundedBelow, smin - 1.0};
  return {MapVerdict::BoundaryUncertain, std::min(std::abs(rho - 1.0), std::abs(mu - 1.0))};
}

PointResult classify_orbits(const MapRequest& req, Complex lambda) {
  if (req.samples.empty()) throw Error(ErrorCode::InvalidArgument, "orbit_evidence needs samples");
  const DenseOperator t = scalar_perturb(lambda, req.base);
  bool all_decay = true, all_bounded = true;
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& x : req.samples) {
    const OrbitRecord rec = orbit_norms(t, x, req.horizon, req.thresholds);
    const ChaosVerdict v = li_yorke_evidence(rec, req.thresholds);
    if (v.kind == VerdictKind::LiYorkeEvidence) return {MapVerdict::Chaotic, 0.0};
    const double x0 = rec.initial_norm();
    const double rel = rec.tail_min() / x0;
    margin = std::min(margin, rel);
    if (!(rel < req.thresholds.delta_low) || rec.overflowed()) all_decay = false;
    if (!(rel >= 1e-3) && !rec.overflowed()) all_bounded = false;
  }
  if (all_decay) return {MapVerdict::Decay, margin};
  if (all_bounded) return {MapVerdict::BoundedBelow, margin};
  return {MapVerdict::BoundaryUncertain, margin};
}

// An exactly tangent point keeps its verdict only when it is isolated: its
// grid neighbours are all determinate and agree. Otherwise it lies on a
// region boundary and is reported uncertain like its neighbours.
void resolve_tangent_points(ChaosMap& map, const std::vector<char>& tangent) {
  const std::size_t side = map.side();
  const std::vector<MapVerdict> before = map.verdicts;
  for (std::size_t k = 0; k < before.size(); ++k) {
    if (!tangent[k]) continue;
    const std::size_t row = k / side, col = k % side;
    std::vector<MapVerdict> nb;
    if (col > 0) nb.push_back(before[k - 1]);
    if (col + 1 < side) nb.push_back(before[k + 1]);
    if (row > 0) nb.push_back(before[k - side]);
    if (row + 1 < side) nb.push_back(before[k + side]);
    bool isolated = true;
    for (MapVerdict v : nb)
      if (v == MapVerdict::BoundaryUncertain || v != nb.front()) isolated = false;
    if (!isolated) map.verdicts[k] = MapVerdict::BoundaryUncertain;
  }
}

}  // namespace

ChaosMap chaos_parameter_map(const MapRequest& request) {
  if (request.family != MapFamily::MultiplicationShift && request.base.dim() == 0)
    throw Error(ErrorCode::InvalidArgument, "map family needs a base operator");
  ChaosMap map;
  map.family = request.family;
  map.grid = request.grid;
  const auto axis = request.grid.axis();
  for (double im : axis)
    for (double re : axis) map.lambdas.emplace_back(re, im);
  map.verdicts.resize(map.lambdas.size());
  map.margin.resize(map.lambdas.size());
  std::vector<char> tangent(map.lambdas.size(), 0);
  kernels::parallel_for(map.lambdas.size(), [&](std::size_t k) {
    PointResult r{};
    switch (request.family) {
      case MapFamily::MultiplicationShift: r = classify_multiplication(request, map.lambdas[k]); break;
      case MapFamily::SpectralBounds: r = classify_spectral(request, map.lambdas[k]); break;
      case MapFamily::OrbitEvidence: r = classify_orbits(request, map.lambdas[k]); break;
    }
    map.verdicts[k] = r.verdict;
    map.margin[k] = r.margin;
    tangent[k] = r.tangent ? 1 : 0;
  });
  resolve_tangent_points(map, tangent);
  return map;
}

ChaosMap chaos_map_union(const ChaosMap& a, const ChaosMap& b) {
  if (a.lambdas != b.lambdas) throw Error(ErrorCode::DimensionMismatch, "maps use different grids");
  ChaosMap u = a;
  for (std::size_t k = 0; k < a.verdicts.size(); ++k) {
    const MapVerdict va = a.verdicts[k], vb = b.verdicts[k];
    MapVerdict v;
    if (va == MapVerdict::Chaotic || vb == MapVerdict::Chaotic)
      v = MapVerdict::Chaotic;
    else if (va == MapVerdict::BoundaryUncertain || vb == MapVerdict::BoundaryUncertain)
      v = MapVerdict::BoundaryUncertain;
    else if (va == MapVerdict::Decay && vb == MapVerdict::Decay)
      v = MapVerdict::Decay;
    else
      v = MapVerdict::BoundedBelow;
    u.verdicts[k] = v;
    u.margin[k] = std::min(a.margin[k], b.margin[k]);
  }
  return u;
}

}  // namespace chaoskit
