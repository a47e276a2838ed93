#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "chaoskit/diagnostics.hpp"
#include "chaoskit/numerics.hpp"
#include "chaoskit/polynomial.hpp"

namespace chaoskit {

enum class MapFamily { MultiplicationShift, SpectralBounds, OrbitEvidence };
enum class MapVerdict { Decay, BoundedBelow, Chaotic, BoundaryUncertain };

std::string_view to_string(MapFamily f) noexcept;
std::string_view to_string(MapVerdict v) noexcept;
/// Throws UnknownFamily.
MapFamily parse_map_family(std::string_view name);

/// Square lattice lo:hi:step on both the real and the imaginary axis.
struct MapGrid {
  double lo = -2.5;
  double hi = 2.5;
  double step = 0.05;

  /// Parses "lo:hi:step". Throws InvalidConfig.
  static MapGrid parse(const std::string& text);
  std::vector<double> axis() const;
};

struct MapRequest {
  MapFamily family = MapFamily::MultiplicationShift;
  MapGrid grid;
  AnalyticPolynomial symbol{0.0, 1.0};  // multiplication_shift: classify conj(lambda) + symbol
  DenseOperator base;                   // spectral_bounds / orbit_evidence: lambda I + base
  std::vector<StateVector> samples;     // orbit_evidence
  std::size_t horizon = 400;            // orbit_evidence
  Thresholds thresholds;
};

struct ChaosMap {
  MapFamily family = MapFamily::MultiplicationShift;
  MapGrid grid;
  std::vector<Complex> lambdas;  // row-major: imaginary part outer, real part inner
  std::vector<MapVerdict> verdicts;
  std::vector<double> margin;    // distance-to-boundary evidence per point

  std::size_t side() const;
  std::size_t count(MapVerdict v) const;
};

/// Per-point verdicts; points are evaluated in parallel and assembled by
/// grid index. Points within one grid step of a classification boundary are
/// boundary_uncertain. An exactly tangent point keeps its exact verdict only
/// when all its grid neighbours are determinate and agree.
ChaosMap chaos_parameter_map(const MapRequest& request);

/// Verdict for lambda I + (T1 (+) T2) from the verdicts of its summands:
/// chaotic if either summand is; uncertain if either is; decay if both
/// decay; bounded_below otherwise (orbits with a nonzero bounded-below part).
ChaosMap chaos_map_union(const ChaosMap& a, const ChaosMap& b);

}  // namespace chaoskit
