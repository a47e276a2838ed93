#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chaoskit/numerics.hpp"
#include "chaoskit/operators.hpp"

namespace chaoskit {

/// Finite-horizon thresholds, relative to ||x|| where noted.
struct Thresholds {
  double delta_low = 1e-6;   // "tends to zero" below delta_low ||x||
  double delta_high = 10.0;  // "stays large" above delta_high ||x||
  double gap_eta = 0.05;     // envelope gap / closeness for DC classes
  double overflow = 1e300;   // orbit iteration stops above this norm
};

// ---- orbits ---------------------------------------------------------------

struct OrbitRecord {
  std::size_t horizon = 0;
  std::vector<double> norms;  // ||T^n x|| for n = 0 .. last computed
  std::size_t tail_start = 0;
  std::optional<std::size_t> overflow_index;

  double initial_norm() const { return norms.empty() ? 0.0 : norms.front(); }
  bool overflowed() const noexcept { return overflow_index.has_value(); }
  /// min over [tail_start, last computed index]
  double tail_min() const;
  /// max over the whole record
  double peak() const;
  std::size_t peak_index() const;
};

/// ||T^n x|| for n = 0..H. Iteration stops at the first norm above the
/// overflow threshold (kept) or the first non-finite norm (dropped).
OrbitRecord orbit_norms(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                        const Thresholds& th = {});
OrbitRecord orbit_norms_serial(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                               const Thresholds& th = {});

/// log10 ||T^n x|| for n = 0..H with the iterate rescaled as it grows or
/// shrinks, so arbitrarily long orbits never overflow. -inf for zero iterates.
std::vector<double> log_orbit_norms(const DenseOperator& t, const StateVector& x,
                                    std::size_t horizon);

// ---- Li-Yorke evidence ----------------------------------------------------

enum class VerdictKind { LiYorkeEvidence, NoEvidence, Inconclusive };
std::string_view to_string(VerdictKind k) noexcept;

struct ChaosVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<StateVector> witness;
  double liminf_est = 0.0;  // tail minimum
  double limsup_est = 0.0;  // maximum over the record
};

/// Rise above delta_high ||x|| and a tail dip below delta_low ||x||.
/// Needs horizon >= 16; overflowed or zero orbits are Inconclusive.
ChaosVerdict li_yorke_evidence(const OrbitRecord& record, const Thresholds& th = {});
ChaosVerdict li_yorke_evidence(const DenseOperator& t, const StateVector& x, std::size_t horizon,
                               const Thresholds& th = {});

// ---- distributional chaos -------------------------------------------------

struct DistributionalProfile {
  std::vector<double> tau_grid;
  std::vector<double> f_lower;  // min over the tail window of F^n(tau)
  std::vector<double> f_upper;  // max over the tail window of F^n(tau)
  std::size_t horizon = 0;
  std::size_t tail_start = 0;
};

/// F^n(tau) = #{0 <= i <= n : ||T^i x|| < tau} / (n + 1), counted exactly
/// for every n in [H/2, H].
DistributionalProfile distributional_profile(const OrbitRecord& record,
                                             const std::vector<double>& tau_grid);
DistributionalProfile distributional_profile(const DenseOperator& t, const StateVector& x,
                                             std::size_t horizon,
                                             const std::vector<double>& tau_grid);

enum class DcClass { DC1, DC2, DC3, None };
std::string_view to_string(DcClass c) noexcept;

struct DcVerdict {
  DcClass cls = DcClass::None;
  double max_gap = 0.0;  // max over tau of F_upper - F_lower
  bool upper_near_one = false;
  bool lower_near_zero = false;
  std::string reading;  // quantifier reading applied
};

/// DC-I: some tau with F_lower <= eta and F_upper >= 1-eta on the whole grid;
/// DC-II: F_upper >= 1-eta on the whole grid and a gap > eta somewhere;
/// DC-III: a gap > eta somewhere. Needs horizon >= 64.
DcVerdict classify_dc(const DistributionalProfile& profile, const Thresholds& th = {});

// ---- Li-Yorke criterion ---------------------------------------------------

struct UnboundedPair {
  std::size_t n;          // power
  std::size_t candidate;  // index into the candidate list
  double norm;            // ||T^n a_n||
};

struct CriterionEvidence {
  std::vector<std::size_t> vanishing_set;  // candidate indices dipping below delta_low ||x||
  std::vector<UnboundedPair> unbounded_pairs;
  std::vector<double> peaks;  // per candidate
  std::vector<double> floors;  // per candidate, min over the whole orbit
  double escalation = 0.0;    // largest ladder norm / bound
  bool witnessed = false;
};

/// Vanishing set plus an escalation ladder through powers of ten of the bound,
/// drawn from the vanishing candidates. Witnessed when the vanishing set is
/// nonempty and the ladder reaches target_factor * bound.
CriterionEvidence criterion_search(const DenseOperator& t, const std::vector<StateVector>& candidates,
                                   double bound, std::size_t horizon, double target_factor = 1e3,
                                   const Thresholds& th = {});

// ---- inverse and adjoint orbits -------------------------------------------

struct InverseFloor {
  double floor = 0.0;      // min over n of ||T^{-n} x||
  std::size_t argmin = 0;
  double log10_final = 0.0;  // log10 ||T^{-H} x||
};

/// Orbits under invert(T) for each sample. Throws SingularOperator.
std::vector<InverseFloor> inverse_orbit_floor(const DenseOperator& t,
                                              const std::vector<StateVector>& samples,
                                              std::size_t horizon);

/// Orbit of a block-diagonal operator split by block: per-block minima of
/// ||A_j^n y_j|| over n and the global minimum of ||A^n x||, all in log10.
struct BlockOrbitFloors {
  std::vector<double> log10_block_floor;  // -inf for blocks where y_j = 0
  double log10_global_floor = 0.0;
  std::size_t global_argmin = 0;
  double log10_final = 0.0;
  double log10_initial = 0.0;
};
BlockOrbitFloors block_orbit_floors(const DenseOperator& a, const std::vector<BlockInfo>& layout,
                                    const StateVector& x, std::size_t horizon);

struct FirstCoordinateReport {
  double max_deviation = 0.0;  // max_n | |((lambda I + S^*)^n x)_0| - |x_0| |
  OrbitRecord record;
  ChaosVerdict verdict;
};

/// Orbit of lambda I + S_w^* with |lambda| = 1. Throws NotUnimodular.
FirstCoordinateReport first_coordinate_invariance(Complex lambda, const WeightedShiftSpec& spec,
                                                  const StateVector& x, std::size_t horizon);

}  // namespace chaoskit
