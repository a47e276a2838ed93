#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "chaoskit/numerics.hpp"
#include "chaoskit/polynomial.hpp"

namespace chaoskit {

inline constexpr double kCircleTol = 1e-8;
// Range endpoints this close to 1 count as exact tangency to the circle.
inline constexpr double kTangencyTol = 1e-12;

// ---- roots ----------------------------------------------------------------

struct RootReport {
  std::size_t inside_count = 0;     // |r| < 1 - tol
  std::size_t on_circle_count = 0;  // ||r| - 1| <= tol
  std::size_t outside_count = 0;
  std::vector<Complex> roots;
};

/// All roots (companion-matrix eigenvalues, Newton polished) classified
/// against the unit circle. Throws ConstantPolynomial.
RootReport roots_in_disk(const AnalyticPolynomial& p, double tol = kCircleTol);

/// Quotient of p by the monic factor prod (z - r) over the given roots.
AnalyticPolynomial deflate(const AnalyticPolynomial& p, const std::vector<Complex>& roots);

// ---- Cowen-Douglas classification -----------------------------------------

enum class CdStatus { Yes, No, Undetermined };
enum class CdFailure { RootCountVaries, RootOnCircle, RoterNotOuter, ConstantSymbol };
std::string_view to_string(CdStatus s) noexcept;
std::string_view to_string(CdFailure f) noexcept;

struct CowenDouglasReport {
  CdStatus is_cd = CdStatus::Undetermined;
  std::optional<unsigned> folder_m;
  std::optional<CdFailure> failure_reason;
  std::size_t probes = 0;
};

struct ProbeSet {
  std::vector<double> radii{0.3, 0.6, 0.85};
  std::size_t angles = 16;
  bool include_origin = true;

  std::vector<Complex> points() const;
};

/// Root count of phi - phi(z0) inside the disk at every probe z0, plus the
/// outer test on the cofactor of the outside roots.
CowenDouglasReport is_cowen_douglas(const AnalyticPolynomial& phi, const ProbeSet& probes = {},
                                    double tol = kCircleTol);

/// Number of roots of phi - lambda strictly inside the disk. Throws
/// RootOnCircle and ConstantPolynomial.
std::size_t kernel_dimension(const AnalyticPolynomial& phi, Complex lambda, double tol = kCircleTol);

// ---- range of phi on the disk ---------------------------------------------

struct ModulusRange {
  double inf_mod = 0.0;
  double sup_mod = 0.0;
  bool root_inside = false;
};

/// sup |phi| on the disk from the boundary (maximum modulus); inf is 0 when
/// phi has a root in the closed disk, else the boundary minimum. Boundary
/// extrema are refined by golden-section search between samples.
ModulusRange modulus_range_on_disk(const AnalyticPolynomial& phi, std::size_t boundary_samples = 1024);

struct MultiplierChaosVerdict {
  bool chaotic_all_senses = false;
  bool meets_circle = false;
  double inf_mod = 0.0;
  double sup_mod = 0.0;
  unsigned folder_m = 0;
};

/// phi(D) is open, so it meets the circle iff inf < 1 < sup strictly.
/// Endpoints within kTangencyTol of 1 are exact tangency (no intersection);
/// endpoints within tol of 1 otherwise raise BoundaryUncertain. Throws
/// NotCowenDouglas unless is_cowen_douglas reports yes.
MultiplierChaosVerdict classify_multiplier(const AnalyticPolynomial& phi, double tol = kCircleTol);

/// ||M_phi^* f_z - conj(phi(z)) f_z|| / ||f_z|| on the N-truncation.
double adjoint_eigen_residual(const AnalyticPolynomial& phi, Complex z, std::size_t dim);

}  // namespace chaoskit
