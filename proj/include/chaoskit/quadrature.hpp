#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace chaoskit {

inline constexpr std::size_t kGaussOrder = 16;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed
/// by Newton iteration on P_n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_rule(std::size_t order);

/// Composite rule: `panels` equal panels on [lo, hi], each with the
/// kGaussOrder-point rule.
struct QuadratureGrid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t panels = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureGrid composite_gauss_grid(double lo, double hi, std::size_t panels);

/// Integral of f over the grid. Panel contributions are summed in parallel
/// and reduced in panel order.
double integrate(const std::function<double(double)>& f, const QuadratureGrid& grid);
double integrate_serial(const std::function<double(double)>& f, const QuadratureGrid& grid);

}  // namespace chaoskit
