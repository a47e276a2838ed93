#include "chaoskit/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "chaoskit/error.hpp"
#include "chaoskit/kernels.hpp"

namespace chaoskit {

GaussRule gauss_legendre_rule(std::size_t order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "quadrature order must be positive");
  GaussRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // P_n(x) and P_n'(x) by the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (order == 1) ? x : p1;
      const double pnm1 = (order == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

namespace {

const GaussRule& default_rule() {
  static const GaussRule rule = gauss_legendre_rule(kGaussOrder);
  return rule;
}

}  // namespace

QuadratureGrid composite_gauss_grid(double lo, double hi, std::size_t panels) {
  if (panels == 0 || !(hi > lo))
    throw Error(ErrorCode::InvalidArgument, "quadrature grid needs lo < hi and panels > 0");
  const GaussRule& rule = default_rule();
  QuadratureGrid g;
  g.lo = lo;
  g.hi = hi;
  g.panels = panels;
  g.nodes.reserve(panels * kGaussOrder);
  g.weights.reserve(panels * kGaussOrder);
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = lo + h * static_cast<double>(p);
    const double mid = left + 0.5 * h;
    for (std::size_t k = 0; k < kGaussOrder; ++k) {
      g.nodes.push_back(mid + 0.5 * h * rule.nodes[k]);
      g.weights.push_back(0.5 * h * rule.weights[k]);
    }
  }
  return g;
}

namespace {

double panel_term(const std::function<double(double)>& f, const QuadratureGrid& grid,
                  std::size_t p) {
  double s = 0.0;
  for (std::size_t k = p * kGaussOrder; k < (p + 1) * kGaussOrder; ++k)
    s += grid.weights[k] * f(grid.nodes[k]);
  return s;
}

}  // namespace

double integrate(const std::function<double(double)>& f, const QuadratureGrid& grid) {
  return kernels::panel_sum(grid.panels, [&](std::size_t p) { return panel_term(f, grid, p); });
}

double integrate_serial(const std::function<double(double)>& f, const QuadratureGrid& grid) {
  return kernels::panel_sum_serial(grid.panels,
                                   [&](std::size_t p) { return panel_term(f, grid, p); });
}

}  // namespace chaoskit
