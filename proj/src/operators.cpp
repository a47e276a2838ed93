#include "chaoskit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace chaoskit {

// ---- sequence rules -------------------------------------------------------

namespace {

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidConfig, "bad number in sequence rule '" + whole + "'");
  return v;
}

}  // namespace

SequenceRule SequenceRule::parse(const std::string& text) {
  SequenceRule r;
  r.text_ = text;
  if (text == "1/n") {
    r.kind_ = Kind::Reciprocal;
  } else if (text.rfind("const:", 0) == 0) {
    r.kind_ = Kind::Constant;
    r.param_ = parse_number(text.substr(6), text);
  } else if (text.rfind("pow:", 0) == 0) {
    r.kind_ = Kind::Power;
    r.param_ = parse_number(text.substr(4), text);
  } else {
    throw Error(ErrorCode::InvalidConfig,
                "unknown sequence rule '" + text + "' (expected 1/n, const:<v> or pow:<p>)");
  }
  return r;
}

SequenceRule SequenceRule::constant(double v) {
  SequenceRule r;
  r.kind_ = Kind::Constant;
  r.param_ = v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "const:%.17g", v);
  r.text_ = buf;
  return r;
}

SequenceRule SequenceRule::power(double p) {
  SequenceRule r;
  r.kind_ = Kind::Power;
  r.param_ = p;
  char buf[64];
  std::snprintf(buf, sizeof buf, "pow:%.17g", p);
  r.text_ = buf;
  return r;
}

double SequenceRule::operator()(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sequence rules are indexed from 1");
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::Reciprocal: return 1.0 / x;
    case Kind::Constant: return param_;
    case Kind::Power: return std::pow(x, param_);
  }
  return 0.0;
}

// ---- weighted backward shift ----------------------------------------------

WeightedShiftSpec WeightedShiftSpec::from_rule(std::size_t dim, const SequenceRule& rule) {
  WeightedShiftSpec s;
  s.dim = dim;
  for (std::size_t n = 1; n < dim; ++n) s.weights.emplace_back(rule(n));
  return s;
}

WeightedShiftSpec WeightedShiftSpec::unit(std::size_t dim) {
  return from_rule(dim, SequenceRule::constant(1.0));
}

DenseOperator make_weighted_backward_shift(const WeightedShiftSpec& spec) {
  if (spec.dim == 0) throw Error(ErrorCode::InvalidArgument, "weighted shift: dim must be positive");
  if (spec.weights.size() + 1 != spec.dim)
    throw Error(ErrorCode::DimensionMismatch, "weighted shift: need dim-1 weights, got " +
                                                  std::to_string(spec.weights.size()));
  DenseOperator t(spec.dim);
  for (std::size_t n = 1; n < spec.dim; ++n) {
    const Complex w = spec.weights[n - 1];
    if (!(std::abs(w) > 0.0) || !std::isfinite(std::abs(w)))
      throw Error(ErrorCode::InvalidWeights, "weight w_" + std::to_string(n) + " is zero or non-finite");
    t(n - 1, n) = w;
  }
  return t;
}

DenseOperator scalar_perturb(Complex lambda, DenseOperator t) {
  for (std::size_t i = 0; i < t.dim(); ++i) t(i, i) += lambda;
  return t;
}

// ---- block perturbations --------------------------------------------------

std::vector<BlockInfo> block_layout(const BlockPerturbationSpec& spec) {
  if (spec.block_count == 0) throw Error(ErrorCode::InvalidArgument, "block perturbation: no blocks");
  if (spec.first_block == 0) throw Error(ErrorCode::InvalidArgument, "blocks are indexed from 1");
  std::vector<BlockInfo> layout;
  std::size_t offset = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < spec.block_count; ++k) {
    const std::size_t j = spec.first_block + k;
    const std::size_t size = spec.block_size(j);
    const double eps = spec.epsilon(j);
    if (size == 0) throw Error(ErrorCode::InvalidArgument, "block " + std::to_string(j) + " has size 0");
    if (!(eps > 0.0) || !std::isfinite(eps))
      throw Error(ErrorCode::InvalidArgument, "epsilon_" + std::to_string(j) + " must be positive");
    if (eps > prev)
      throw Error(ErrorCode::InvalidArgument, "epsilon sequence must be nonincreasing");
    prev = eps;
    layout.push_back({j, offset, size, eps});
    offset += size;
    if (offset > spec.dim_cap)
      throw Error(ErrorCode::DimensionCap, "block perturbation dimension exceeds cap " +
                                               std::to_string(spec.dim_cap));
  }
  return layout;
}

DenseOperator make_perturbation_block(std::size_t size, double epsilon, Complex lambda) {
  DenseOperator b(size);
  for (std::size_t i = 0; i < size; ++i) {
    b(i, i) = lambda - epsilon;
    if (i + 1 < size) b(i, i + 1) = 2.0 * epsilon;
  }
  return b;
}

DenseOperator make_block_perturbation(const BlockPerturbationSpec& spec) {
  const auto layout = block_layout(spec);
  const std::size_t dim = layout.back().offset + layout.back().size;
  DenseOperator t(dim);
  for (const auto& blk : layout) {
    for (std::size_t i = 0; i < blk.size; ++i) {
      t(blk.offset + i, blk.offset + i) = spec.lambda - blk.epsilon;
      if (i + 1 < blk.size) t(blk.offset + i, blk.offset + i + 1) = 2.0 * blk.epsilon;
    }
  }
  return t;
}

DenseOperator block_inverse_closed_form(std::size_t size, double epsilon, Complex lambda) {
  return block_inverse_power(size, epsilon, lambda, 1);
}

DenseOperator block_inverse_power(std::size_t size, double epsilon, Complex lambda, unsigned m) {
  const Complex d = lambda - epsilon;
  if (std::abs(d) == 0.0)
    throw Error(ErrorCode::SingularBlock, "block diagonal lambda - epsilon is zero");
  const Complex ratio = -2.0 * epsilon / d;
  const Complex lead = std::pow(d, -static_cast<double>(m));
  // coefficient C(m+k-1, k) ratio^k built up by the recurrence
  // c_{k+1} = c_k (m+k)/(k+1) ratio
  std::vector<Complex> band(size);
  Complex c = lead;
  for (std::size_t k = 0; k < size; ++k) {
    band[k] = (m == 0) ? (k == 0 ? Complex(1.0) : Complex{}) : c;
    c *= ratio * static_cast<double>(m + k) / static_cast<double>(k + 1);
  }
  DenseOperator a(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t k = 0; i + k < size; ++k) a(i, i + k) = band[k];
  return a;
}

StateVector block_unit_vector(const std::vector<BlockInfo>& layout, std::size_t dim,
                              std::size_t block_index) {
  for (const auto& blk : layout) {
    if (blk.index != block_index) continue;
    if (blk.offset + blk.size > dim) throw Error(ErrorCode::DimensionMismatch, "block outside vector");
    StateVector f(dim);
    const double v = 1.0 / std::sqrt(static_cast<double>(blk.size));
    for (std::size_t i = 0; i < blk.size; ++i) f[blk.offset + i] = v;
    return f;
  }
  throw Error(ErrorCode::InvalidArgument, "no block with index " + std::to_string(block_index));
}

// ---- star numbers ---------------------------------------------------------

StarNumber star_number(unsigned j, unsigned m) {
  if (j == 0) throw Error(ErrorCode::InvalidArgument, "star numbers start at j = 1");
  std::vector<BigInt> row(j);
  for (unsigned k = 0; k < j; ++k) row[k] = k + 1;
  for (unsigned depth = 0; depth < m; ++depth)
    for (unsigned k = 1; k < j; ++k) row[k] += row[k - 1];
  return {j, m, row[j - 1]};
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// ---- Hardy-space truncations ----------------------------------------------

DenseOperator make_multiplication_truncation(const AnalyticPolynomial& phi, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "multiplication truncation: dim must be positive");
  if (phi.degree() >= dim)
    throw Error(ErrorCode::DegreeTooLarge, "degree " + std::to_string(phi.degree()) +
                                               " does not fit truncation of size " +
                                               std::to_string(dim));
  DenseOperator m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k <= phi.degree() && k <= i; ++k) m(i, i - k) = phi.coefficient(k);
  return m;
}

StateVector reproducing_kernel_vector(Complex z, std::size_t dim) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDisk, "kernel point must satisfy |z| < 1");
  StateVector f(dim);
  Complex p = 1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    f[k] = p;
    p *= std::conj(z);
  }
  return f;
}

// ---- discretized Lebesgue operator ----------------------------------------

LebesgueOperator make_lebesgue_operator(const LebesgueDiscretizationSpec& spec) {
  const std::size_t n = spec.grid_size;
  if (n == 0 || n % 2 != 0) throw Error(ErrorCode::OddGrid, "grid size must be even and positive");
  if (!(spec.a > 0.0 && spec.a < 1.0 && spec.b > 1.0 && std::isfinite(spec.b)))
    throw Error(ErrorCode::InvalidArgument, "need 0 < a < 1 < b");
  if (std::abs(spec.a * spec.b - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "interval must satisfy a = 1/b");

  LebesgueOperator op;
  op.cell_width = (spec.b - spec.a) / static_cast<double>(n);
  op.midpoints.resize(n);
  op.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = spec.a + (static_cast<double>(k) + 0.5) * op.cell_width;
    op.midpoints[k] = x;
    op.weights[k] = std::abs(std::log(x)) / x * op.cell_width;
  }
  op.plain = DenseOperator(n);
  op.weighted = DenseOperator(n);
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = (k + half) % n;
    op.plain(k, src) = op.midpoints[src];
    op.weighted(k, src) =
        op.midpoints[src] * std::sqrt(op.weights[k] / op.weights[src]);
  }
  return op;
}

DenseOperator weighted_adjoint(const DenseOperator& t, const std::vector<double>& weights) {
  const std::size_t n = t.dim();
  if (weights.size() != n) throw Error(ErrorCode::DimensionMismatch, "weighted adjoint: weight count");
  DenseOperator r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(t(j, i)) * weights[j] / weights[i];
  return r;
}

}  // namespace chaoskit
