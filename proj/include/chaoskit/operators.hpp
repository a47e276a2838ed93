#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chaoskit/numerics.hpp"
#include "chaoskit/polynomial.hpp"

namespace chaoskit {

// ---- sequence rules -------------------------------------------------------

/// Index rule n -> value parsed from "1/n", "const:<v>" or "pow:<p>" (n^p).
/// Indices start at 1.
class SequenceRule {
 public:
  static SequenceRule parse(const std::string& text);
  static SequenceRule reciprocal() { return parse("1/n"); }
  static SequenceRule constant(double v);
  static SequenceRule power(double p);

  double operator()(std::size_t n) const;
  const std::string& text() const noexcept { return text_; }

 private:
  enum class Kind { Reciprocal, Constant, Power };
  Kind kind_ = Kind::Reciprocal;
  double param_ = 0.0;
  std::string text_ = "1/n";
};

// ---- weighted backward shift ----------------------------------------------

struct WeightedShiftSpec {
  std::size_t dim = 0;
  std::vector<Complex> weights;  // w_1 .. w_{dim-1}

  static WeightedShiftSpec from_rule(std::size_t dim, const SequenceRule& rule);
  static WeightedShiftSpec unit(std::size_t dim);
};

/// Superdiagonal matrix with M(n-1, n) = w_n: e_n -> w_n e_{n-1}, e_0 -> 0.
DenseOperator make_weighted_backward_shift(const WeightedShiftSpec& spec);

/// lambda I + T
DenseOperator scalar_perturb(Complex lambda, DenseOperator t);

// ---- block perturbations --------------------------------------------------

inline constexpr std::size_t kDefaultBlockDimCap = 4096;

struct BlockPerturbationSpec {
  Complex lambda{1.0, 0.0};
  std::size_t block_count = 0;
  std::function<std::size_t(std::size_t)> block_size = [](std::size_t j) { return j; };
  std::function<double(std::size_t)> epsilon = [](std::size_t j) {
    return 1.0 / std::sqrt(static_cast<double>(j));
  };
  std::size_t dim_cap = kDefaultBlockDimCap;
  std::size_t first_block = 1;  // blocks first_block .. first_block + block_count - 1
};

struct BlockInfo {
  std::size_t index;   // j
  std::size_t offset;  // first row of the block
  std::size_t size;
  double epsilon;
};

/// Block positions and epsilons. Validates the spec: epsilons positive and
/// nonincreasing, sizes positive, total dimension within the cap.
std::vector<BlockInfo> block_layout(const BlockPerturbationSpec& spec);

/// (lambda - eps) I + S with S the superdiagonal 2 eps.
DenseOperator make_perturbation_block(std::size_t size, double epsilon, Complex lambda);

/// Block-diagonal direct sum of make_perturbation_block over the layout.
DenseOperator make_block_perturbation(const BlockPerturbationSpec& spec);

/// Inverse of make_perturbation_block via the terminating Neumann series:
/// entry (i, i+k) = (lambda-eps)^{-1} (-2 eps / (lambda-eps))^k.
DenseOperator block_inverse_closed_form(std::size_t size, double epsilon, Complex lambda);

/// m-th power of the inverse block: entry (i, i+k) =
/// (lambda-eps)^{-m} C(m+k-1, k) (-2 eps / (lambda-eps))^k.
DenseOperator block_inverse_power(std::size_t size, double epsilon, Complex lambda, unsigned m);

/// Block vector f_j: ones(j)/sqrt(j) on block j, zero elsewhere.
StateVector block_unit_vector(const std::vector<BlockInfo>& layout, std::size_t dim,
                              std::size_t block_index);

// ---- star numbers ---------------------------------------------------------

using BigInt = boost::multiprecision::cpp_int;

struct StarNumber {
  unsigned j = 1;
  unsigned m = 0;
  BigInt value;
};

/// star(j, 0) = j and star(j, m+1) = star(1, m) + ... + star(j, m).
StarNumber star_number(unsigned j, unsigned m);

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(unsigned n, unsigned k);

// ---- Hardy-space truncations ----------------------------------------------

/// Lower-triangular Toeplitz M(i, j) = a_{i-j}: multiplication by phi on
/// span{1, z, ..., z^{N-1}}.
DenseOperator make_multiplication_truncation(const AnalyticPolynomial& phi, std::size_t dim);

/// Taylor coefficients (1, conj(z), conj(z)^2, ...) of the kernel 1/(1 - conj(z) s).
StateVector reproducing_kernel_vector(Complex z, std::size_t dim);

// ---- discretized Lebesgue operator ----------------------------------------

struct LebesgueDiscretizationSpec {
  double a = 0.5;
  double b = 2.0;
  std::size_t grid_size = 64;
};

struct LebesgueOperator {
  std::vector<double> midpoints;  // x_k
  std::vector<double> weights;    // f(x_k) dx, f(x) = |ln x| / x
  double cell_width = 0.0;
  DenseOperator plain;     // P D: (T h)_k = x_{pi(k)} h_{pi(k)}
  DenseOperator weighted;  // W^{1/2} P D W^{-1/2}: the same map in orthonormal coordinates of the weighted space
};

/// Uniform grid on [a, b] with a = 1/b; P swaps the two halves of the grid.
LebesgueOperator make_lebesgue_operator(const LebesgueDiscretizationSpec& spec);

/// Adjoint with respect to <u, v>_w = sum_k w_k conj(u_k) v_k: W^{-1} T^* W.
DenseOperator weighted_adjoint(const DenseOperator& t, const std::vector<double>& weights);

}  // namespace chaoskit
