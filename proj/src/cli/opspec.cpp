#include "chaoskit/cli/opspec.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "json.hpp"

#include "chaoskit/operators.hpp"
#include "chaoskit/polynomial.hpp"

namespace chaoskit::cli {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(std::string_view field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + std::string(field) + "': " + what);
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
  }
}

std::size_t positive_size(const json& j, std::string_view field) {
  const json& v = j.at(std::string(field));
  if (v.is_number_integer()) {
    const std::int64_t n = v.get<std::int64_t>();
    if (n <= 0) throw Error(ErrorCode::InvalidConfig, std::string(field) + " must be positive");
    return static_cast<std::size_t>(n);
  }
  field_error(field, "expected a positive integer");
}

std::size_t size_or(const json& j, std::string_view field, std::size_t fallback) {
  return j.contains(std::string(field)) ? positive_size(j, field) : fallback;
}

std::string string_or(const json& j, std::string_view field, const std::string& fallback) {
  if (!j.contains(std::string(field))) return fallback;
  const json& v = j.at(std::string(field));
  if (!v.is_string()) field_error(field, "expected a string");
  return v.get<std::string>();
}

double real_field(const json& v, std::string_view field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

Complex complex_value(const json& v, std::string_view field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  field_error(field, "expected a number or [re, im]");
}

DenseOperator build_shift(const json& j) {
  reject_unknown_keys(j, {"kind", "dim", "weights", "adjoint", "shift"});
  const std::size_t dim = positive_size(j, "dim");
  const SequenceRule rule = SequenceRule::parse(string_or(j, "weights", "1/n"));
  return make_weighted_backward_shift(WeightedShiftSpec::from_rule(dim, rule));
}

DenseOperator build_blocks(const json& j) {
  reject_unknown_keys(j, {"kind", "dim", "lambda", "blocks", "eps", "sizes", "first_block", "cap", "adjoint",
                          "shift"});
  BlockPerturbationSpec spec;
  if (j.contains("lambda")) spec.lambda = complex_value(j.at("lambda"), "lambda");
  spec.block_count = positive_size(j, "blocks");
  spec.first_block = size_or(j, "first_block", 1);
  spec.dim_cap = size_or(j, "cap", kDefaultBlockDimCap);
  const SequenceRule eps = SequenceRule::parse(string_or(j, "eps", "pow:-0.5"));
  spec.epsilon = [eps](std::size_t k) { return eps(k); };
  const std::string sizes = string_or(j, "sizes", "j");
  if (sizes == "2j")
    spec.block_size = [](std::size_t k) { return 2 * k; };
  else if (sizes != "j")
    throw Error(ErrorCode::InvalidConfig, "sizes must be \"j\" or \"2j\"");
  DenseOperator t = make_block_perturbation(spec);
  if (j.contains("dim") && positive_size(j, "dim") != t.dim())
    throw Error(ErrorCode::InvalidConfig, "dim " + std::to_string(positive_size(j, "dim")) +
                                              " does not match the block layout (" + std::to_string(t.dim()) + ")");
  return t;
}

DenseOperator build_multiplication(const json& j) {
  reject_unknown_keys(j, {"kind", "dim", "coefficients", "adjoint", "shift"});
  const std::size_t dim = positive_size(j, "dim");
  if (!j.contains("coefficients")) field_error("coefficients", "missing");
  const json& c = j.at("coefficients");
  if (!c.is_array() || c.empty()) field_error("coefficients", "expected a nonempty array");
  std::vector<Complex> coeffs;
  for (const json& v : c) coeffs.push_back(complex_value(v, "coefficients"));
  return make_multiplication_truncation(AnalyticPolynomial(std::move(coeffs)), dim);
}

DenseOperator build_lebesgue(const json& j) {
  reject_unknown_keys(j, {"kind", "dim", "a", "b", "space", "adjoint", "shift"});
  LebesgueDiscretizationSpec spec;
  spec.grid_size = positive_size(j, "dim");
  if (j.contains("b")) spec.b = real_field(j.at("b"), "b");
  spec.a = j.contains("a") ? real_field(j.at("a"), "a") : 1.0 / spec.b;
  const std::string space = string_or(j, "space", "weighted");
  if (space != "weighted" && space != "plain")
    throw Error(ErrorCode::InvalidConfig, "space must be \"weighted\" or \"plain\"");
  LebesgueOperator op = make_lebesgue_operator(spec);
  return space == "weighted" ? std::move(op.weighted) : std::move(op.plain);
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
  return 1 + static_cast<std::size_t>(std::count(text.begin(), end, '\n'));
}

}  // namespace

DenseOperator parse_operator_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_of(json_text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "line 1: operator spec must be a JSON object");
  if (!j.contains("kind")) field_error("kind", "missing");
  const std::string kind = string_or(j, "kind", "");

  DenseOperator t;
  try {
    if (kind == "weighted_backward_shift")
      t = build_shift(j);
    else if (kind == "block_perturbation")
      t = build_blocks(j);
    else if (kind == "multiplication")
      t = build_multiplication(j);
    else if (kind == "lebesgue")
      t = build_lebesgue(j);
    else
      throw Error(ErrorCode::InvalidConfig, "unknown operator kind '" + kind + "'");
  } catch (const json::out_of_range& e) {
    throw Error(ErrorCode::ParseError, std::string("missing field: ") + e.what());
  }

  if (j.contains("adjoint")) {
    if (!j.at("adjoint").is_boolean()) field_error("adjoint", "expected true or false");
    if (j.at("adjoint").get<bool>()) t = adjoint(t);
  }
  if (j.contains("shift")) t = scalar_perturb(complex_value(j.at("shift"), "shift"), std::move(t));
  return t;
}

}  // namespace chaoskit::cli
