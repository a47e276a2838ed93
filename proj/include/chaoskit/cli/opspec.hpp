#pragma once

#include <string>

#include "chaoskit/numerics.hpp"

namespace chaoskit::cli {

/// Builds an operator from a JSON object:
///   {"kind": "weighted_backward_shift", "dim": N, "weights": "1/n"}
///   {"kind": "block_perturbation", "lambda": [re, im], "blocks": J, "eps": "pow:-0.5",
///    "sizes": "j" | "2j", "first_block": 1, "cap": 4096}
///   {"kind": "multiplication", "dim": N, "coefficients": [a0, [re, im], ...]}
///   {"kind": "lebesgue", "dim": N, "b": 2, "space": "weighted" | "plain"}
/// Every kind also takes "adjoint": bool and "shift": scalar, applied in that
/// order. Complex values are numbers or [re, im] pairs.
/// Throws ParseError (malformed JSON with its line, or a field of the wrong
/// type) and InvalidConfig (unknown keys, bad values).
DenseOperator parse_operator_spec(const std::string& json_text);

}  // namespace chaoskit::cli
