#include "chaoskit/error.hpp"

namespace chaoskit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::OddGrid: return "OddGrid";
    case ErrorCode::NonpositiveArgument: return "NonpositiveArgument";
    case ErrorCode::DegenerateIntegral: return "DegenerateIntegral";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::RootOnCircle: return "RootOnCircle";
    case ErrorCode::NotCowenDouglas: return "NotCowenDouglas";
    case ErrorCode::BoundaryUncertain: return "BoundaryUncertain";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace chaoskit
