// Copyright 2026 The dca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dca/error.hpp"

namespace dca {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::SyntaxError: return "SyntaxError";
  case ErrorCode::UndeclaredIdentifier: return "UndeclaredIdentifier";
  case ErrorCode::UnboundParameter: return "UnboundParameter";
  case ErrorCode::UnsupportedVelocityStructure:
    return "UnsupportedVelocityStructure";
  case ErrorCode::UnsupportedExpression: return "UnsupportedExpression";
  case ErrorCode::DependentConstraintSet: return "DependentConstraintSet";
  case ErrorCode::UnboundVariable: return "UnboundVariable";
  case ErrorCode::NonAffineSecondaryConstraint:
    return "NonAffineSecondaryConstraint";
  case ErrorCode::InconsistentConstraints: return "InconsistentConstraints";
  case ErrorCode::NonTerminating: return "NonTerminating";
  case ErrorCode::NonConstantBracketMatrix: return "NonConstantBracketMatrix";
  case ErrorCode::InvalidSccChoice: return "InvalidSccChoice";
  case ErrorCode::UnsolvableEliminationChoice:
    return "UnsolvableEliminationChoice";
  case ErrorCode::InadmissibleGauge: return "InadmissibleGauge";
  case ErrorCode::NonFiniteState: return "NonFiniteState";
  case ErrorCode::OperatorOrderingUnsupported:
    return "OperatorOrderingUnsupported";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

} // namespace dca
