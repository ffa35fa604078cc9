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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dca {

enum class ErrorCode {
  SyntaxError,
  UndeclaredIdentifier,
  UnboundParameter,
  UnsupportedVelocityStructure,
  UnsupportedExpression,
  DependentConstraintSet,
  UnboundVariable,
  NonAffineSecondaryConstraint,
  InconsistentConstraints,
  NonTerminating,
  NonConstantBracketMatrix,
  InvalidSccChoice,
  UnsolvableEliminationChoice,
  InadmissibleGauge,
  NonFiniteState,
  OperatorOrderingUnsupported,
  InvalidArgument,
  InvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the engine. `line`/`column` are 1-based and only
/// meaningful for parse errors (0 otherwise).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, int line = 0,
        int column = 0)
      : std::runtime_error(message), code_(code), line_(line),
        column_(column) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

private:
  ErrorCode code_;
  int line_;
  int column_;
};

} // namespace dca
