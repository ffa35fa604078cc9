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

#include "dca/expr.hpp"
#include "dca/matrix.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dca {

/// Parsed `.lagr` file. Parameters are already folded into the expressions as
/// exact rationals; `lagrangian` carries velocities as the symbols d(q).
struct LagrangianSource {
  PhaseSpaceChart chart;
  std::vector<std::pair<std::string, Rational>> parameters;
  Expression lagrangian;
  std::vector<AffineForm> gauges;
  std::vector<std::string> keep;
};

/// Symbol used for the velocity of `coordinate` inside parsed expressions.
std::string velocity_name(const std::string& coordinate);

/// Default conjugate-momentum name for a coordinate declared without one.
std::string default_momentum_name(const std::string& coordinate);

/// Parses a whole `.lagr` document.
///
/// Grammar (line oriented, `#` starts a comment):
///
///     var x1 x2 X:pi          coordinates, optional `:momentum` names
///     param E=5 L1=1/2        exact rational bindings (p, p/q, decimals)
///     lagrangian:             expression, may continue over several lines
///       ...
///     gauge: a*x1 + b*x3      optional, repeatable, affine
///     keep: x3 P3             optional, variables to keep after elimination
///
/// Expressions use `+ - * / ^`, `d(q)` for velocities and `sin`, `cos`. `^`
/// binds tighter than unary minus and takes non-negative integer exponents;
/// division is only by constants.
///
/// Errors: SyntaxError (with line/column), UndeclaredIdentifier,
/// UnboundParameter, UnsupportedExpression.
LagrangianSource parse(std::string_view text);

/// Parses a single expression over the chart variables (coordinates and
/// momenta) and the given parameters. Velocities are accepted only when
/// `allow_velocities` is set.
Expression parse_expression(std::string_view text, const PhaseSpaceChart& chart,
                            const std::map<std::string, Rational>& parameters = {},
                            bool allow_velocities = false);

/// L = 1/2 qdot^T M qdot + qdot^T (B q + c) - V(q).
struct StructuredLagrangian {
  PhaseSpaceChart chart;
  RationalMatrix kinetic;       ///< M, symmetric n x n
  RationalMatrix coupling;      ///< B, n x n, as written (no symmetrization)
  std::vector<Rational> linear; ///< c
  Expression potential;         ///< V, coordinates only

  /// Re-expands the decomposition into an expression over q and d(q).
  [[nodiscard]] Expression to_expression() const;

  friend bool operator==(const StructuredLagrangian& a, const StructuredLagrangian& b) {
    return a.chart.coordinates() == b.chart.coordinates() &&
           a.chart.momenta() == b.chart.momenta() && a.kinetic == b.kinetic &&
           a.coupling == b.coupling && a.linear == b.linear && a.potential == b.potential;
  }
};

/// Splits the parsed Lagrangian into (M, B, c, V). Anything beyond quadratic
/// velocity dependence, velocities times non-linear coordinate factors, or
/// velocities inside trig factors throws UnsupportedVelocityStructure.
StructuredLagrangian canonicalize(const LagrangianSource& source);

/// DSL text that canonicalizes back to `lagrangian`.
std::string print(const StructuredLagrangian& lagrangian);

} // namespace dca
