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
#include "dca/parser.hpp"

#include <map>
#include <string>
#include <vector>

namespace dca {

enum class Generation { Primary, Secondary, Combination, Gauge };
enum class ConstraintClass { Unclassified, First, Second };

std::string_view to_string(Generation generation);
std::string_view to_string(ConstraintClass klass);

/// A weak equality body ~ 0. Bodies are always affine in phase variables.
struct Constraint {
  Expression body;
  Generation generation = Generation::Primary;
  ConstraintClass klass = ConstraintClass::Unclassified;
  std::string label;

  [[nodiscard]] AffineForm affine() const;
};

/// Rescales an affine constraint body to coprime integer coefficients with a
/// positive leading coefficient, momenta taking precedence over coordinates.
AffineForm normalize_constraint(const AffineForm& body, const PhaseSpaceChart& chart);

struct MomentumDefinition {
  std::string momentum;
  Expression value; ///< (M qdot + B q + c)_i over q and d(q)
};

std::vector<MomentumDefinition> momenta(const StructuredLagrangian& lagrangian);

/// Coordinates inside the potential's trig factors that are fixed by a
/// momentum-type primary constraint, in declaration order. These are
/// expressed through momenta in H and preferred as elimination pivots.
std::vector<std::string> trig_pivot_coordinates(const StructuredLagrangian& lagrangian);

/// One constraint per null vector of M, v^T (p - B q - c) ~ 0, in reduced
/// echelon form on the momenta. Each trig pivot coordinate is then cleared
/// from every row except the last one it appears in (preferring rows where it
/// is the only coordinate). Labels are chi1, chi2, ...
std::vector<Constraint> primary_constraints(const StructuredLagrangian& lagrangian);

/// H = p.qdot - L with the expressible velocities eliminated through a
/// nonsingular principal block of M, plus V. Trig arguments of V are rewritten
/// through the primary constraints that pin the trig pivot coordinates.
Expression base_hamiltonian(const StructuredLagrangian& lagrangian);

/// Variable preference used for surface reduction and elimination: trig pivot
/// coordinates, then momenta, then coordinates, each in declaration order.
std::vector<std::string> pivot_priority(const StructuredLagrangian& lagrangian);

} // namespace dca
