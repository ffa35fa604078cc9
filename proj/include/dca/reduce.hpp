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

#include "dca/dirac.hpp"
#include "dca/expr.hpp"
#include "dca/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace dca {

/// Second-class set with its inverted bracket matrix, plus the strong
/// solution of the set for the discarded variables.
struct DiracStructure {
  PhaseSpaceChart chart;
  std::vector<Constraint> constraints;        ///< the second-class set
  RationalMatrix matrix;                      ///< C over `constraints`
  RationalMatrix inverse;                     ///< C^-1
  std::vector<std::string> priority;
  std::vector<std::string> kept;              ///< chart order
  std::map<std::string, AffineForm> solved;   ///< discarded -> affine in kept
  RationalMatrix omega;                       ///< {kept_i, kept_j}_DB
};

/// Builds the structure over an explicit second-class set. Discarded
/// variables are pivots of the set taken in `priority` order, never from
/// `keep`.
///
/// Errors: InvariantViolation (singular C), UnsolvableEliminationChoice
/// (message lists a working kept set).
DiracStructure make_dirac_structure(const PhaseSpaceChart& chart,
                                    std::vector<Constraint> second_class,
                                    std::vector<std::string> priority,
                                    const std::vector<std::string>& keep = {});

DiracStructure make_dirac_structure(const ConstraintClosure& closure,
                                    const std::vector<std::string>& keep = {});

/// {A,B} - {A,chi_r} C^-1_rs {chi_s,B}, before surface reduction.
Expression dirac_bracket_raw(const Expression& a, const Expression& b,
                             const DiracStructure& d);

/// Dirac bracket reduced on the second-class surface (discarded variables
/// substituted).
Expression dirac_bracket(const Expression& a, const Expression& b, const DiracStructure& d);

struct Elimination {
  Expression hamiltonian;
  std::map<std::string, AffineForm> solved;
};

/// Uses the second-class constraints strongly: substitutes every discarded
/// variable in H.
Elimination eliminate(const Expression& hamiltonian, const DiracStructure& d);

struct GaugeCondition {
  AffineForm body;
  std::string target; ///< label of the first-class constraint it fixes
};

/// Appends each first-class constraint and its gauge condition to the
/// second-class set and rebuilds the structure.
///
/// Errors: InvalidArgument (gauge count differs from FCC count),
/// InadmissibleGauge (extended bracket matrix singular).
DiracStructure gauge_fix(const DiracStructure& d, const std::vector<Constraint>& first_class,
                         const std::vector<GaugeCondition>& gauges,
                         const std::vector<std::string>& keep = {});

struct CanonicalPair {
  Expression q;
  Expression p;
};

struct CanonicalChart {
  std::vector<CanonicalPair> pairs;
  std::vector<Expression> casimirs;
};

/// Symplectic Gram-Schmidt on omega over the rationals.
CanonicalChart darboux(const DiracStructure& d);

/// Exact check of {Q_i,P_j} = delta_ij, {Q_i,Q_j} = {P_i,P_j} = 0 and of the
/// casimirs commuting with every kept variable. Returns an empty string on
/// success, otherwise a description of the first failure.
std::string verify_chart(const CanonicalChart& chart, const DiracStructure& d);

/// H rewritten in the Darboux variables of `chart`.
struct ChartTransform {
  PhaseSpaceChart chart;                    ///< (Q_i, P_i)
  std::vector<std::string> casimir_names;   ///< C1, C2, ... (constants of motion)
  Expression hamiltonian;
  std::map<std::string, AffineForm> kept_in_chart; ///< kept variable -> new variables
};

ChartTransform to_canonical_chart(const Expression& reduced_hamiltonian,
                                  const CanonicalChart& chart, const DiracStructure& d);

} // namespace dca
