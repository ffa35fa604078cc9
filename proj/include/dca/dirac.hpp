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
#include "dca/legendre.hpp"
#include "dca/matrix.hpp"
#include "dca/parser.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dca {

/// One consistency condition examined during stabilization.
struct PersistenceRecord {
  std::size_t iteration = 0;
  std::string condition;   ///< combination of constraint labels, e.g. "chi1"
  Expression raw;          ///< time derivative on the surface known at entry
  Expression value;        ///< the same, also modulo constraints found this iteration
  std::string outcome;     ///< "new chi5", "weakly zero"
};

struct ConstraintClosure {
  PhaseSpaceChart chart;
  Expression hamiltonian;
  std::vector<Constraint> constraints; ///< primaries first, then secondaries
  std::size_t primary_count = 0;
  std::vector<std::string> priority;   ///< pivot preference for reductions

  /// alpha_k uniquely fixed by persistence, keyed "alpha<k>" after primary k.
  std::map<std::string, Expression> determined_multipliers;
  std::vector<std::string> undetermined_multipliers;
  /// Particular solution of the multiplier system (free multipliers = 0).
  std::vector<Expression> particular_multipliers;
  std::vector<PersistenceRecord> log;

  // Filled by classify().
  bool classified = false;
  RationalMatrix matrix;                 ///< C_kl = {chi_k, chi_l}
  std::vector<std::size_t> scc_indices;  ///< into constraints
  RationalMatrix fcc_weights;            ///< rows: FCC as combos of constraints
  std::vector<Constraint> first_class;   ///< psi1, psi2, ...
  RationalMatrix scc_inverse;            ///< inverse of C restricted to SCCs

  [[nodiscard]] std::vector<AffineForm> surface() const;
  [[nodiscard]] std::vector<Constraint> second_class() const;
};

/// Runs the persistence loop chi_dot_k = {chi_k, H + sum_l alpha_l phi_l} ~ 0
/// over the primaries phi. Undetermined residues become new (normalized)
/// secondary constraints until the set closes. `max_iterations` = 0 means
/// 2 * dim(phase space).
///
/// Errors: NonAffineSecondaryConstraint, InconsistentConstraints,
/// NonTerminating.
ConstraintClosure stabilize(const PhaseSpaceChart& chart, const Expression& hamiltonian,
                            std::vector<Constraint> primaries,
                            std::vector<std::string> priority = {},
                            std::size_t max_iterations = 0);

/// How the second-class complement is picked.
struct SccPreference {
  /// 1-based constraint indices; overrides the automatic choice when set.
  std::optional<std::vector<std::size_t>> explicit_choice;
  /// When non-empty, only subsets that can be solved for the non-kept
  /// variables are admitted.
  std::vector<std::string> keep;
};

/// Computes C exactly, takes the RREF basis of its left null space as the
/// first-class set and the lexicographically lowest index subset with a
/// nonsingular bracket block as the second-class set.
///
/// Errors: NonConstantBracketMatrix, InvalidSccChoice,
/// UnsolvableEliminationChoice (no subset compatible with `keep`).
ConstraintClosure classify(ConstraintClosure closure, const SccPreference& preference = {});

struct DofCount {
  long long phase = 0;
  Rational config;
  bool odd = false; ///< signals a misclassification
};

DofCount dof_count(const ConstraintClosure& closure);

struct DiagnosticReport {
  std::size_t kinetic_size = 0;
  std::size_t kinetic_rank = 0;
  std::size_t constraint_count = 0;
  std::size_t constraint_matrix_rank = 0;
  std::size_t first_class = 0;
  std::size_t second_class = 0;
  std::vector<std::string> flags;
  std::vector<std::string> warnings;
};

DiagnosticReport singularity_scan(const StructuredLagrangian& lagrangian,
                                  const ConstraintClosure& closure);

/// Constant bracket matrix of affine constraints. Throws
/// NonConstantBracketMatrix if an entry is not a rational constant.
RationalMatrix bracket_matrix(const std::vector<Constraint>& constraints,
                              const PhaseSpaceChart& chart);

} // namespace dca
