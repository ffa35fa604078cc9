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

#include "dca/dirac.hpp"

#include "dca/error.hpp"

#include <algorithm>
#include <numeric>

namespace dca {

std::vector<AffineForm> ConstraintClosure::surface() const {
  std::vector<AffineForm> rows;
  rows.reserve(constraints.size());
  for (const auto& c : constraints) rows.push_back(c.affine());
  return rows;
}

std::vector<Constraint> ConstraintClosure::second_class() const {
  std::vector<Constraint> out;
  for (auto i : scc_indices) out.push_back(constraints[i]);
  return out;
}

namespace {

Rational constant_bracket(const Constraint& a, const Constraint& b,
                          const PhaseSpaceChart& chart) {
  const Expression br = poisson_bracket(a.body, b.body, chart);
  auto c = br.as_constant();
  if (!c)
    throw Error(ErrorCode::NonConstantBracketMatrix, "{" + a.label + ", " + b.label +
                                                         "} = " + br.to_string() +
                                                         " is not constant");
  return *c;
}

std::string combination_label(const std::vector<Rational>& weights,
                              const std::vector<Constraint>& constraints) {
  Expression e;
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (sgn(weights[k]) != 0) e += Expression::variable(constraints[k].label) * weights[k];
  return e.to_string();
}

} // namespace

RationalMatrix bracket_matrix(const std::vector<Constraint>& constraints,
                              const PhaseSpaceChart& chart) {
  const std::size_t n = constraints.size();
  RationalMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      c(i, j) = constant_bracket(constraints[i], constraints[j], chart);
      c(j, i) = -c(i, j);
    }
  return c;
}

ConstraintClosure stabilize(const PhaseSpaceChart& chart, const Expression& hamiltonian,
                            std::vector<Constraint> primaries,
                            std::vector<std::string> priority, std::size_t max_iterations) {
  ConstraintClosure closure;
  closure.chart = chart;
  closure.hamiltonian = hamiltonian;
  closure.primary_count = primaries.size();
  closure.constraints = std::move(primaries);
  closure.priority = priority.empty() ? chart.momenta_first() : std::move(priority);
  const std::size_t bound =
      max_iterations > 0 ? max_iterations : std::max<std::size_t>(1, 2 * chart.dimension());

  const std::size_t np = closure.primary_count;
  RationalMatrix a;
  std::vector<Expression> h;

  for (std::size_t iteration = 1;; ++iteration) {
    const auto surface = closure.surface();
    const std::size_t n = closure.constraints.size();
    a = RationalMatrix(n, np);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < np; ++l)
        a(k, l) = constant_bracket(closure.constraints[k], closure.constraints[l], chart);
    h.clear();
    for (const auto& c : closure.constraints)
      h.push_back(reduce_modulo(poisson_bracket(c.body, hamiltonian, chart), surface,
                                closure.priority));

    if (iteration > bound)
      throw Error(ErrorCode::NonTerminating,
                  "constraint chain did not close within " + std::to_string(bound) +
                      " iterations");

    const RationalMatrix w = left_null_space(a);
    std::vector<AffineForm> working = surface;
    std::vector<Constraint> fresh;
    for (std::size_t r = 0; r < w.rows(); ++r) {
      const auto weights = w.row(r);
      Expression condition;
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(weights[k]) != 0) condition += h[k] * weights[k];
      PersistenceRecord rec{iteration, combination_label(weights, closure.constraints),
                            reduce_modulo(condition, surface, closure.priority),
                            reduce_modulo(condition, working, closure.priority), ""};
      if (rec.value.is_zero()) {
        rec.outcome = "weakly zero";
        closure.log.push_back(std::move(rec));
        continue;
      }
      auto affine = rec.value.as_affine();
      if (!affine)
        throw Error(ErrorCode::NonAffineSecondaryConstraint,
                    "persistence of " + rec.condition + " requires " + rec.value.to_string() +
                        " ~ 0, which is not affine");
      if (affine->is_constant())
        throw Error(ErrorCode::InconsistentConstraints,
                    "persistence of " + rec.condition + " requires " +
                        to_string(affine->constant()) + " = 0");
      const AffineForm body = normalize_constraint(*affine, chart);
      const std::string label = "chi" + std::to_string(n + fresh.size() + 1);
      rec.outcome = "new " + label;
      closure.log.push_back(std::move(rec));
      working.push_back(body);
      fresh.push_back(Constraint{Expression::from_affine(body), Generation::Secondary,
                                 ConstraintClass::Unclassified, label});
    }
    if (fresh.empty()) break;
    for (auto& c : fresh) closure.constraints.push_back(std::move(c));
  }

  // Multipliers from the closed system A alpha = -h.
  const auto surface = closure.surface();
  const RowEchelon e = row_echelon(a);
  std::vector<bool> is_pivot(np, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  closure.particular_multipliers.assign(np, Expression());
  std::set<std::string> determined;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    Expression rhs;
    for (std::size_t k = 0; k < a.rows(); ++k)
      if (sgn(e.transform(r, k)) != 0) rhs -= h[k] * e.transform(r, k);
    rhs = reduce_modulo(rhs, surface, closure.priority);
    const std::size_t l = e.pivots[r];
    closure.particular_multipliers[l] = rhs;
    bool unique = true;
    for (std::size_t f = 0; f < np; ++f)
      if (!is_pivot[f] && sgn(e.reduced(r, f)) != 0) unique = false;
    if (unique) {
      const std::string label = "alpha" + std::to_string(l + 1);
      closure.determined_multipliers.emplace(label, rhs);
      determined.insert(label);
    }
  }
  for (std::size_t l = 0; l < np; ++l) {
    const std::string label = "alpha" + std::to_string(l + 1);
    if (!determined.count(label)) closure.undetermined_multipliers.push_back(label);
  }
  return closure;
}

ConstraintClosure classify(ConstraintClosure closure, const SccPreference& preference) {
  const auto& chart = closure.chart;
  auto& cons = closure.constraints;
  const std::size_t n = cons.size();
  closure.matrix = bracket_matrix(cons, chart);
  closure.fcc_weights = left_null_space(closure.matrix);
  closure.first_class.clear();
  for (std::size_t r = 0; r < closure.fcc_weights.rows(); ++r) {
    Expression body;
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(closure.fcc_weights(r, k)) != 0) body += cons[k].body * closure.fcc_weights(r, k);
    closure.first_class.push_back(Constraint{std::move(body), Generation::Combination,
                                             ConstraintClass::First,
                                             "psi" + std::to_string(r + 1)});
  }
  const std::size_t r = n - closure.fcc_weights.rows();

  auto nonsingular = [&](const std::vector<std::size_t>& s) {
    return sgn(determinant(closure.matrix.submatrix(s, s))) != 0;
  };
  auto keep_compatible = [&](const std::vector<std::size_t>& s) {
    if (preference.keep.empty()) return true;
    std::vector<AffineForm> rows;
    for (auto i : s) rows.push_back(cons[i].affine());
    try {
      solve_affine(rows, closure.priority,
                   std::set<std::string>(preference.keep.begin(), preference.keep.end()));
      return true;
    } catch (const Error&) {
      return false;
    }
  };

  std::vector<std::size_t> chosen;
  if (preference.explicit_choice) {
    std::set<std::size_t> seen;
    for (auto one_based : *preference.explicit_choice) {
      if (one_based == 0 || one_based > n || !seen.insert(one_based).second)
        throw Error(ErrorCode::InvalidSccChoice,
                    "invalid constraint index " + std::to_string(one_based));
      chosen.push_back(one_based - 1);
    }
    std::sort(chosen.begin(), chosen.end());
    if (chosen.size() != r)
      throw Error(ErrorCode::InvalidSccChoice, "second-class set must have " +
                                                   std::to_string(r) + " constraints");
    if (!nonsingular(chosen))
      throw Error(ErrorCode::InvalidSccChoice,
                  "chosen constraints have a singular bracket matrix");
  } else if (r > 0) {
    // Lexicographic walk over r-subsets of {0..n-1}.
    std::vector<std::size_t> s(r);
    std::iota(s.begin(), s.end(), std::size_t{0});
    bool found = false;
    while (true) {
      if (nonsingular(s) && keep_compatible(s)) {
        found = true;
        break;
      }
      std::size_t i = r;
      while (i > 0 && s[i - 1] == n - r + (i - 1)) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < r; ++j) s[j] = s[j - 1] + 1;
    }
    if (!found)
      throw Error(ErrorCode::UnsolvableEliminationChoice,
                  "no second-class set is compatible with the requested kept variables");
    chosen = s;
  }

  closure.scc_indices = chosen;
  auto inv = inverse(closure.matrix.submatrix(chosen, chosen));
  if (!inv) throw Error(ErrorCode::InvariantViolation, "second-class block is singular");
  closure.scc_inverse = std::move(*inv);

  for (std::size_t k = 0; k < n; ++k) {
    bool zero_row = true;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(closure.matrix(k, j)) != 0) zero_row = false;
    if (std::find(chosen.begin(), chosen.end(), k) != chosen.end())
      cons[k].klass = ConstraintClass::Second;
    else
      cons[k].klass = zero_row ? ConstraintClass::First : ConstraintClass::Unclassified;
  }
  closure.classified = true;
  return closure;
}

DofCount dof_count(const ConstraintClosure& closure) {
  if (!closure.classified)
    throw Error(ErrorCode::InvalidArgument, "dof_count needs a classified closure");
  DofCount d;
  d.phase = static_cast<long long>(closure.chart.dimension()) -
            2 * static_cast<long long>(closure.first_class.size()) -
            static_cast<long long>(closure.scc_indices.size());
  d.config = Rational(mpz_class(static_cast<long>(d.phase)), mpz_class(2));
  d.config.canonicalize();
  d.odd = d.phase % 2 != 0;
  return d;
}

DiagnosticReport singularity_scan(const StructuredLagrangian& lagrangian,
                                  const ConstraintClosure& closure) {
  DiagnosticReport r;
  r.kinetic_size = lagrangian.kinetic.rows();
  r.kinetic_rank = rank(lagrangian.kinetic);
  r.constraint_count = closure.constraints.size();
  const RationalMatrix c =
      closure.classified ? closure.matrix : bracket_matrix(closure.constraints, closure.chart);
  r.constraint_matrix_rank = rank(c);
  r.first_class = closure.constraints.size() - r.constraint_matrix_rank;
  r.second_class = r.constraint_matrix_rank;
  if (closure.classified) {
    if (dof_count(closure).odd) r.flags.emplace_back("odd_phase_dof");
    if (closure.scc_indices.size() % 2 != 0) r.flags.emplace_back("odd_second_class_count");
  }
  r.warnings.emplace_back(
      "classification is exact for the bound parameter values only; a parameter limit "
      "(e.g. a capacitance going to zero) can change the rank of the kinetic or "
      "constraint matrix and hence the constraint classes, so the limiting circuit must "
      "be analyzed on its own rather than extrapolated");
  return r;
}

} // namespace dca
