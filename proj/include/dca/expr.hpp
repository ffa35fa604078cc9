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

#include "dca/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dca {

enum class VarKind { Coordinate, Momentum };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Coordinate;
  std::size_t index = 0; ///< ordinal within its kind; pairs q_i with p_i
};

/// Ordered canonical pairs (q_i, p_i) with {q_i, p_j} = delta_ij.
class PhaseSpaceChart {
public:
  PhaseSpaceChart() = default;
  PhaseSpaceChart(std::vector<std::string> coordinates,
                  std::vector<std::string> momenta);

  [[nodiscard]] std::size_t size() const noexcept { return coordinates_.size(); }
  [[nodiscard]] std::size_t dimension() const noexcept { return 2 * size(); }
  [[nodiscard]] const std::vector<std::string>& coordinates() const noexcept {
    return coordinates_;
  }
  [[nodiscard]] const std::vector<std::string>& momenta() const noexcept {
    return momenta_;
  }
  /// Coordinates followed by momenta.
  [[nodiscard]] std::vector<std::string> variables() const;
  /// Momenta followed by coordinates.
  [[nodiscard]] std::vector<std::string> momenta_first() const;

  [[nodiscard]] std::optional<Variable> find(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const {
    return find(name).has_value();
  }
  /// Position in variables(); throws UnboundVariable for unknown names.
  [[nodiscard]] std::size_t position(std::string_view name) const;

private:
  std::vector<std::string> coordinates_;
  std::vector<std::string> momenta_;
};

/// sum_v c_v * v + constant, with no zero coefficients stored.
class AffineForm {
public:
  AffineForm() = default;
  explicit AffineForm(Rational constant) : constant_(std::move(constant)) {}
  static AffineForm variable(const std::string& name, const Rational& coeff = 1);

  [[nodiscard]] const std::map<std::string, Rational>& coefficients() const noexcept {
    return coeffs_;
  }
  [[nodiscard]] const Rational& constant() const noexcept { return constant_; }
  [[nodiscard]] Rational coefficient(const std::string& name) const;

  [[nodiscard]] bool is_constant() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] bool is_zero() const noexcept {
    return coeffs_.empty() && sgn(constant_) == 0;
  }

  void add(const std::string& name, const Rational& coeff);
  void add_constant(const Rational& value) { constant_ += value; }

  AffineForm& operator+=(const AffineForm& other);
  AffineForm& operator-=(const AffineForm& other);
  AffineForm& operator*=(const Rational& factor);
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational& f) { return a *= f; }
  friend AffineForm operator*(const Rational& f, AffineForm a) { return a *= f; }
  AffineForm operator-() const { return *this * Rational(-1); }

  [[nodiscard]] AffineForm
  substitute(const std::map<std::string, AffineForm>& values) const;
  [[nodiscard]] double evaluate(const std::map<std::string, double>& values) const;

  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }
  /// Total order: coefficient-wise lexicographic, then constant.
  friend int compare(const AffineForm& a, const AffineForm& b);

private:
  std::map<std::string, Rational> coeffs_;
  Rational constant_;
};

enum class TrigKind { Sin, Cos };

/// sin/cos of a non-constant affine argument whose leading coefficient is
/// positive.
struct TrigFactor {
  TrigKind kind = TrigKind::Cos;
  AffineForm argument;

  friend bool operator==(const TrigFactor& a, const TrigFactor& b) {
    return a.kind == b.kind && a.argument == b.argument;
  }
};
int compare(const TrigFactor& a, const TrigFactor& b);

using Monomial = std::map<std::string, int>;

struct TermKey {
  Monomial monomial;
  std::vector<TrigFactor> trig; ///< sorted multiset

  friend bool operator==(const TermKey&, const TermKey&) = default;
};

/// Graded lexicographic on monomials (higher degree first), then trig keys.
struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const;
};

struct Term {
  Rational coefficient;
  Monomial monomial;
  std::vector<TrigFactor> trig;
};

/// Canonical sum of terms: rational coefficient x monomial x product of trig
/// factors of affine arguments. The class is closed under +, *, d/dz and
/// affine substitution, hence under Poisson brackets.
class Expression {
public:
  Expression() = default;
  Expression(const Rational& constant); // NOLINT(google-explicit-constructor)
  Expression(int constant) : Expression(Rational(constant)) {} // NOLINT

  static Expression variable(const std::string& name);
  static Expression from_affine(const AffineForm& form);
  /// sin/cos(argument) in canonical sign convention. A zero argument folds to
  /// 1 or 0; a nonzero constant argument is outside the class and throws
  /// UnsupportedExpression.
  static Expression trig(TrigKind kind, const AffineForm& argument);

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] std::vector<Term> terms() const;
  [[nodiscard]] std::optional<Rational> as_constant() const;
  /// Degree <= 1 and no trig factors.
  [[nodiscard]] std::optional<AffineForm> as_affine() const;
  /// Polynomial degree, ignoring trig factors.
  [[nodiscard]] int degree() const;
  [[nodiscard]] bool has_trig() const;
  /// All variable names, including those inside trig arguments.
  [[nodiscard]] std::set<std::string> variables() const;

  Expression& operator+=(const Expression& other);
  Expression& operator-=(const Expression& other);
  Expression& operator*=(const Expression& other);
  Expression& operator*=(const Rational& factor);
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(Expression a, const Rational& f) { return a *= f; }
  friend Expression operator*(const Rational& f, Expression a) { return a *= f; }
  Expression operator-() const;
  [[nodiscard]] Expression pow(unsigned exponent) const;

  [[nodiscard]] Expression diff(const std::string& name) const;
  [[nodiscard]] Expression
  substitute(const std::map<std::string, AffineForm>& values) const;
  [[nodiscard]] double evaluate(const std::map<std::string, double>& values) const;

  friend bool operator==(const Expression& a, const Expression& b) {
    return a.terms_ == b.terms_;
  }

  /// Canonical text in the DSL expression grammar.
  [[nodiscard]] std::string to_string() const;

private:
  void add_term(TermKey key, const Rational& coefficient);

  std::map<TermKey, Rational, TermKeyLess> terms_;
};

std::string to_string(const AffineForm& form);

/// {A, B} = sum_i dA/dq_i dB/dp_i - dA/dp_i dB/dq_i over the chart's pairs.
/// Symbols outside the chart are treated as constants.
Expression poisson_bracket(const Expression& a, const Expression& b,
                           const PhaseSpaceChart& chart);

/// Solution of an affine system S = 0 by Gauss-Jordan elimination: each pivot
/// variable is expressed through non-pivot variables only.
struct AffineSolution {
  std::vector<std::string> pivots; ///< one per row, in echelon order
  std::map<std::string, AffineForm> solved;
};

/// Solves `rows` = 0. Pivot columns are tried in `priority` order first, then
/// remaining variables by name; `frozen` variables never become pivots.
/// Throws DependentConstraintSet when the rows are linearly dependent and
/// UnsolvableEliminationChoice when a row has no admissible pivot.
AffineSolution solve_affine(const std::vector<AffineForm>& rows,
                            const std::vector<std::string>& priority = {},
                            const std::set<std::string>& frozen = {});

/// Normal form of `a` on the surface S = 0 (pivot substitution). Idempotent.
Expression reduce_modulo(const Expression& a, const std::vector<AffineForm>& surface,
                         const std::vector<std::string>& priority = {});

} // namespace dca
