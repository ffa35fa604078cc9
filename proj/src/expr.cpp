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

#include "dca/expr.hpp"

#include "dca/error.hpp"
#include "dca/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dca {

// ---------------------------------------------------------------- chart

PhaseSpaceChart::PhaseSpaceChart(std::vector<std::string> coordinates,
                                 std::vector<std::string> momenta)
    : coordinates_(std::move(coordinates)), momenta_(std::move(momenta)) {
  if (coordinates_.size() != momenta_.size())
    throw Error(ErrorCode::InvalidArgument,
                "chart needs as many momenta as coordinates");
  std::set<std::string> seen;
  for (const auto& n : variables())
    if (!seen.insert(n).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate chart variable '" + n + "'");
}

std::vector<std::string> PhaseSpaceChart::variables() const {
  std::vector<std::string> all = coordinates_;
  all.insert(all.end(), momenta_.begin(), momenta_.end());
  return all;
}

std::vector<std::string> PhaseSpaceChart::momenta_first() const {
  std::vector<std::string> all = momenta_;
  all.insert(all.end(), coordinates_.begin(), coordinates_.end());
  return all;
}

std::optional<Variable> PhaseSpaceChart::find(std::string_view name) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    if (coordinates_[i] == name) return Variable{coordinates_[i], VarKind::Coordinate, i};
    if (momenta_[i] == name) return Variable{momenta_[i], VarKind::Momentum, i};
  }
  return std::nullopt;
}

std::size_t PhaseSpaceChart::position(std::string_view name) const {
  auto v = find(name);
  if (!v) throw Error(ErrorCode::UnboundVariable, "unknown variable '" + std::string(name) + "'");
  return v->kind == VarKind::Coordinate ? v->index : size() + v->index;
}

// ---------------------------------------------------------------- affine

AffineForm AffineForm::variable(const std::string& name, const Rational& coeff) {
  AffineForm f;
  f.add(name, coeff);
  return f;
}

Rational AffineForm::coefficient(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void AffineForm::add(const std::string& name, const Rational& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(name, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }
}

AffineForm& AffineForm::operator+=(const AffineForm& other) {
  for (const auto& [n, c] : other.coeffs_) add(n, c);
  constant_ += other.constant_;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
  for (const auto& [n, c] : other.coeffs_) add(n, -c);
  constant_ -= other.constant_;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [n, c] : coeffs_) c *= factor;
  constant_ *= factor;
  return *this;
}

AffineForm AffineForm::substitute(const std::map<std::string, AffineForm>& values) const {
  AffineForm out(constant_);
  for (const auto& [n, c] : coeffs_) {
    auto it = values.find(n);
    if (it == values.end())
      out.add(n, c);
    else
      out += it->second * c;
  }
  return out;
}

double AffineForm::evaluate(const std::map<std::string, double>& values) const {
  double acc = to_double(constant_);
  for (const auto& [n, c] : coeffs_) {
    auto it = values.find(n);
    if (it == values.end())
      throw Error(ErrorCode::UnboundVariable, "no value for variable '" + n + "'");
    acc += to_double(c) * it->second;
  }
  return acc;
}

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

} // namespace

int compare(const AffineForm& a, const AffineForm& b) {
  auto ia = a.coeffs_.begin();
  auto ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (int c = cmp_rational(ia->second, ib->second)) return c;
  }
  if (ia != a.coeffs_.end()) return 1;
  if (ib != b.coeffs_.end()) return -1;
  return cmp_rational(a.constant_, b.constant_);
}

int compare(const TrigFactor& a, const TrigFactor& b) {
  if (a.kind != b.kind) return a.kind == TrigKind::Sin ? -1 : 1;
  return compare(a.argument, b.argument);
}

// ---------------------------------------------------------------- term keys

namespace {

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [n, e] : m) d += e;
  return d;
}

// < 0 when a precedes b in graded lexicographic order (bigger first).
int compare_monomials(const Monomial& a, const Monomial& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da > db ? -1 : 1;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (ia->second != ib->second) return ia->second > ib->second ? -1 : 1;
  }
  if (ia != a.end()) return -1;
  if (ib != b.end()) return 1;
  return 0;
}

bool trig_less(const TrigFactor& a, const TrigFactor& b) { return compare(a, b) < 0; }

} // namespace

bool TermKeyLess::operator()(const TermKey& a, const TermKey& b) const {
  if (int c = compare_monomials(a.monomial, b.monomial)) return c < 0;
  if (a.trig.size() != b.trig.size()) return a.trig.size() < b.trig.size();
  for (std::size_t i = 0; i < a.trig.size(); ++i)
    if (int c = compare(a.trig[i], b.trig[i])) return c < 0;
  return false;
}

// ---------------------------------------------------------------- expression

Expression::Expression(const Rational& constant) {
  if (sgn(constant) != 0) terms_.emplace(TermKey{}, constant);
}

Expression Expression::variable(const std::string& name) {
  Expression e;
  e.terms_.emplace(TermKey{Monomial{{name, 1}}, {}}, Rational(1));
  return e;
}

Expression Expression::from_affine(const AffineForm& form) {
  Expression e(form.constant());
  for (const auto& [n, c] : form.coefficients())
    e.add_term(TermKey{Monomial{{n, 1}}, {}}, c);
  return e;
}

Expression Expression::trig(TrigKind kind, const AffineForm& argument) {
  if (argument.is_constant()) {
    if (sgn(argument.constant()) == 0) return Expression(kind == TrigKind::Cos ? 1 : 0);
    throw Error(ErrorCode::UnsupportedExpression,
                "trigonometric factor of the nonzero constant " +
                    dca::to_string(argument.constant()) + " is outside the expression class");
  }
  AffineForm arg = argument;
  Rational coeff = 1;
  if (sgn(arg.coefficients().begin()->second) < 0) {
    arg = -arg;
    if (kind == TrigKind::Sin) coeff = -1;
  }
  Expression e;
  e.terms_.emplace(TermKey{{}, {TrigFactor{kind, std::move(arg)}}}, coeff);
  return e;
}

void Expression::add_term(TermKey key, const Rational& coefficient) {
  if (sgn(coefficient) == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(key), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::vector<Term> Expression::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back(Term{c, k.monomial, k.trig});
  return out;
}

std::optional<Rational> Expression::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.monomial.empty() &&
      terms_.begin()->first.trig.empty())
    return terms_.begin()->second;
  return std::nullopt;
}

std::optional<AffineForm> Expression::as_affine() const {
  AffineForm f;
  for (const auto& [k, c] : terms_) {
    if (!k.trig.empty()) return std::nullopt;
    const int d = total_degree(k.monomial);
    if (d == 0)
      f.add_constant(c);
    else if (d == 1)
      f.add(k.monomial.begin()->first, c);
    else
      return std::nullopt;
  }
  return f;
}

int Expression::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k.monomial));
  return d;
}

bool Expression::has_trig() const {
  for (const auto& [k, c] : terms_)
    if (!k.trig.empty()) return true;
  return false;
}

std::set<std::string> Expression::variables() const {
  std::set<std::string> names;
  for (const auto& [k, c] : terms_) {
    for (const auto& [n, e] : k.monomial) names.insert(n);
    for (const auto& t : k.trig)
      for (const auto& [n, a] : t.argument.coefficients()) names.insert(n);
  }
  return names;
}

Expression& Expression::operator+=(const Expression& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

Expression& Expression::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= factor;
  return *this;
}

Expression& Expression::operator*=(const Expression& other) {
  *this = *this * other;
  return *this;
}

Expression operator*(const Expression& a, const Expression& b) {
  Expression out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      TermKey key = ka;
      for (const auto& [n, e] : kb.monomial) key.monomial[n] += e;
      if (!kb.trig.empty()) {
        key.trig.insert(key.trig.end(), kb.trig.begin(), kb.trig.end());
        std::sort(key.trig.begin(), key.trig.end(), trig_less);
      }
      out.add_term(std::move(key), ca * cb);
    }
  return out;
}

Expression Expression::operator-() const {
  Expression e = *this;
  for (auto& [k, c] : e.terms_) c = -c;
  return e;
}

Expression Expression::pow(unsigned exponent) const {
  Expression result(1);
  Expression base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Expression Expression::diff(const std::string& name) const {
  Expression out;
  for (const auto& [k, c] : terms_) {
    if (auto it = k.monomial.find(name); it != k.monomial.end()) {
      TermKey key = k;
      const int e = it->second;
      if (e == 1)
        key.monomial.erase(name);
      else
        key.monomial[name] = e - 1;
      out.add_term(std::move(key), c * e);
    }
    for (std::size_t i = 0; i < k.trig.size(); ++i) {
      const Rational a = k.trig[i].argument.coefficient(name);
      if (sgn(a) == 0) continue;
      TermKey key = k;
      Rational coeff = c * a;
      if (k.trig[i].kind == TrigKind::Cos) {
        key.trig[i].kind = TrigKind::Sin;
        coeff = -coeff;
      } else {
        key.trig[i].kind = TrigKind::Cos;
      }
      std::sort(key.trig.begin(), key.trig.end(), trig_less);
      out.add_term(std::move(key), coeff);
    }
  }
  return out;
}

Expression Expression::substitute(const std::map<std::string, AffineForm>& values) const {
  Expression out;
  for (const auto& [k, c] : terms_) {
    Expression piece(c);
    TermKey kept;
    for (const auto& [n, e] : k.monomial) {
      if (auto it = values.find(n); it != values.end())
        piece = piece * from_affine(it->second).pow(static_cast<unsigned>(e));
      else
        kept.monomial[n] = e;
    }
    Expression rest;
    rest.terms_.emplace(std::move(kept), Rational(1));
    piece = piece * rest;
    for (const auto& t : k.trig) {
      piece = piece * trig(t.kind, t.argument.substitute(values));
      if (piece.is_zero()) break;
    }
    out += piece;
  }
  return out;
}

double Expression::evaluate(const std::map<std::string, double>& values) const {
  double acc = 0.0;
  for (const auto& [k, c] : terms_) {
    double v = to_double(c);
    for (const auto& [n, e] : k.monomial) {
      auto it = values.find(n);
      if (it == values.end())
        throw Error(ErrorCode::UnboundVariable, "no value for variable '" + n + "'");
      v *= std::pow(it->second, e);
    }
    for (const auto& t : k.trig) {
      const double arg = t.argument.evaluate(values);
      v *= t.kind == TrigKind::Sin ? std::sin(arg) : std::cos(arg);
    }
    acc += v;
  }
  return acc;
}

namespace {

std::string factor_string(const TermKey& key) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, e] : key.monomial) {
    if (!first) os << '*';
    first = false;
    os << n;
    if (e != 1) os << '^' << e;
  }
  for (const auto& t : key.trig) {
    if (!first) os << '*';
    first = false;
    os << (t.kind == TrigKind::Sin ? "sin(" : "cos(") << to_string(t.argument) << ')';
  }
  return os.str();
}

} // namespace

std::string Expression::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const std::string factors = factor_string(k);
    if (factors.empty())
      os << dca::to_string(mag);
    else if (mag == 1)
      os << factors;
    else
      os << dca::to_string(mag) << '*' << factors;
  }
  return os.str();
}

std::string to_string(const AffineForm& form) {
  return Expression::from_affine(form).to_string();
}

// ---------------------------------------------------------------- brackets

Expression poisson_bracket(const Expression& a, const Expression& b,
                           const PhaseSpaceChart& chart) {
  const auto va = a.variables();
  const auto vb = b.variables();
  Expression out;
  for (std::size_t i = 0; i < chart.size(); ++i) {
    const auto& q = chart.coordinates()[i];
    const auto& p = chart.momenta()[i];
    if (va.count(q) && vb.count(p)) out += a.diff(q) * b.diff(p);
    if (va.count(p) && vb.count(q)) out -= a.diff(p) * b.diff(q);
  }
  return out;
}

// ---------------------------------------------------------------- surfaces

AffineSolution solve_affine(const std::vector<AffineForm>& rows,
                            const std::vector<std::string>& priority,
                            const std::set<std::string>& frozen) {
  AffineSolution sol;
  if (rows.empty()) return sol;

  std::vector<std::string> columns;
  std::set<std::string> present;
  for (const auto& r : rows)
    for (const auto& [n, c] : r.coefficients()) present.insert(n);
  for (const auto& n : priority)
    if (present.count(n) && std::find(columns.begin(), columns.end(), n) == columns.end())
      columns.push_back(n);
  for (const auto& n : present)
    if (std::find(columns.begin(), columns.end(), n) == columns.end()) columns.push_back(n);

  const std::size_t nv = columns.size();
  RationalMatrix m(rows.size(), nv + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < nv; ++c) m(r, c) = rows[r].coefficient(columns[c]);
    m(r, nv) = rows[r].constant();
  }

  RationalMatrix coeffs(rows.size(), nv);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < nv; ++c) coeffs(r, c) = m(r, c);
  if (rank(coeffs) != rows.size())
    throw Error(ErrorCode::DependentConstraintSet,
                "affine constraint set is linearly dependent");

  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < nv; ++c)
    if (!frozen.count(columns[c])) order.push_back(c);
  const RowEchelon e = row_echelon(m, order);
  if (e.pivots.size() != rows.size()) {
    std::string names;
    for (const auto& f : frozen) names += (names.empty() ? "" : ", ") + f;
    throw Error(ErrorCode::UnsolvableEliminationChoice,
                "constraints cannot be solved while keeping {" + names + "}");
  }

  std::vector<bool> is_pivot(nv + 1, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t pc = e.pivots[r];
    AffineForm value(-e.reduced(r, nv));
    for (std::size_t c = 0; c < nv; ++c)
      if (!is_pivot[c] && sgn(e.reduced(r, c)) != 0) value.add(columns[c], -e.reduced(r, c));
    sol.solved.emplace(columns[pc], std::move(value));
    sol.pivots.push_back(columns[pc]);
  }
  return sol;
}

Expression reduce_modulo(const Expression& a, const std::vector<AffineForm>& surface,
                         const std::vector<std::string>& priority) {
  if (surface.empty()) return a;
  return a.substitute(solve_affine(surface, priority).solved);
}

} // namespace dca
