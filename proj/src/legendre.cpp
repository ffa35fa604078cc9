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

#include "dca/legendre.hpp"

#include "dca/error.hpp"
#include "dca/matrix.hpp"

#include <algorithm>

namespace dca {

std::string_view to_string(Generation generation) {
  switch (generation) {
  case Generation::Primary: return "primary";
  case Generation::Secondary: return "secondary";
  case Generation::Combination: return "combination";
  case Generation::Gauge: return "gauge";
  }
  return "?";
}

std::string_view to_string(ConstraintClass klass) {
  switch (klass) {
  case ConstraintClass::Unclassified: return "unclassified";
  case ConstraintClass::First: return "first";
  case ConstraintClass::Second: return "second";
  }
  return "?";
}

AffineForm Constraint::affine() const {
  auto a = body.as_affine();
  if (!a)
    throw Error(ErrorCode::InvariantViolation,
                "constraint " + label + " is not affine: " + body.to_string());
  return *a;
}

AffineForm normalize_constraint(const AffineForm& body, const PhaseSpaceChart& chart) {
  if (body.is_constant()) return body;
  mpz_class den_lcm = body.constant().get_den();
  for (const auto& [n, c] : body.coefficients()) {
    mpz_class d = c.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  AffineForm scaled = body * Rational(den_lcm);
  mpz_class g = scaled.constant().get_num();
  for (const auto& [n, c] : scaled.coefficients()) {
    mpz_class num = c.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g != 0) scaled *= Rational(1, 1) / Rational(g);

  Rational lead;
  for (const auto& n : chart.momenta_first())
    if (sgn(lead = scaled.coefficient(n)) != 0) break;
  if (sgn(lead) == 0) lead = scaled.coefficients().begin()->second;
  if (sgn(lead) < 0) scaled = -scaled;
  return scaled;
}

std::vector<MomentumDefinition> momenta(const StructuredLagrangian& lagrangian) {
  const auto& chart = lagrangian.chart;
  const std::size_t n = chart.size();
  std::vector<MomentumDefinition> out;
  for (std::size_t i = 0; i < n; ++i) {
    Expression p(lagrangian.linear[i]);
    for (std::size_t j = 0; j < n; ++j) {
      p += Expression::variable(velocity_name(chart.coordinates()[j])) *
           lagrangian.kinetic(i, j);
      p += Expression::variable(chart.coordinates()[j]) * lagrangian.coupling(i, j);
    }
    out.push_back({chart.momenta()[i], std::move(p)});
  }
  return out;
}

namespace {

// p - B q - c, one affine form per coordinate.
std::vector<AffineForm> shifted_momenta(const StructuredLagrangian& sl) {
  const auto& chart = sl.chart;
  std::vector<AffineForm> pi;
  for (std::size_t i = 0; i < chart.size(); ++i) {
    AffineForm f = AffineForm::variable(chart.momenta()[i]);
    for (std::size_t j = 0; j < chart.size(); ++j) f.add(chart.coordinates()[j], -sl.coupling(i, j));
    f.add_constant(-sl.linear[i]);
    pi.push_back(std::move(f));
  }
  return pi;
}

struct PrimaryStructure {
  std::vector<AffineForm> rows;
  std::vector<std::string> claimed;
  std::map<std::string, AffineForm> rewrite; // claimed coordinate -> value
};

std::vector<std::string> trig_coordinates(const StructuredLagrangian& sl) {
  std::set<std::string> in_trig;
  for (const Term& t : sl.potential.terms())
    for (const auto& f : t.trig)
      for (const auto& [n, c] : f.argument.coefficients()) in_trig.insert(n);
  std::vector<std::string> out;
  for (const auto& q : sl.chart.coordinates())
    if (in_trig.count(q)) out.push_back(q);
  return out;
}

PrimaryStructure primary_structure(const StructuredLagrangian& sl) {
  const auto& chart = sl.chart;
  const std::size_t n = chart.size();
  PrimaryStructure ps;
  const auto basis = null_space(sl.kinetic);
  if (basis.empty()) return ps;

  const auto pi = shifted_momenta(sl);
  // Columns: momenta, coordinates, constant.
  const auto vars = chart.momenta_first();
  RationalMatrix m(basis.size(), vars.size() + 1);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    AffineForm row;
    for (std::size_t i = 0; i < n; ++i) row += pi[i] * basis[r][i];
    for (std::size_t c = 0; c < vars.size(); ++c) m(r, c) = row.coefficient(vars[c]);
    m(r, vars.size()) = row.constant();
  }
  std::vector<std::size_t> momentum_cols(n);
  for (std::size_t i = 0; i < n; ++i) momentum_cols[i] = i;
  const RationalMatrix reduced = row_echelon(m, momentum_cols).reduced;

  for (std::size_t r = 0; r < reduced.rows(); ++r) {
    AffineForm row(reduced(r, vars.size()));
    for (std::size_t c = 0; c < vars.size(); ++c) row.add(vars[c], reduced(r, c));
    ps.rows.push_back(std::move(row));
  }

  auto coordinate_count = [&](const AffineForm& f) {
    std::size_t k = 0;
    for (const auto& q : chart.coordinates())
      if (sgn(f.coefficient(q)) != 0) ++k;
    return k;
  };

  std::set<std::size_t> used_rows;
  for (const auto& z : trig_coordinates(sl)) {
    std::optional<std::size_t> pick;
    bool pick_pure = false;
    for (std::size_t r = 0; r < ps.rows.size(); ++r) {
      if (used_rows.count(r) || sgn(ps.rows[r].coefficient(z)) == 0) continue;
      const bool pure = coordinate_count(ps.rows[r]) == 1;
      if (!pick || pure || !pick_pure) {
        pick = r;
        pick_pure = pure;
      }
    }
    if (!pick) continue;
    const AffineForm pivot_row = ps.rows[*pick];
    const Rational zc = pivot_row.coefficient(z);
    for (std::size_t r = 0; r < ps.rows.size(); ++r) {
      if (r == *pick) continue;
      const Rational f = ps.rows[r].coefficient(z);
      if (sgn(f) != 0) ps.rows[r] -= pivot_row * Rational(f / zc);
    }
    used_rows.insert(*pick);
    ps.claimed.push_back(z);
  }
  // A claimed coordinate survives only in its own row.
  for (std::size_t k = 0; k < ps.claimed.size(); ++k) {
    const auto& z = ps.claimed[k];
    for (const auto& row : ps.rows) {
      const Rational zc = row.coefficient(z);
      if (sgn(zc) == 0) continue;
      AffineForm value = row;
      value.add(z, -zc);
      ps.rewrite[z] = value * Rational(-1 / zc);
      break;
    }
  }
  for (auto& row : ps.rows) row = normalize_constraint(row, chart);
  return ps;
}

Expression rewrite_trig_arguments(const Expression& e,
                                  const std::map<std::string, AffineForm>& rewrite) {
  if (rewrite.empty()) return e;
  Expression out;
  for (const Term& t : e.terms()) {
    Expression term(t.coefficient);
    for (const auto& [n, p] : t.monomial)
      term = term * Expression::variable(n).pow(static_cast<unsigned>(p));
    for (const auto& f : t.trig)
      term = term * Expression::trig(f.kind, f.argument.substitute(rewrite));
    out += term;
  }
  return out;
}

} // namespace

std::vector<std::string> trig_pivot_coordinates(const StructuredLagrangian& lagrangian) {
  return primary_structure(lagrangian).claimed;
}

std::vector<Constraint> primary_constraints(const StructuredLagrangian& lagrangian) {
  const PrimaryStructure ps = primary_structure(lagrangian);
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < ps.rows.size(); ++i)
    out.push_back(Constraint{Expression::from_affine(ps.rows[i]), Generation::Primary,
                             ConstraintClass::Unclassified, "chi" + std::to_string(i + 1)});
  return out;
}

Expression base_hamiltonian(const StructuredLagrangian& lagrangian) {
  const RowEchelon e = row_echelon(lagrangian.kinetic);
  // For symmetric M, the principal block on a maximal set of independent
  // columns is nonsingular.
  const std::vector<std::size_t>& idx = e.pivots;
  Expression h;
  if (!idx.empty()) {
    auto inv = inverse(lagrangian.kinetic.submatrix(idx, idx));
    if (!inv)
      throw Error(ErrorCode::InvariantViolation, "principal kinetic block is singular");
    const auto pi = shifted_momenta(lagrangian);
    std::vector<Expression> block;
    for (auto i : idx) block.push_back(Expression::from_affine(pi[i]));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) {
        const Rational w = (*inv)(a, b) / 2;
        if (sgn(w) != 0) h += block[a] * block[b] * w;
      }
  }
  h += rewrite_trig_arguments(lagrangian.potential, primary_structure(lagrangian).rewrite);
  return h;
}

std::vector<std::string> pivot_priority(const StructuredLagrangian& lagrangian) {
  std::vector<std::string> order = trig_pivot_coordinates(lagrangian);
  for (const auto& n : lagrangian.chart.momenta_first())
    if (std::find(order.begin(), order.end(), n) == order.end()) order.push_back(n);
  return order;
}

} // namespace dca
