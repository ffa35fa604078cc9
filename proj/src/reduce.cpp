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

#include "dca/reduce.hpp"

#include "dca/error.hpp"

#include <algorithm>
#include <set>

namespace dca {

DiracStructure make_dirac_structure(const PhaseSpaceChart& chart,
                                    std::vector<Constraint> second_class,
                                    std::vector<std::string> priority,
                                    const std::vector<std::string>& keep) {
  DiracStructure d;
  d.chart = chart;
  d.priority = priority.empty() ? chart.momenta_first() : std::move(priority);
  d.constraints = std::move(second_class);
  d.matrix = bracket_matrix(d.constraints, chart);
  auto inv = inverse(d.matrix);
  if (!inv)
    throw Error(ErrorCode::InvariantViolation,
                "bracket matrix of the second-class set is singular");
  d.inverse = std::move(*inv);

  std::vector<AffineForm> rows;
  for (const auto& c : d.constraints) rows.push_back(c.affine());
  const std::set<std::string> frozen(keep.begin(), keep.end());
  AffineSolution sol;
  try {
    sol = solve_affine(rows, d.priority, frozen);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsolvableEliminationChoice) throw;
    const AffineSolution fallback = solve_affine(rows, d.priority);
    std::string can_keep;
    for (const auto& v : chart.variables())
      if (!fallback.solved.count(v)) can_keep += (can_keep.empty() ? "" : " ") + v;
    throw Error(ErrorCode::UnsolvableEliminationChoice,
                std::string(e.what()) + "; a valid kept set is {" + can_keep + "}");
  }
  d.solved = std::move(sol.solved);
  for (const auto& v : chart.variables())
    if (!d.solved.count(v)) d.kept.push_back(v);

  const std::size_t m = d.kept.size();
  d.omega = RationalMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const Expression b = dirac_bracket_raw(Expression::variable(d.kept[i]),
                                             Expression::variable(d.kept[j]), d);
      auto c = b.as_constant();
      if (!c)
        throw Error(ErrorCode::InvariantViolation,
                    "Dirac bracket of " + d.kept[i] + " and " + d.kept[j] + " is not constant");
      d.omega(i, j) = *c;
      d.omega(j, i) = -*c;
    }
  return d;
}

DiracStructure make_dirac_structure(const ConstraintClosure& closure,
                                    const std::vector<std::string>& keep) {
  if (!closure.classified)
    throw Error(ErrorCode::InvalidArgument, "Dirac structure needs a classified closure");
  return make_dirac_structure(closure.chart, closure.second_class(), closure.priority, keep);
}

Expression dirac_bracket_raw(const Expression& a, const Expression& b,
                             const DiracStructure& d) {
  Expression out = poisson_bracket(a, b, d.chart);
  const std::size_t n = d.constraints.size();
  std::vector<Expression> left(n);
  std::vector<Expression> right(n);
  for (std::size_t r = 0; r < n; ++r) {
    left[r] = poisson_bracket(a, d.constraints[r].body, d.chart);
    right[r] = poisson_bracket(d.constraints[r].body, b, d.chart);
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (left[r].is_zero()) continue;
    Expression inner;
    for (std::size_t s = 0; s < n; ++s)
      if (sgn(d.inverse(r, s)) != 0 && !right[s].is_zero()) inner += right[s] * d.inverse(r, s);
    if (!inner.is_zero()) out -= left[r] * inner;
  }
  return out;
}

Expression dirac_bracket(const Expression& a, const Expression& b, const DiracStructure& d) {
  return dirac_bracket_raw(a, b, d).substitute(d.solved);
}

Elimination eliminate(const Expression& hamiltonian, const DiracStructure& d) {
  return {hamiltonian.substitute(d.solved), d.solved};
}

DiracStructure gauge_fix(const DiracStructure& d, const std::vector<Constraint>& first_class,
                         const std::vector<GaugeCondition>& gauges,
                         const std::vector<std::string>& keep) {
  if (gauges.size() != first_class.size())
    throw Error(ErrorCode::InvalidArgument,
                "need exactly one gauge condition per first-class constraint (" +
                    std::to_string(first_class.size()) + " first-class, " +
                    std::to_string(gauges.size()) + " gauges)");
  std::vector<Constraint> extended = d.constraints;
  for (const auto& f : first_class) extended.push_back(f);
  for (std::size_t k = 0; k < gauges.size(); ++k)
    extended.push_back(Constraint{Expression::from_affine(gauges[k].body), Generation::Gauge,
                                  ConstraintClass::Second, "theta" + std::to_string(k + 1)});
  for (auto& c : extended) c.klass = ConstraintClass::Second;
  if (sgn(determinant(bracket_matrix(extended, d.chart))) == 0)
    throw Error(ErrorCode::InadmissibleGauge,
                "gauge conditions leave the extended bracket matrix singular");
  return make_dirac_structure(d.chart, std::move(extended), d.priority, keep);
}

namespace {

using Vec = std::vector<Rational>;

Rational form(const Vec& u, const Vec& v, const RationalMatrix& omega) {
  Rational acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(v[j]) != 0) acc += u[i] * omega(i, j) * v[j];
  }
  return acc;
}

Expression to_expression(const Vec& v, const std::vector<std::string>& names) {
  Expression e;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) e += Expression::variable(names[i]) * v[i];
  return e;
}

std::vector<std::pair<Vec, Vec>> darboux_vectors(const RationalMatrix& omega,
                                                 std::vector<Vec>& casimirs) {
  const std::size_t m = omega.rows();
  std::vector<Vec> pool;
  for (std::size_t i = 0; i < m; ++i) {
    Vec e(m);
    e[i] = 1;
    pool.push_back(std::move(e));
  }
  std::vector<std::pair<Vec, Vec>> pairs;
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> hit;
    for (std::size_t i = 0; i < pool.size() && !hit; ++i)
      for (std::size_t j = 0; j < pool.size() && !hit; ++j)
        if (i != j && sgn(form(pool[i], pool[j], omega)) != 0) hit = {{i, j}};
    if (!hit) break;
    const auto [i, j] = *hit;
    Vec q = pool[i];
    Vec p = pool[j];
    const Rational w = form(q, p, omega);
    for (auto& x : p) x /= w;
    std::vector<Vec> rest;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (k == i || k == j) continue;
      Vec v = pool[k];
      const Rational wp = form(v, p, omega);
      const Rational wq = form(v, q, omega);
      for (std::size_t t = 0; t < m; ++t) v[t] += wq * p[t] - wp * q[t];
      rest.push_back(std::move(v));
    }
    pool = std::move(rest);
    pairs.emplace_back(std::move(q), std::move(p));
  }
  casimirs = std::move(pool);
  return pairs;
}

} // namespace

CanonicalChart darboux(const DiracStructure& d) {
  std::vector<Vec> cas;
  const auto pairs = darboux_vectors(d.omega, cas);
  CanonicalChart chart;
  for (const auto& [q, p] : pairs)
    chart.pairs.push_back({to_expression(q, d.kept), to_expression(p, d.kept)});
  for (const auto& c : cas) chart.casimirs.push_back(to_expression(c, d.kept));
  return chart;
}

std::string verify_chart(const CanonicalChart& chart, const DiracStructure& d) {
  const std::size_t n = chart.pairs.size();
  auto db = [&](const Expression& a, const Expression& b) { return dirac_bracket(a, b, d); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = chart.pairs[i];
      const auto& b = chart.pairs[j];
      if (db(a.q, b.p) != Expression(i == j ? 1 : 0))
        return "{Q" + std::to_string(i + 1) + ", P" + std::to_string(j + 1) +
               "} = " + db(a.q, b.p).to_string();
      if (i < j && !db(a.q, b.q).is_zero())
        return "{Q" + std::to_string(i + 1) + ", Q" + std::to_string(j + 1) + "} != 0";
      if (i < j && !db(a.p, b.p).is_zero())
        return "{P" + std::to_string(i + 1) + ", P" + std::to_string(j + 1) + "} != 0";
    }
  for (std::size_t c = 0; c < chart.casimirs.size(); ++c)
    for (const auto& v : d.chart.variables())
      if (!db(chart.casimirs[c], Expression::variable(v)).is_zero())
        return "casimir " + std::to_string(c + 1) + " does not commute with " + v;
  return {};
}

namespace {

// Q1, P1, ... unless one of them is already a chart variable, then Q_1, P_1.
std::string name_separator(std::size_t pairs, std::size_t casimirs, const PhaseSpaceChart& old) {
  for (std::size_t i = 1; i <= std::max(pairs, casimirs); ++i) {
    const auto k = std::to_string(i);
    if ((i <= pairs && (old.contains("Q" + k) || old.contains("P" + k))) ||
        (i <= casimirs && old.contains("C" + k)))
      return "_";
  }
  return "";
}

} // namespace

ChartTransform to_canonical_chart(const Expression& reduced_hamiltonian,
                                  const CanonicalChart& chart, const DiracStructure& d) {
  const std::size_t m = d.kept.size();
  std::vector<Expression> rows;
  std::vector<std::string> names;
  std::vector<std::string> qs;
  std::vector<std::string> ps;
  ChartTransform out;
  const std::string sep = name_separator(chart.pairs.size(), chart.casimirs.size(), d.chart);
  for (std::size_t i = 0; i < chart.pairs.size(); ++i) {
    qs.push_back("Q" + sep + std::to_string(i + 1));
    ps.push_back("P" + sep + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < chart.pairs.size(); ++i) {
    rows.push_back(chart.pairs[i].q);
    names.push_back(qs[i]);
    rows.push_back(chart.pairs[i].p);
    names.push_back(ps[i]);
  }
  for (std::size_t c = 0; c < chart.casimirs.size(); ++c) {
    rows.push_back(chart.casimirs[c]);
    names.push_back("C" + sep + std::to_string(c + 1));
    out.casimir_names.push_back(names.back());
  }
  if (rows.size() != m)
    throw Error(ErrorCode::InvalidArgument, "chart does not span the kept variables");

  RationalMatrix k(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    auto affine = rows[r].as_affine();
    if (!affine || sgn(affine->constant()) != 0)
      throw Error(ErrorCode::InvalidArgument, "chart functions must be linear");
    for (std::size_t c = 0; c < m; ++c) k(r, c) = affine->coefficient(d.kept[c]);
  }
  auto inv = inverse(k);
  if (!inv) throw Error(ErrorCode::InvalidArgument, "chart functions are not independent");
  for (std::size_t i = 0; i < m; ++i) {
    AffineForm f;
    for (std::size_t j = 0; j < m; ++j) f.add(names[j], (*inv)(i, j));
    out.kept_in_chart.emplace(d.kept[i], std::move(f));
  }
  out.chart = PhaseSpaceChart(qs, ps);
  out.hamiltonian = reduced_hamiltonian.substitute(out.kept_in_chart);
  return out;
}

} // namespace dca
