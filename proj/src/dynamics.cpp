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

#include "dca/dynamics.hpp"

#include "dca/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dca {

const Expression& EquationsOfMotion::rate(const std::string& variable) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == variable) return rates[i];
  throw Error(ErrorCode::InvalidArgument, "no equation for " + variable);
}

EquationsOfMotion equations_of_motion(const Expression& hamiltonian, const DiracStructure& d) {
  EquationsOfMotion eom;
  for (const auto& v : d.kept) {
    eom.variables.push_back(v);
    eom.rates.push_back(dirac_bracket(Expression::variable(v), hamiltonian, d));
  }
  return eom;
}

EquationsOfMotion canonical_equations(const Expression& hamiltonian,
                                      const PhaseSpaceChart& chart) {
  EquationsOfMotion eom;
  for (const auto& v : chart.variables()) {
    eom.variables.push_back(v);
    eom.rates.push_back(poisson_bracket(Expression::variable(v), hamiltonian, chart));
  }
  return eom;
}

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw Error(ErrorCode::UnboundVariable, "no value for variable '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

} // namespace

CompiledExpression::CompiledExpression(const Expression& e,
                                       const std::vector<std::string>& variables) {
  for (const Term& t : e.terms()) {
    Item item;
    item.coefficient = to_double(t.coefficient);
    for (const auto& [n, p] : t.monomial) item.powers.emplace_back(index_of(variables, n), p);
    for (const auto& f : t.trig) {
      Factor factor;
      factor.is_sin = f.kind == TrigKind::Sin;
      factor.offset = to_double(f.argument.constant());
      for (const auto& [n, c] : f.argument.coefficients())
        factor.linear.emplace_back(index_of(variables, n), to_double(c));
      item.trig.push_back(std::move(factor));
    }
    items_.push_back(std::move(item));
  }
}

double CompiledExpression::operator()(const std::vector<double>& state) const {
  double sum = 0;
  for (const auto& item : items_) {
    double v = item.coefficient;
    for (const auto& [i, p] : item.powers)
      for (int k = 0; k < p; ++k) v *= state[i];
    for (const auto& f : item.trig) {
      double arg = f.offset;
      for (const auto& [i, c] : f.linear) arg += c * state[i];
      v *= f.is_sin ? std::sin(arg) : std::cos(arg);
    }
    sum += v;
  }
  return sum;
}

std::size_t Trajectory::column(const std::string& variable) const {
  auto it = std::find(variables.begin(), variables.end(), variable);
  if (it == variables.end())
    throw Error(ErrorCode::InvalidArgument, "trajectory has no variable " + variable);
  return static_cast<std::size_t>(it - variables.begin());
}

std::vector<double> Trajectory::series(const std::string& variable) const {
  const std::size_t j = column(variable);
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s[j]);
  return out;
}

Trajectory integrate(const EquationsOfMotion& eom, const std::map<std::string, double>& initial,
                     double dt, double t_end) {
  if (!(dt > 0) || !std::isfinite(dt))
    throw Error(ErrorCode::InvalidArgument, "dt must be a positive finite number");
  if (!std::isfinite(t_end) || t_end < dt)
    throw Error(ErrorCode::InvalidArgument, "t_end must be finite and at least dt");

  const std::size_t n = eom.variables.size();
  std::vector<CompiledExpression> rates;
  for (const auto& r : eom.rates) rates.emplace_back(r, eom.variables);

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = initial.find(eom.variables[i]);
    if (it == initial.end())
      throw Error(ErrorCode::InvalidArgument, "missing initial value for " + eom.variables[i]);
    y[i] = it->second;
  }

  // The small slack keeps t_end/dt = 10000.000000000002 from adding a step.
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt * (1 - 1e-12)));
  const double h = t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.variables = eom.variables;
  traj.step = h;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0);
  traj.states.push_back(y);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto eval = [&](const std::vector<double>& at, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = rates[i](at);
  };
  for (std::size_t s = 1; s <= steps; ++s) {
    eval(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    eval(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    eval(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    eval(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (!std::isfinite(y[i]))
        throw Error(ErrorCode::NonFiniteState,
                    eom.variables[i] + " became non-finite at step " + std::to_string(s) +
                        " (t = " + std::to_string(static_cast<double>(s) * h) + ")");
    }
    traj.times.push_back(s == steps ? t_end : static_cast<double>(s) * h);
    traj.states.push_back(y);
  }
  return traj;
}

Trajectory reconstruct(const Trajectory& trajectory,
                       const std::map<std::string, AffineForm>& solved,
                       const std::vector<std::string>& order) {
  std::vector<std::string> extra;
  if (order.empty()) {
    for (const auto& [n, f] : solved) extra.push_back(n);
  } else {
    for (const auto& n : order)
      if (solved.count(n)) extra.push_back(n);
  }
  Trajectory out = trajectory;
  out.variables.insert(out.variables.end(), extra.begin(), extra.end());
  std::vector<CompiledExpression> fs;
  for (const auto& n : extra)
    fs.emplace_back(Expression::from_affine(solved.at(n)), trajectory.variables);
  for (std::size_t i = 0; i < out.states.size(); ++i)
    for (const auto& f : fs) out.states[i].push_back(f(trajectory.states[i]));
  return out;
}

std::vector<double> evaluate_along(const Expression& e, const Trajectory& trajectory) {
  const CompiledExpression f(e, trajectory.variables);
  std::vector<double> out;
  out.reserve(trajectory.states.size());
  for (const auto& s : trajectory.states) out.push_back(f(s));
  return out;
}

std::string to_csv(const Trajectory& trajectory) {
  std::ostringstream os;
  os << 't';
  for (const auto& v : trajectory.variables) os << ',' << v;
  os << '\n';
  char buf[32];
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", trajectory.times[i]);
    os << buf;
    for (double v : trajectory.states[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::map<std::string, double> transport_state(const std::map<std::string, double>& state,
                                              const std::vector<Constraint>& first_class,
                                              const std::vector<AffineForm>& gauges,
                                              const PhaseSpaceChart& chart) {
  const std::size_t m = first_class.size();
  if (gauges.size() != m)
    throw Error(ErrorCode::InvalidArgument, "one gauge condition per first-class constraint");
  if (m == 0) return state;
  // Orbit direction of psi_k: z_dot = {z, psi_k}, constant for affine psi.
  std::vector<std::map<std::string, double>> flow(m);
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& v : chart.variables()) {
      auto c = poisson_bracket(Expression::variable(v), first_class[k].body, chart).as_constant();
      if (!c)
        throw Error(ErrorCode::NonConstantBracketMatrix, "gauge flow is not a translation");
      if (sgn(*c) != 0) flow[k][v] = to_double(*c);
    }
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  for (std::size_t j = 0; j < m; ++j) {
    rhs(static_cast<Eigen::Index>(j)) = -gauges[j].evaluate(state);
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0;
      for (const auto& [v, c] : flow[k]) s += to_double(gauges[j].coefficient(v)) * c;
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = s;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw Error(ErrorCode::InadmissibleGauge, "gauge orbit does not cross the gauge surface");
  const Eigen::VectorXd eps = lu.solve(rhs);
  auto out = state;
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& [v, c] : flow[k]) out[v] += eps(static_cast<Eigen::Index>(k)) * c;
  return out;
}

std::vector<std::vector<double>> jacobian(const EquationsOfMotion& eom,
                                          const std::map<std::string, double>& point,
                                          double h) {
  const std::size_t n = eom.variables.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = point.find(eom.variables[i]);
    if (it == point.end())
      throw Error(ErrorCode::InvalidArgument, "missing value for " + eom.variables[i]);
    x[i] = it->second;
  }
  std::vector<CompiledExpression> rates;
  for (const auto& r : eom.rates) rates.emplace_back(r, eom.variables);
  std::vector<std::vector<double>> j(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    auto up = x;
    auto down = x;
    up[c] += h;
    down[c] -= h;
    for (std::size_t r = 0; r < n; ++r) j[r][c] = (rates[r](up) - rates[r](down)) / (2 * h);
  }
  return j;
}

std::vector<std::complex<double>> eigenvalues(const std::vector<std::vector<double>>& matrix) {
  const auto n = static_cast<Eigen::Index>(matrix.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

double linear_frequency(const EquationsOfMotion& eom,
                        const std::map<std::string, double>& point) {
  double best = 0;
  for (const auto& l : eigenvalues(jacobian(eom, point))) best = std::max(best, std::abs(l.imag()));
  return best;
}

double crossing_frequency(const std::vector<double>& times, const std::vector<double>& series) {
  if (series.size() < 3 || times.size() != series.size()) return 0;
  double mean = 0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  std::vector<double> crossings;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double a = series[i - 1] - mean;
    const double b = series[i] - mean;
    if (a < 0 && b >= 0) crossings.push_back(times[i - 1] + (times[i] - times[i - 1]) * (-a) / (b - a));
  }
  if (crossings.size() < 2) return 0;
  const double period =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return 2 * M_PI / period;
}

} // namespace dca
