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

#include "dca/pipeline.hpp"

#include "dca/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

namespace dca {

using Json = nlohmann::ordered_json;

namespace {

std::map<std::string, Rational> parameter_map(const LagrangianSource& src) {
  return {src.parameters.begin(), src.parameters.end()};
}

AffineForm parse_gauge(const std::string& text, const LagrangianSource& src) {
  const Expression e = parse_expression(text, src.chart, parameter_map(src));
  auto affine = e.as_affine();
  if (!affine || affine->is_constant())
    throw Error(ErrorCode::UnsupportedExpression,
                "gauge condition must be a non-constant affine expression: " + text);
  return *affine;
}

void check_inverse(const ConstraintClosure& closure) {
  const auto& idx = closure.scc_indices;
  const RationalMatrix block = closure.matrix.submatrix(idx, idx);
  if (!(block * closure.scc_inverse == RationalMatrix::identity(idx.size())))
    throw Error(ErrorCode::InvariantViolation, "C * C^-1 is not the identity");
}

std::vector<std::string> chart_order_names(const ChartTransform& t) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < t.chart.size(); ++i) {
    names.push_back(t.chart.coordinates()[i]);
    names.push_back(t.chart.momenta()[i]);
  }
  names.insert(names.end(), t.casimir_names.begin(), t.casimir_names.end());
  return names;
}

} // namespace

Analysis analyze(const std::string& text, const AnalysisOptions& options) {
  Analysis a;
  a.input = text;
  a.source = parse(text);
  const auto& chart = a.source.chart;
  a.keep = options.keep.empty() ? a.source.keep : options.keep;
  for (const auto& k : a.keep)
    if (!chart.contains(k))
      throw Error(ErrorCode::UndeclaredIdentifier, "keep refers to unknown variable '" + k + "'");
  std::vector<AffineForm> gauges;
  if (!options.ignore_file_gauges) gauges = a.source.gauges;
  if (!options.gauges.empty()) {
    gauges.clear();
    for (const auto& g : options.gauges) gauges.push_back(parse_gauge(g, a.source));
  }

  a.structured = canonicalize(a.source);
  a.momenta = momenta(a.structured);
  a.primaries = primary_constraints(a.structured);
  a.base_hamiltonian = base_hamiltonian(a.structured);
  a.closure = stabilize(chart, a.base_hamiltonian, a.primaries, pivot_priority(a.structured));
  a.closure = classify(std::move(a.closure), SccPreference{options.scc_choice, a.keep});
  check_inverse(a.closure);
  a.dof = dof_count(a.closure);
  a.diagnostics = singularity_scan(a.structured, a.closure);

  a.structure = make_dirac_structure(a.closure, a.keep);
  const auto& fcc = a.closure.first_class;
  if (!gauges.empty()) {
    for (std::size_t k = 0; k < gauges.size(); ++k)
      a.gauges.push_back({gauges[k], k < fcc.size() ? fcc[k].label : std::string()});
    a.structure = gauge_fix(a.structure, fcc, a.gauges, a.keep);
  }
  a.gauge_fixed = fcc.empty() || !a.gauges.empty();
  if (a.gauge_fixed && static_cast<long long>(rank(a.structure.omega)) != a.dof.phase)
    throw Error(ErrorCode::InvariantViolation,
                "rank of the kept-variable bracket matrix differs from the phase-space DOF");
  if (!a.gauge_fixed)
    a.diagnostics.warnings.push_back(
        "first-class constraints are not gauge fixed; brackets and evolution are taken on the "
        "second-class surface with the free multipliers set to zero");

  a.reduced = eliminate(a.base_hamiltonian, a.structure);
  a.chart = darboux(a.structure);
  if (auto bad = verify_chart(a.chart, a.structure); !bad.empty())
    throw Error(ErrorCode::InvariantViolation, "Darboux chart is not canonical: " + bad);
  a.canonical = to_canonical_chart(a.reduced.hamiltonian, a.chart, a.structure);
  a.eom = equations_of_motion(a.reduced.hamiltonian, a.structure);
  a.table = commutator_table(a.structure);
  a.coordinate_table = commutator_table(a.structure, chart.coordinates());
  a.rescaling = canonical_rescaling(a.table, a.chart, chart_order_names(a.canonical));
  return a;
}

Simulation simulate(const Analysis& analysis, const SimulationOptions& options) {
  const auto& kept = analysis.structure.kept;
  std::map<std::string, double> initial;
  for (const auto& v : kept) initial[v] = 0;
  for (const auto& [name, value] : options.initial) {
    if (std::find(kept.begin(), kept.end(), name) != kept.end()) {
      initial[name] = value;
      continue;
    }
    std::string list;
    for (const auto& v : kept) list += (list.empty() ? "" : " ") + v;
    if (analysis.source.chart.contains(name))
      throw Error(ErrorCode::InvalidArgument,
                  name + " is eliminated; initial values apply to {" + list + "}");
    throw Error(ErrorCode::InvalidArgument, "unknown variable '" + name + "'");
  }
  Simulation s;
  const Trajectory core = integrate(analysis.eom, initial, options.dt, options.t_end);
  s.energy = evaluate_along(analysis.reduced.hamiltonian, core);
  const double h0 = s.energy.front();
  for (double e : s.energy)
    s.max_energy_drift = std::max(s.max_energy_drift, std::abs(e - h0) / std::max(std::abs(h0), 1e-300));
  s.trajectory = reconstruct(core, analysis.structure.solved, analysis.source.chart.variables());
  for (const auto& [n, v] : analysis.source.parameters) s.trajectory.parameters.emplace_back(n, to_string(v));
  return s;
}

namespace {

std::string gauge_text(const std::pair<Rational, Rational>& ab,
                       const std::vector<std::string>& basis) {
  return "(" + to_string(ab.first) + ")*" + basis[0] + " + (" + to_string(ab.second) + ")*" +
         basis[1];
}

std::map<std::string, double> full_state(const Trajectory& t, std::size_t i) {
  std::map<std::string, double> m;
  for (std::size_t j = 0; j < t.variables.size(); ++j) m[t.variables[j]] = t.states[i][j];
  return m;
}

} // namespace

GaugeComparison gauge_compare(const std::string& text, const AnalysisOptions& options,
                              std::pair<Rational, Rational> first,
                              std::pair<Rational, Rational> second,
                              std::vector<std::string> basis, const SimulationOptions& sim) {
  AnalysisOptions plain = options;
  plain.gauges.clear();
  plain.ignore_file_gauges = true;
  const Analysis base = analyze(text, plain);
  const auto& fcc = base.closure.first_class;
  if (fcc.size() != 1)
    throw Error(ErrorCode::InvalidArgument,
                "gauge comparison needs exactly one first-class constraint, found " +
                    std::to_string(fcc.size()));
  const auto& chart = base.source.chart;
  if (basis.empty()) {
    for (const auto& q : chart.coordinates())
      if (!poisson_bracket(Expression::variable(q), fcc[0].body, chart).is_zero())
        basis.push_back(q);
    if (basis.size() < 2)
      throw Error(ErrorCode::InvalidArgument, "no two coordinates move along the gauge orbit");
    basis = {basis.front(), basis.back()};
  }
  if (basis.size() != 2 || !chart.contains(basis[0]) || !chart.contains(basis[1]))
    throw Error(ErrorCode::InvalidArgument, "gauge basis must name two chart variables");

  AnalysisOptions o1 = plain;
  o1.gauges = {gauge_text(first, basis)};
  AnalysisOptions o2 = plain;
  o2.gauges = {gauge_text(second, basis)};
  const Analysis a1 = analyze(text, o1);
  const Analysis a2 = analyze(text, o2);
  const AffineForm g1 = a1.gauges.at(0).body;
  const AffineForm g2 = a2.gauges.at(0).body;

  // Same physical initial state, expressed in each gauge.
  std::map<std::string, double> z1;
  for (const auto& v : a1.structure.kept) z1[v] = 0;
  for (const auto& [n, v] : sim.initial) z1[n] = v;
  for (const auto& [n, f] : a1.structure.solved) z1[n] = f.evaluate(z1);
  const auto z2 = transport_state(z1, fcc, {g2}, chart);
  SimulationOptions sim1 = sim;
  SimulationOptions sim2 = sim;
  sim2.initial.clear();
  for (const auto& v : a2.structure.kept) sim2.initial[v] = z2.at(v);

  auto f1 = std::async(std::launch::async, [&] { return simulate(a1, sim1); });
  auto f2 = std::async(std::launch::async, [&] { return simulate(a2, sim2); });

  GaugeComparison out;
  out.basis = basis;
  out.first = std::move(first);
  out.second = std::move(second);
  out.run_first = f1.get();
  Simulation raw_second = f2.get();

  const Trajectory& t1 = out.run_first.trajectory;
  out.run_second = raw_second;
  Trajectory& t2 = out.run_second.trajectory;
  t2.variables = t1.variables;
  for (std::size_t i = 0; i < t2.states.size(); ++i) {
    const auto back = transport_state(full_state(raw_second.trajectory, i), fcc, {g1}, chart);
    for (std::size_t j = 0; j < t1.variables.size(); ++j) t2.states[i][j] = back.at(t1.variables[j]);
  }

  out.compared = t1.variables;
  for (std::size_t j = 0; j < t1.variables.size(); ++j) {
    double peak = 0;
    double diff = 0;
    for (std::size_t i = 0; i < t1.states.size(); ++i) {
      peak = std::max(peak, std::abs(t1.states[i][j]));
      diff = std::max(diff, std::abs(t1.states[i][j] - t2.states[i][j]));
    }
    const double rel = peak > 1e-12 ? diff / peak : diff;
    if (out.worst_variable.empty() || rel > out.max_relative_deviation) {
      out.max_relative_deviation = rel;
      out.worst_variable = t1.variables[j];
    }
  }
  return out;
}

namespace {

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json table_json(const QuantumTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries)
    entries.push_back(Json{{"a", e.a.to_string()}, {"b", e.b.to_string()}, {"c", e.c.to_string()}});
  return Json{{"hbar", t.hbar}, {"variables", t.variables}, {"commutators", entries}};
}

Json rescaling_json(const LinearMap& m) {
  Json rows = Json::object();
  for (std::size_t r = 0; r < m.targets.size(); ++r) {
    Expression e;
    for (std::size_t c = 0; c < m.sources.size(); ++c)
      if (sgn(m.matrix(r, c)) != 0) e += Expression::variable(m.sources[c]) * m.matrix(r, c);
    rows[m.targets[r]] = e.to_string();
  }
  return rows;
}

Json analysis_json(const Analysis& a) {
  const auto& chart = a.source.chart;
  Json params = Json::object();
  for (const auto& [n, v] : a.source.parameters) params[n] = to_string(v);
  Json gauges = Json::array();
  for (const auto& g : a.gauges) gauges.push_back(to_string(g.body));

  Json j;
  j["schema"] = 1;
  j["input"] = Json{{"coordinates", chart.coordinates()},
                    {"momenta", chart.momenta()},
                    {"parameters", params},
                    {"gauges", gauges},
                    {"keep", a.keep}};
  std::vector<std::string> linear;
  for (const auto& c : a.structured.linear) linear.push_back(to_string(c));
  j["lagrangian"] = Json{{"kinetic", matrix_json(a.structured.kinetic)},
                         {"coupling", matrix_json(a.structured.coupling)},
                         {"linear", linear},
                         {"potential", a.structured.potential.to_string()}};
  Json momenta = Json::array();
  for (const auto& m : a.momenta)
    momenta.push_back(Json{{"momentum", m.momentum}, {"value", m.value.to_string()}});
  j["momenta"] = momenta;
  j["base_hamiltonian"] = a.base_hamiltonian.to_string();

  Json cons = Json::array();
  for (const auto& c : a.closure.constraints)
    cons.push_back(Json{{"label", c.label},
                        {"body", c.body.to_string()},
                        {"generation", std::string(to_string(c.generation))},
                        {"class", std::string(to_string(c.klass))}});
  j["constraints"] = cons;
  Json log = Json::array();
  for (const auto& r : a.closure.log)
    log.push_back(Json{{"iteration", r.iteration},
                       {"condition", r.condition},
                       {"derivative", r.raw.to_string()},
                       {"value", r.value.to_string()},
                       {"outcome", r.outcome}});
  j["persistence"] = log;
  Json determined = Json::object();
  for (const auto& [label, value] : a.closure.determined_multipliers)
    determined[label] = value.to_string();
  j["multipliers"] = Json{{"determined", determined},
                          {"undetermined", a.closure.undetermined_multipliers}};
  j["constraint_matrix"] = matrix_json(a.closure.matrix);
  Json fcc = Json::array();
  for (const auto& c : a.closure.first_class)
    fcc.push_back(Json{{"label", c.label}, {"body", c.body.to_string()}});
  Json scc = Json::array();
  for (auto i : a.closure.scc_indices) scc.push_back(a.closure.constraints[i].label);
  j["classification"] = Json{{"first_class", fcc}, {"second_class", scc}};
  j["dof"] = Json{{"phase", a.dof.phase}, {"config", to_string(a.dof.config)}, {"odd", a.dof.odd}};

  Json gauge_set = Json::array();
  for (std::size_t k = 0; k < a.gauges.size(); ++k)
    gauge_set.push_back(Json{{"label", "theta" + std::to_string(k + 1)},
                             {"body", to_string(a.gauges[k].body)},
                             {"fixes", a.gauges[k].target}});
  Json solved = Json::object();
  for (const auto& v : chart.variables())
    if (auto it = a.structure.solved.find(v); it != a.structure.solved.end())
      solved[v] = to_string(it->second);
  Json brackets = Json::array();
  const auto& kept = a.structure.kept;
  for (std::size_t r = 0; r < kept.size(); ++r)
    for (std::size_t c = r + 1; c < kept.size(); ++c)
      if (sgn(a.structure.omega(r, c)) != 0)
        brackets.push_back(
            Json{{"a", kept[r]}, {"b", kept[c]}, {"value", to_string(a.structure.omega(r, c))}});
  Json coord = Json::array();
  for (std::size_t r = 0; r < chart.size(); ++r)
    for (std::size_t c = r + 1; c < chart.size(); ++c) {
      const auto& qa = chart.coordinates()[r];
      const auto& qb = chart.coordinates()[c];
      coord.push_back(Json{{"a", qa}, {"b", qb}, {"value", to_string(a.coordinate_table.value(qa, qb))}});
    }
  Json reduction;
  reduction["gauge_fixed"] = a.gauge_fixed;
  reduction["gauges"] = gauge_set;
  reduction["kept"] = kept;
  reduction["solved"] = solved;
  reduction["hamiltonian"] = a.reduced.hamiltonian.to_string();
  reduction["dirac_brackets"] = brackets;
  reduction["coordinate_brackets"] = coord;
  j["reduction"] = reduction;

  Json pairs = Json::array();
  for (std::size_t i = 0; i < a.chart.pairs.size(); ++i)
    pairs.push_back(Json{{"Q", a.chart.pairs[i].q.to_string()}, {"P", a.chart.pairs[i].p.to_string()}});
  Json casimirs = Json::array();
  for (const auto& c : a.chart.casimirs) casimirs.push_back(c.to_string());
  Json inverse = Json::object();
  for (const auto& v : kept) inverse[v] = to_string(a.canonical.kept_in_chart.at(v));
  j["canonical_chart"] = Json{{"pairs", pairs},
                              {"casimirs", casimirs},
                              {"variables", chart_order_names(a.canonical)},
                              {"inverse", inverse},
                              {"hamiltonian", a.canonical.hamiltonian.to_string()}};
  Json eom = Json::object();
  for (std::size_t i = 0; i < a.eom.variables.size(); ++i)
    eom[a.eom.variables[i]] = a.eom.rates[i].to_string();
  j["equations_of_motion"] = eom;
  Json quantum = table_json(a.table);
  quantum["rescaling"] = rescaling_json(a.rescaling);
  j["quantum"] = quantum;
  j["diagnostics"] = Json{{"kinetic_size", a.diagnostics.kinetic_size},
                          {"kinetic_rank", a.diagnostics.kinetic_rank},
                          {"constraint_count", a.diagnostics.constraint_count},
                          {"constraint_matrix_rank", a.diagnostics.constraint_matrix_rank},
                          {"first_class", a.diagnostics.first_class},
                          {"second_class", a.diagnostics.second_class},
                          {"flags", a.diagnostics.flags},
                          {"warnings", a.diagnostics.warnings}};
  return j;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string report_json(const Analysis& analysis) { return analysis_json(analysis).dump(2) + "\n"; }

std::string report_text(const Analysis& a) {
  std::ostringstream os;
  const auto& chart = a.source.chart;
  os << "variables:";
  for (std::size_t i = 0; i < chart.size(); ++i)
    os << ' ' << chart.coordinates()[i] << '/' << chart.momenta()[i];
  os << "\nparameters:";
  for (const auto& [n, v] : a.source.parameters) os << ' ' << n << '=' << to_string(v);
  os << "\n\nmomenta\n";
  for (const auto& m : a.momenta) os << "  " << m.momentum << " = " << m.value.to_string() << '\n';
  os << "\nbase hamiltonian\n  H = " << a.base_hamiltonian.to_string() << "\n\nconstraints\n";
  for (const auto& c : a.closure.constraints)
    os << "  " << c.label << " = " << c.body.to_string() << "  [" << to_string(c.generation)
       << ", " << to_string(c.klass) << "]\n";
  if (!a.closure.log.empty()) os << "\npersistence\n";
  for (const auto& r : a.closure.log)
    os << "  [" << r.iteration << "] d/dt " << r.condition << " = " << r.raw.to_string() << " ~ "
       << r.value.to_string() << "  -> " << r.outcome << '\n';
  os << "\nmultipliers\n";
  for (const auto& [label, value] : a.closure.determined_multipliers)
    os << "  " << label << " = " << value.to_string() << '\n';
  for (const auto& label : a.closure.undetermined_multipliers) os << "  " << label << " free\n";
  os << "\nfirst class\n";
  if (a.closure.first_class.empty()) os << "  (none)\n";
  for (const auto& c : a.closure.first_class) os << "  " << c.label << " = " << c.body.to_string() << '\n';
  os << "second class:";
  for (auto i : a.closure.scc_indices) os << ' ' << a.closure.constraints[i].label;
  os << "\nphase-space dof: " << a.dof.phase << " (configuration " << to_string(a.dof.config) << ")\n";

  if (!a.gauges.empty()) os << "\ngauge conditions\n";
  for (std::size_t k = 0; k < a.gauges.size(); ++k)
    os << "  theta" << k + 1 << " = " << to_string(a.gauges[k].body) << "  (fixes "
       << a.gauges[k].target << ")\n";
  os << "\nreduction\n  kept:";
  for (const auto& v : a.structure.kept) os << ' ' << v;
  os << '\n';
  for (const auto& v : chart.variables())
    if (auto it = a.structure.solved.find(v); it != a.structure.solved.end())
      os << "  " << v << " = " << to_string(it->second) << '\n';
  os << "  H = " << a.reduced.hamiltonian.to_string() << "\n\ndirac brackets\n";
  const auto& kept = a.structure.kept;
  for (std::size_t r = 0; r < kept.size(); ++r)
    for (std::size_t c = r + 1; c < kept.size(); ++c)
      if (sgn(a.structure.omega(r, c)) != 0)
        os << "  {" << kept[r] << ", " << kept[c] << "} = " << to_string(a.structure.omega(r, c)) << '\n';
  os << "\ncoordinate brackets\n";
  for (std::size_t r = 0; r < chart.size(); ++r)
    for (std::size_t c = r + 1; c < chart.size(); ++c) {
      const auto& qa = chart.coordinates()[r];
      const auto& qb = chart.coordinates()[c];
      os << "  {" << qa << ", " << qb << "} = " << to_string(a.coordinate_table.value(qa, qb)) << '\n';
    }
  os << "\ncanonical chart\n";
  const auto names = chart_order_names(a.canonical);
  for (std::size_t i = 0; i < a.chart.pairs.size(); ++i)
    os << "  " << names[2 * i] << " = " << a.chart.pairs[i].q.to_string() << ", " << names[2 * i + 1]
       << " = " << a.chart.pairs[i].p.to_string() << '\n';
  for (std::size_t c = 0; c < a.chart.casimirs.size(); ++c)
    os << "  " << a.canonical.casimir_names[c] << " = " << a.chart.casimirs[c].to_string() << "  (casimir)\n";
  os << "  H = " << a.canonical.hamiltonian.to_string() << "\n\nequations of motion\n";
  for (std::size_t i = 0; i < a.eom.variables.size(); ++i)
    os << "  d/dt " << a.eom.variables[i] << " = " << a.eom.rates[i].to_string() << '\n';
  os << "\ndiagnostics\n  kinetic rank " << a.diagnostics.kinetic_rank << " of "
     << a.diagnostics.kinetic_size << ", constraint matrix rank " << a.diagnostics.constraint_matrix_rank
     << " of " << a.diagnostics.constraint_count << '\n';
  for (const auto& f : a.diagnostics.flags) os << "  flag: " << f << '\n';
  for (const auto& w : a.diagnostics.warnings) os << "  note: " << w << '\n';
  return os.str();
}

std::string quantum_json(const Analysis& a) {
  Json j;
  j["schema"] = 1;
  Json t = table_json(a.table);
  t["rescaling"] = rescaling_json(a.rescaling);
  j["quantum"] = t;
  j["coordinates"] = table_json(a.coordinate_table);
  return j.dump(2) + "\n";
}

std::string quantum_text(const Analysis& a) {
  std::ostringstream os;
  auto table = [&](const QuantumTable& t) {
    if (t.entries.empty()) os << "  (all commute)\n";
    for (const auto& e : t.entries)
      os << "  [" << e.a.to_string() << ", " << e.b.to_string() << "] = i*" << t.hbar << " * "
         << e.c.to_string() << '\n';
  };
  os << "commutators\n";
  table(a.table);
  os << "\ncoordinate commutators\n";
  table(a.coordinate_table);
  os << "\ncanonical variables\n";
  for (std::size_t r = 0; r < a.rescaling.targets.size(); ++r) {
    Expression e;
    for (std::size_t c = 0; c < a.rescaling.sources.size(); ++c)
      if (sgn(a.rescaling.matrix(r, c)) != 0)
        e += Expression::variable(a.rescaling.sources[c]) * a.rescaling.matrix(r, c);
    os << "  " << a.rescaling.targets[r] << " = " << e.to_string() << '\n';
  }
  return os.str();
}

namespace {

Json simulation_json_value(const Simulation& s) {
  const auto& t = s.trajectory;
  Json params = Json::object();
  for (const auto& [n, v] : t.parameters) params[n] = v;
  Json fin = Json::object();
  for (std::size_t j = 0; j < t.variables.size(); ++j) fin[t.variables[j]] = t.states.back()[j];
  Json states = Json::array();
  for (const auto& row : t.states) states.push_back(row);
  return Json{{"integrator", t.integrator},
              {"step", t.step},
              {"steps", t.times.size() - 1},
              {"parameters", params},
              {"energy", Json{{"initial", s.energy.front()}, {"max_relative_drift", s.max_energy_drift}}},
              {"final", fin},
              {"trajectory", Json{{"variables", t.variables}, {"times", t.times}, {"states", states}}}};
}

} // namespace

std::string simulation_json(const Simulation& s) {
  Json j;
  j["schema"] = 1;
  j["simulation"] = simulation_json_value(s);
  return j.dump(2) + "\n";
}

std::string simulation_text(const Simulation& s) {
  std::ostringstream os;
  const auto& t = s.trajectory;
  os << "integrator " << t.integrator << ", " << t.times.size() - 1 << " steps of "
     << format_double(t.step) << ", t_end " << format_double(t.times.back()) << '\n';
  os << "energy " << format_double(s.energy.front()) << ", max relative drift "
     << format_double(s.max_energy_drift) << "\nfinal state\n";
  for (std::size_t j = 0; j < t.variables.size(); ++j)
    os << "  " << t.variables[j] << " = " << format_double(t.states.back()[j]) << '\n';
  return os.str();
}

std::string comparison_json(const GaugeComparison& c) {
  Json j;
  j["schema"] = 1;
  j["gauge_compare"] =
      Json{{"basis", c.basis},
           {"first", Json::array({to_string(c.first.first), to_string(c.first.second)})},
           {"second", Json::array({to_string(c.second.first), to_string(c.second.second)})},
           {"compared", c.compared},
           {"max_relative_deviation", c.max_relative_deviation},
           {"worst_variable", c.worst_variable},
           {"run_first", simulation_json_value(c.run_first)},
           {"run_second", simulation_json_value(c.run_second)}};
  return j.dump(2) + "\n";
}

std::string comparison_text(const GaugeComparison& c) {
  std::ostringstream os;
  os << "gauge family a*" << c.basis[0] << " + b*" << c.basis[1] << " = 0\n";
  os << "  (a,b) = (" << to_string(c.first.first) << ", " << to_string(c.first.second) << ") vs ("
     << to_string(c.second.first) << ", " << to_string(c.second.second) << ")\n";
  os << "  compared in the first gauge:";
  for (const auto& v : c.compared) os << ' ' << v;
  os << "\n  max relative deviation " << format_double(c.max_relative_deviation) << " ("
     << c.worst_variable << ")\n";
  return os.str();
}

} // namespace dca
