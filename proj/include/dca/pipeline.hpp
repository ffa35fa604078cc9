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
#include "dca/dynamics.hpp"
#include "dca/legendre.hpp"
#include "dca/parser.hpp"
#include "dca/quantize.hpp"
#include "dca/reduce.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dca {

/// Command-line overrides. Non-empty fields replace the file's directives.
struct AnalysisOptions {
  std::vector<std::string> keep;
  std::vector<std::string> gauges; ///< expression text, parsed against the chart
  std::optional<std::vector<std::size_t>> scc_choice; ///< 1-based
  bool ignore_file_gauges = false;
};

struct Analysis {
  std::string input;
  LagrangianSource source;
  StructuredLagrangian structured;
  std::vector<MomentumDefinition> momenta;
  std::vector<Constraint> primaries;
  Expression base_hamiltonian;
  ConstraintClosure closure;
  DofCount dof;
  DiagnosticReport diagnostics;

  std::vector<std::string> keep;
  std::vector<GaugeCondition> gauges;
  DiracStructure structure; ///< second-class set, plus gauge pairs when fixed
  bool gauge_fixed = false; ///< no first-class constraint left unfixed
  Elimination reduced;
  CanonicalChart chart;
  ChartTransform canonical;
  EquationsOfMotion eom;
  QuantumTable table;            ///< over the kept variables
  QuantumTable coordinate_table; ///< over all coordinates
  LinearMap rescaling;
};

/// parse -> canonicalize -> legendre -> stabilize -> classify -> reduce ->
/// darboux -> quantize.
///
/// Errors: any module error; InvariantViolation when an internal cross-check
/// fails (C C^-1 != I, rank(omega) != phase dof after full gauge fixing,
/// Darboux chart not canonical).
Analysis analyze(const std::string& text, const AnalysisOptions& options = {});

struct SimulationOptions {
  double dt = 1e-3;
  double t_end = 10;
  std::map<std::string, double> initial; ///< kept variables; others start at 0
};

struct Simulation {
  Trajectory trajectory; ///< kept variables followed by reconstructed ones
  std::vector<double> energy;
  double max_energy_drift = 0; ///< max |H(t) - H(0)| / max(|H(0)|, 1e-300)
};

/// Errors: InvalidArgument (initial value for an eliminated or unknown
/// variable), module dynamics errors.
Simulation simulate(const Analysis& analysis, const SimulationOptions& options);

struct GaugeComparison {
  std::vector<std::string> basis;               ///< (u, v): gauge is a*u + b*v
  std::pair<Rational, Rational> first;
  std::pair<Rational, Rational> second;
  Simulation run_first;
  Simulation run_second;                        ///< mapped back into the first gauge
  std::vector<std::string> compared;            ///< variables compared
  double max_relative_deviation = 0;
  std::string worst_variable;
};

/// Integrates the same physical state in two members of the gauge family
/// a*u + b*v = 0 and compares every phase-space variable after moving the
/// second run back into the first gauge along the first-class orbit. Initial
/// values are for the kept variables of the first gauge. The basis defaults
/// to the first and last coordinates moved by the first-class constraint.
///
/// Errors: InvalidArgument (not exactly one first-class constraint),
/// InadmissibleGauge, module dynamics errors.
GaugeComparison gauge_compare(const std::string& text, const AnalysisOptions& options,
                              std::pair<Rational, Rational> first,
                              std::pair<Rational, Rational> second,
                              std::vector<std::string> basis, const SimulationOptions& sim);

std::string report_json(const Analysis& analysis);
std::string report_text(const Analysis& analysis);
std::string quantum_json(const Analysis& analysis);
std::string quantum_text(const Analysis& analysis);
std::string simulation_json(const Simulation& simulation);
std::string simulation_text(const Simulation& simulation);
std::string comparison_json(const GaugeComparison& comparison);
std::string comparison_text(const GaugeComparison& comparison);

} // namespace dca
