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
#include "dca/reduce.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace dca {

/// First-order system v_dot = rate(v) over a fixed variable order.
struct EquationsOfMotion {
  std::vector<std::string> variables;
  std::vector<Expression> rates;

  [[nodiscard]] const Expression& rate(const std::string& variable) const;
};

/// v_dot = {v, H}_DB for every kept variable of `d`.
EquationsOfMotion equations_of_motion(const Expression& hamiltonian, const DiracStructure& d);

/// Plain Hamilton equations over a canonical chart.
EquationsOfMotion canonical_equations(const Expression& hamiltonian,
                                      const PhaseSpaceChart& chart);

/// Expression lowered to flat arrays indexed by variable position, for the
/// integrator's inner loop.
class CompiledExpression {
public:
  CompiledExpression() = default;
  CompiledExpression(const Expression& e, const std::vector<std::string>& variables);

  [[nodiscard]] double operator()(const std::vector<double>& state) const;

private:
  struct Factor {
    bool is_sin = false;
    double offset = 0;
    std::vector<std::pair<std::size_t, double>> linear;
  };
  struct Item {
    double coefficient = 0;
    std::vector<std::pair<std::size_t, int>> powers;
    std::vector<Factor> trig;
  };
  std::vector<Item> items_;
};

struct Trajectory {
  std::vector<std::string> variables;
  std::vector<double> times;
  std::vector<std::vector<double>> states; ///< states[i][j]: variable j at times[i]
  std::string integrator = "rk4";
  double step = 0;
  std::vector<std::pair<std::string, std::string>> parameters;

  [[nodiscard]] std::size_t column(const std::string& variable) const;
  [[nodiscard]] std::vector<double> series(const std::string& variable) const;
};

/// Fixed-step classical RK4 over [0, t_end]. The step count is
/// ceil(t_end / dt) and the step is shrunk so the last sample lands on t_end.
///
/// Errors: InvalidArgument (dt <= 0, t_end < dt, missing initial value),
/// NonFiniteState (first step producing NaN or infinity).
Trajectory integrate(const EquationsOfMotion& eom, const std::map<std::string, double>& initial,
                     double dt, double t_end);

/// Appends eliminated variables, computed from the kept ones.
Trajectory reconstruct(const Trajectory& trajectory,
                       const std::map<std::string, AffineForm>& solved,
                       const std::vector<std::string>& order = {});

/// Values of `e` along the trajectory.
std::vector<double> evaluate_along(const Expression& e, const Trajectory& trajectory);

std::string to_csv(const Trajectory& trajectory);

/// Moves a full phase-space state along the gauge orbits generated by the
/// (affine) first-class constraints until the gauge conditions hold.
///
/// Errors: InadmissibleGauge if the orbit does not meet the gauge surface.
std::map<std::string, double> transport_state(const std::map<std::string, double>& state,
                                              const std::vector<Constraint>& first_class,
                                              const std::vector<AffineForm>& gauges,
                                              const PhaseSpaceChart& chart);

/// Central-difference Jacobian of the rates at `point`.
std::vector<std::vector<double>> jacobian(const EquationsOfMotion& eom,
                                          const std::map<std::string, double>& point,
                                          double h = 1e-6);

std::vector<std::complex<double>> eigenvalues(const std::vector<std::vector<double>>& matrix);

/// Largest |Im lambda| over the eigenvalues of the linearized system.
double linear_frequency(const EquationsOfMotion& eom, const std::map<std::string, double>& point);

/// Angular frequency from upward zero crossings of (series - mean), with
/// linear interpolation between samples. Returns 0 with fewer than two
/// crossings.
double crossing_frequency(const std::vector<double>& times, const std::vector<double>& series);

} // namespace dca
