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

#include "dca/quantize.hpp"

#include "dca/error.hpp"

#include <algorithm>

namespace dca {

Rational QuantumTable::value(const std::string& a, const std::string& b) const {
  const Expression ea = Expression::variable(a);
  const Expression eb = Expression::variable(b);
  for (const auto& e : entries) {
    if (e.a == ea && e.b == eb) return *e.c.as_constant();
    if (e.a == eb && e.b == ea) return -*e.c.as_constant();
  }
  return 0;
}

QuantumTable commutator_table(const DiracStructure& d, std::vector<std::string> variables) {
  QuantumTable t;
  t.variables = variables.empty() ? d.kept : std::move(variables);
  for (std::size_t i = 0; i < t.variables.size(); ++i)
    for (std::size_t j = i + 1; j < t.variables.size(); ++j) {
      const Expression a = Expression::variable(t.variables[i]);
      const Expression b = Expression::variable(t.variables[j]);
      Expression c = dirac_bracket(a, b, d);
      if (c.is_zero()) continue;
      if (!c.as_constant())
        throw Error(ErrorCode::OperatorOrderingUnsupported,
                    "{" + t.variables[i] + ", " + t.variables[j] + "} = " + c.to_string() +
                        " depends on the dynamical variables");
      t.entries.push_back({a, b, std::move(c)});
    }
  return t;
}

LinearMap canonical_rescaling(const QuantumTable& table, const CanonicalChart& chart,
                              const std::vector<std::string>& target_names) {
  LinearMap map;
  map.sources = table.variables;
  std::vector<Expression> rows;
  for (std::size_t i = 0; i < chart.pairs.size(); ++i) {
    rows.push_back(chart.pairs[i].q);
    map.targets.push_back("Q" + std::to_string(i + 1));
    rows.push_back(chart.pairs[i].p);
    map.targets.push_back("P" + std::to_string(i + 1));
  }
  for (std::size_t c = 0; c < chart.casimirs.size(); ++c) {
    rows.push_back(chart.casimirs[c]);
    map.targets.push_back("C" + std::to_string(c + 1));
  }
  if (!target_names.empty()) {
    if (target_names.size() != rows.size())
      throw Error(ErrorCode::InvalidArgument, "wrong number of target names");
    map.targets = target_names;
  }
  map.matrix = RationalMatrix(rows.size(), map.sources.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto f = rows[r].as_affine();
    if (!f) throw Error(ErrorCode::InvalidArgument, "chart functions must be linear");
    for (const auto& [n, c] : f->coefficients()) {
      auto it = std::find(map.sources.begin(), map.sources.end(), n);
      if (it == map.sources.end())
        throw Error(ErrorCode::InvalidArgument, "chart uses " + n + ", absent from the table");
      map.matrix(r, static_cast<std::size_t>(it - map.sources.begin())) = c;
    }
  }
  return map;
}

RationalMatrix mapped_brackets(const QuantumTable& table, const LinearMap& map) {
  const std::size_t n = map.sources.size();
  RationalMatrix omega(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) omega(i, j) = table.value(map.sources[i], map.sources[j]);
  return map.matrix * omega * map.matrix.transpose();
}

} // namespace dca
