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
#include "dca/matrix.hpp"
#include "dca/reduce.hpp"

#include <string>
#include <vector>

namespace dca {

/// [A, B] = i hbar C. hbar is a symbol in the output only.
struct Commutator {
  Expression a;
  Expression b;
  Expression c;
};

struct QuantumTable {
  std::vector<std::string> variables;
  std::vector<Commutator> entries; ///< pairs (i < j) with nonzero bracket
  std::string hbar = "hbar";

  /// Constant bracket of variables i and j (zero when not listed).
  [[nodiscard]] Rational value(const std::string& a, const std::string& b) const;
};

/// One entry per unordered pair of `variables` with a nonzero Dirac bracket.
/// Defaults to the kept variables of `d`.
///
/// Errors: OperatorOrderingUnsupported when a bracket is not constant.
QuantumTable commutator_table(const DiracStructure& d, std::vector<std::string> variables = {});

/// targets[r] = sum_c matrix(r, c) * sources[c].
struct LinearMap {
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  RationalMatrix matrix;
};

/// Linear change of variables taking the table's variables to the Darboux
/// pairs (Q1, P1, Q2, P2, ...) followed by the casimirs (C1, ...), or by
/// `target_names` in that order when given.
LinearMap canonical_rescaling(const QuantumTable& table, const CanonicalChart& chart,
                              const std::vector<std::string>& target_names = {});

/// Commutator constants among the targets of `map`, derived from `table`.
RationalMatrix mapped_brackets(const QuantumTable& table, const LinearMap& map);

} // namespace dca
