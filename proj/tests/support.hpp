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
#include "dca/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace dca::testing {

// Island shunted by two inductors, with a Josephson branch charge X.
inline std::string island_text(const std::string& extra = "") {
  return "var x1:P1 x2:P2 x3:P3 X:pi\n"
         "param E=5 L1=1 L2=2 k=3\n"
         "lagrangian:\n"
         "  X*(d(x3) - d(x1)) + E*cos(k*X) - 1/(2*L1)*(x1-x2)^2 - 1/(2*L2)*(x2-x3)^2\n" +
         extra;
}

// The island plus velocity-coordinate couplings l1 d(x1) x3 + l2 d(x1) x2 + l3 d(x2) x3.
inline std::string coupled_text(const std::string& l1, const std::string& l2,
                                const std::string& l3, const std::string& extra = "") {
  return "var x1:P1 x2:P2 x3:P3 X:pi\n"
         "param E=5 L1=1 L2=2 k=3 l1=" +
         l1 + " l2=" + l2 + " l3=" + l3 +
         "\n"
         "lagrangian:\n"
         "  X*(d(x3) - d(x1)) + E*cos(k*X) - 1/(2*L1)*(x1-x2)^2 - 1/(2*L2)*(x2-x3)^2\n"
         "  + l1*d(x1)*x3 + l2*d(x1)*x2 + l3*d(x2)*x3\n" +
         extra;
}

inline std::string oscillator_text() {
  return "var x\nparam w=1\nlagrangian: (1/2)*d(x)^2 - (w^2/2)*x^2\n";
}

inline std::string read_circuit(const std::string& name) {
  const char* dir = std::getenv("DCA_CIRCUITS");
  std::ifstream in(std::string(dir ? dir : "circuits") + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Expression var(const std::string& n) { return Expression::variable(n); }

inline Expression expr(const std::string& text, const PhaseSpaceChart& chart) {
  return parse_expression(text, chart);
}

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Random members of the expression class: small polynomials in the chart
/// variables with an occasional sin/cos of an affine argument.
class ExpressionGenerator {
public:
  ExpressionGenerator(std::vector<std::string> variables, std::uint64_t seed)
      : vars_(std::move(variables)), rng_(seed) {}

  Rational coefficient() {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    int n = 0;
    while (n == 0) n = num(rng_);
    return q(n, den(rng_));
  }

  AffineForm affine() {
    AffineForm f;
    std::uniform_int_distribution<std::size_t> pick(0, vars_.size() - 1);
    std::uniform_int_distribution<int> count(1, 2);
    for (int i = count(rng_); i > 0; --i) f.add(vars_[pick(rng_)], coefficient());
    if (f.is_constant()) f.add(vars_[pick(rng_)], 1);
    return f;
  }

  Expression term() {
    std::uniform_int_distribution<std::size_t> pick(0, vars_.size() - 1);
    std::uniform_int_distribution<int> degree(0, 2);
    std::uniform_int_distribution<int> coin(0, 3);
    Expression t(coefficient());
    for (int d = degree(rng_); d > 0; --d) t = t * var(vars_[pick(rng_)]);
    if (coin(rng_) == 0)
      t = t * Expression::trig(coin(rng_) % 2 ? TrigKind::Sin : TrigKind::Cos, affine());
    return t;
  }

  Expression operator()() {
    std::uniform_int_distribution<int> count(1, 3);
    Expression e;
    for (int i = count(rng_); i > 0; --i) e += term();
    return e;
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::vector<std::string> vars_;
  std::mt19937_64 rng_;
};

} // namespace dca::testing
