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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dca/legendre.hpp"
#include "dca/matrix.hpp"
#include "support.hpp"

using namespace dca;
using namespace dca::testing;

namespace {

StructuredLagrangian structured(const std::string& text) { return canonicalize(parse(text)); }

std::vector<Expression> bodies(const std::vector<Constraint>& cs) {
  std::vector<Expression> out;
  for (const auto& c : cs) out.push_back(c.body);
  return out;
}

// H(q, p(q, qdot)) must equal p(q, qdot) . qdot - L exactly.
void check_legendre_identity(const StructuredLagrangian& sl) {
  const auto defs = momenta(sl);
  std::map<std::string, AffineForm> p_of_v;
  Expression energy = -sl.to_expression();
  for (std::size_t i = 0; i < defs.size(); ++i) {
    p_of_v.emplace(defs[i].momentum, *defs[i].value.as_affine());
    energy += defs[i].value * var(velocity_name(sl.chart.coordinates()[i]));
  }
  CHECK(base_hamiltonian(sl).substitute(p_of_v) == energy);
}

bool same_span(const std::vector<Expression>& a, const std::vector<Expression>& b,
               const PhaseSpaceChart& chart) {
  if (a.size() != b.size()) return false;
  const auto vars = chart.variables();
  auto matrix = [&](const std::vector<Expression>& rows) {
    RationalMatrix m(rows.size(), vars.size() + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto f = *rows[r].as_affine();
      for (std::size_t c = 0; c < vars.size(); ++c) m(r, c) = f.coefficient(vars[c]);
      m(r, vars.size()) = f.constant();
    }
    return m;
  };
  std::vector<Expression> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank(matrix(a)) == a.size() && rank(matrix(both)) == a.size();
}

} // namespace

TEST_CASE("island momenta") {
  const auto sl = structured(island_text());
  const auto m = momenta(sl);
  REQUIRE(m.size() == 4);
  CHECK(m[0].momentum == "P1");
  CHECK(m[0].value == -var("X"));
  CHECK(m[1].value.is_zero());
  CHECK(m[2].value == var("X"));
  CHECK(m[3].momentum == "pi");
  CHECK(m[3].value.is_zero());
}

TEST_CASE("oscillator momentum is the velocity") {
  const auto m = momenta(structured(oscillator_text()));
  REQUIRE(m.size() == 1);
  CHECK(m[0].value == var("d(x)"));
}

TEST_CASE("coupled circuit momenta") {
  const auto sl = structured(coupled_text("1", "5", "2"));
  const auto m = momenta(sl);
  CHECK(m[0].value == expr("-X + x3 + 5*x2", sl.chart));
  CHECK(m[1].value == expr("2*x3", sl.chart));
  CHECK(m[2].value == var("X"));
  CHECK(m[3].value.is_zero());
}

TEST_CASE("island primary constraints") {
  const auto sl = structured(island_text());
  const auto cs = primary_constraints(sl);
  REQUIRE(cs.size() == 4);
  const std::vector<Expression> listed{expr("P1 + X", sl.chart), var("P2"),
                                       expr("P3 - X", sl.chart), var("pi")};
  CHECK(same_span(bodies(cs), listed, sl.chart));
  CHECK(cs[0].body == expr("P1 + P3", sl.chart));
  CHECK(cs[2].body == expr("P3 - X", sl.chart));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK(cs[i].label == "chi" + std::to_string(i + 1));
    CHECK(cs[i].generation == Generation::Primary);
  }
  CHECK(trig_pivot_coordinates(sl) == std::vector<std::string>{"X"});
}

TEST_CASE("coupled circuit primary constraints") {
  const auto sl = structured(coupled_text("1", "5", "2"));
  const auto cs = primary_constraints(sl);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].body == expr("P1 + P3 - x3 - 5*x2", sl.chart));
  CHECK(cs[1].body == expr("P2 - 2*x3", sl.chart));
  CHECK(cs[2].body == expr("P3 - X", sl.chart));
  CHECK(cs[3].body == var("pi"));
}

TEST_CASE("nonsingular kinetic matrix has no primaries") {
  CHECK(primary_constraints(structured(oscillator_text())).empty());
  CHECK(primary_constraints(
            structured("var x y\nlagrangian: d(x)^2 + d(x)*d(y) + d(y)^2 - x*y"))
            .empty());
}

TEST_CASE("primary count equals the kinetic nullity") {
  const auto sl = structured("var x y z\nlagrangian: (d(x) + d(y))^2/2 + z*d(x) - x^2 - z^2");
  CHECK(primary_constraints(sl).size() == sl.chart.size() - rank(sl.kinetic));
  CHECK(primary_constraints(sl).size() == 2);
}

TEST_CASE("base hamiltonians") {
  const auto island = structured(island_text());
  CHECK(base_hamiltonian(island) ==
        expr("-5*cos(3*P3) + (x1-x2)^2/2 + (x2-x3)^2/4", island.chart));
  const auto osc = structured(oscillator_text());
  CHECK(base_hamiltonian(osc) == expr("p_x^2/2 + x^2/2", osc.chart));
}

TEST_CASE("legendre identity holds for the sample circuits") {
  check_legendre_identity(structured(island_text()));
  check_legendre_identity(structured(coupled_text("1", "5", "2")));
  check_legendre_identity(structured(oscillator_text()));
  check_legendre_identity(
      structured("var x y z\nlagrangian: (d(x) + d(y))^2/2 + z*d(x) + 3*d(y) - x^2 - cos(z)"));
}

TEST_CASE("legendre identity on random quadratic lagrangians") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::ostringstream text;
    text << "var";
    for (std::size_t i = 0; i < n; ++i) text << " q" << i + 1;
    text << "\nlagrangian:\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        text << " + (" << small(rng) << "/2)*d(q" << i + 1 << ")*d(q" << j + 1 << ")";
        text << " + (" << small(rng) << ")*d(q" << i + 1 << ")*q" << j + 1;
        text << " + (" << small(rng) << "/3)*q" << i + 1 << "*q" << j + 1;
      }
    check_legendre_identity(structured(text.str()));
  }
}

TEST_CASE("pivot priority puts trig coordinates first") {
  const auto p = pivot_priority(structured(island_text()));
  REQUIRE(p.size() == 8);
  CHECK(p[0] == "X");
  CHECK(p[1] == "P1");
}

TEST_CASE("constraint normalization") {
  const PhaseSpaceChart c({"x"}, {"p"});
  AffineForm f;
  f.add("p", q(-2, 3));
  f.add("x", q(4, 3));
  AffineForm expect;
  expect.add("p", 1);
  expect.add("x", -2);
  CHECK(normalize_constraint(f, c) == expect);
}
