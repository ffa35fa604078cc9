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

#include "dca/error.hpp"
#include "dca/reduce.hpp"
#include "support.hpp"

using namespace dca;
using namespace dca::testing;

namespace {

ErrorCode code_of(const std::string& text, const AnalysisOptions& options) {
  try {
    (void)analyze(text, options);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvariantViolation;
}

Analysis gauge_family(long a, long b) {
  AnalysisOptions options;
  options.gauges = {std::to_string(a) + "*x1 + " + std::to_string(b) + "*x3"};
  return analyze(island_text(), options);
}

Rational db(const std::string& u, const std::string& v, const DiracStructure& d) {
  const auto c = dirac_bracket(var(u), var(v), d).as_constant();
  REQUIRE(c);
  return *c;
}

AffineForm on_kept(const std::string& text, const DiracStructure& d) {
  return *expr(text, d.chart).substitute(d.solved).as_affine();
}

// Checks the canonical-chart invariants for pairs given as text.
void check_chart(const std::vector<std::pair<std::string, std::string>>& pairs,
                 const DiracStructure& d) {
  CanonicalChart chart;
  for (const auto& [qt, pt] : pairs) chart.pairs.push_back({expr(qt, d.chart), expr(pt, d.chart)});
  CHECK(verify_chart(chart, d).empty());
}

} // namespace

TEST_CASE("coordinate brackets of the coupled circuit") {
  const auto a = analyze(coupled_text("1", "5", "2"));
  const auto& d = a.structure;
  CHECK(db("x1", "x2", d) == q(1, 3));
  CHECK(db("x1", "x3", d) == 0);
  CHECK(db("x1", "X", d) == q(2, 3));
  CHECK(db("x2", "x3", d) == q(-1, 3));
  CHECK(db("x2", "X", d) == q(-1, 3));
  CHECK(db("x3", "X", d) == q(5, 3));
  CHECK(d.kept == std::vector<std::string>{"x1", "x2", "x3", "P3"});
  CHECK(a.dof.phase == 4);
  CHECK(a.closure.first_class.empty());
}

TEST_CASE("gauge family brackets") {
  const auto a = gauge_family(2, 3);
  CHECK(db("x1", "P1", a.structure) == q(3, 5));
  CHECK(db("x1", "P3", a.structure) == q(-3, 5));
  CHECK(db("x3", "P3", a.structure) == q(2, 5));
  CHECK(db("x3", "P1", a.structure) == q(-2, 5));
  for (const auto& [ga, gb] : {std::pair<long, long>{1, 1}, {5, 2}, {1, 0}, {3, 7}}) {
    const auto f = gauge_family(ga, gb);
    CHECK(db("x1", "P1", f.structure) == q(gb, ga + gb));
    CHECK(db("x3", "P3", f.structure) == q(ga, ga + gb));
    CHECK(db("x1", "P3", f.structure) == -q(gb, ga + gb));
    CHECK(db("x3", "P1", f.structure) == -q(ga, ga + gb));
  }
}

TEST_CASE("strong elimination keeping x1, x3, P3, P1") {
  AnalysisOptions options;
  options.keep = {"x1", "x3", "P3", "P1"};
  const auto a = analyze(island_text(), options);
  const auto& d = a.structure;
  CHECK_FALSE(a.gauge_fixed);
  const auto e = eliminate(a.closure.hamiltonian, d);
  CHECK(e.hamiltonian == expr("-5*cos(3*P3) + (x1 - x3)^2/6", d.chart));
  for (const auto& k : d.constraints)
    CHECK(k.body.substitute(e.solved).is_zero());
}

TEST_CASE("gauge x1 reduces to a single pair") {
  const auto a = analyze(island_text("gauge: x1\nkeep: x3\n"));
  CHECK(a.gauge_fixed);
  CHECK(a.structure.constraints.size() == 6);
  CHECK(a.reduced.hamiltonian == expr("-5*cos(3*P3) + x3^2/6", a.structure.chart));
  CHECK(a.structure.kept == std::vector<std::string>{"x3", "P3"});
  for (const auto& k : a.structure.constraints)
    CHECK(k.body.substitute(a.reduced.solved).is_zero());
}

TEST_CASE("empty second-class set leaves H alone") {
  const auto a = analyze(oscillator_text());
  CHECK(a.structure.constraints.empty());
  CHECK(a.reduced.hamiltonian == a.base_hamiltonian);
  REQUIRE(a.chart.pairs.size() == 1);
  CHECK(a.chart.pairs[0].q == var("x"));
  CHECK(a.chart.pairs[0].p == var("p_x"));
}

TEST_CASE("inadmissible and miscounted gauges") {
  AnalysisOptions options;
  options.gauges = {"P1 + P2 + P3"};
  CHECK(code_of(island_text(), options) == ErrorCode::InadmissibleGauge);
  options.gauges = {"x1 - x3"};
  CHECK(code_of(island_text(), options) == ErrorCode::InadmissibleGauge);
  options.gauges = {"x1", "x3"};
  CHECK(code_of(island_text(), options) == ErrorCode::InvalidArgument);
}

TEST_CASE("incompatible keep list names a working one") {
  const auto a = analyze(island_text());
  try {
    (void)make_dirac_structure(a.closure, {"X", "P3"});
    FAIL("expected UnsolvableEliminationChoice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsolvableEliminationChoice);
    CHECK(std::string(e.what()).find("valid kept set") != std::string::npos);
  }
}

TEST_CASE("reference chart of the coupled circuit is canonical") {
  const auto a = analyze(coupled_text("1", "5", "2"));
  check_chart({{"x3 - x1", "X"}, {"x2 + x1/2", "-5*x1 + 2*x3"}}, a.structure);
  CHECK(a.chart.pairs.size() == 2);
  CHECK(a.chart.casimirs.empty());
  CHECK(verify_chart(a.chart, a.structure).empty());
}

TEST_CASE("noncommutative limit through independent substitution") {
  const auto a = analyze(coupled_text("0", "0", "2"));
  const auto& d = a.structure;
  check_chart({{"x3 - x1", "X"}, {"x2", "2*x3"}}, d);

  // Invert the chart on the kept variables and substitute into the reduced H.
  const std::vector<std::string> names{"Q1", "P1", "Q2", "P2"};
  const std::vector<AffineForm> forms{on_kept("x3 - x1", d), on_kept("X", d), on_kept("x2", d),
                                      on_kept("2*x3", d)};
  RationalMatrix k(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) k(r, c) = forms[r].coefficient(d.kept[c]);
  const auto inv = inverse(k);
  REQUIRE(inv);
  std::map<std::string, AffineForm> back;
  for (std::size_t c = 0; c < 4; ++c) {
    AffineForm f;
    for (std::size_t r = 0; r < 4; ++r) f.add(names[r], (*inv)(c, r));
    back.emplace(d.kept[c], f);
  }
  const PhaseSpaceChart qp({"Q1", "Q2"}, {"P1", "P2"});
  CHECK(a.reduced.hamiltonian.substitute(back) ==
        expr("-5*cos(3*P1) + (2*(Q1 + Q2) - P2)^2/8 + (2*Q2 - P2)^2/16", qp));
}

TEST_CASE("identity and degenerate omega") {
  DiracStructure canonical;
  canonical.chart = PhaseSpaceChart({"x"}, {"p"});
  canonical.kept = {"x", "p"};
  canonical.omega = RationalMatrix{{0, 1}, {-1, 0}};
  auto c = darboux(canonical);
  REQUIRE(c.pairs.size() == 1);
  CHECK(c.pairs[0].q == var("x"));
  CHECK(c.pairs[0].p == var("p"));
  CHECK(c.casimirs.empty());

  DiracStructure flat;
  flat.chart = PhaseSpaceChart({"x", "y"}, {"p", "r"});
  flat.kept = {"x", "y"};
  flat.omega = RationalMatrix(2, 2);
  c = darboux(flat);
  CHECK(c.pairs.empty());
  REQUIRE(c.casimirs.size() == 2);
  CHECK(c.casimirs[0] == var("x"));
  CHECK(c.casimirs[1] == var("y"));
}

TEST_CASE("darboux scale goes into P") {
  const auto a = gauge_family(2, 3);
  REQUIRE(a.chart.pairs.size() == 1);
  CHECK(a.chart.pairs[0].q.as_affine()->coefficients().size() == 1);
  CHECK(verify_chart(a.chart, a.structure).empty());
}

TEST_CASE("dirac bracket properties") {
  for (const auto& a : {gauge_family(2, 3), analyze(coupled_text("1", "5", "2"))}) {
    const auto& d = a.structure;
    ExpressionGenerator gen(d.chart.variables(), 11);
    auto br = [&](const Expression& u, const Expression& v) { return dirac_bracket_raw(u, v, d); };
    for (int i = 0; i < 50; ++i) {
      const Expression u = gen();
      const Expression v = gen();
      const Expression w = gen();
      CHECK(br(u, v) == -br(v, u));
      CHECK(br(u, v * w) == br(u, v) * w + v * br(u, w));
      CHECK((br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v))).is_zero());
      for (const auto& k : d.constraints) CHECK(br(u, k.body).is_zero());
    }
  }
}

TEST_CASE("inverse bracket matrix is exact") {
  for (const auto& a : {gauge_family(2, 3), analyze(coupled_text("1", "5", "2"))}) {
    CHECK(a.structure.matrix * a.structure.inverse ==
          RationalMatrix::identity(a.structure.matrix.rows()));
  }
}
