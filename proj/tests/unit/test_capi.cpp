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

#include "dca/dca.h"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string circuit(const std::string& name) {
  const char* dir = std::getenv("DCA_CIRCUITS");
  std::ifstream in(std::string(dir ? dir : "circuits") + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Session {
  dca_session* s = nullptr;
  dca_status open;
  explicit Session(const std::string& text) : open(dca_open(text.c_str(), &s)) {}
  ~Session() { dca_close(s); }
};

} // namespace

TEST_CASE("analyze through the C interface") {
  Session s(circuit("inductively_shunted.lagr"));
  REQUIRE(s.open == DCA_OK);
  CHECK(dca_report_json(s.s) == nullptr);
  REQUIRE(dca_analyze(s.s) == DCA_OK);
  const auto report = nlohmann::json::parse(dca_report_json(s.s));
  CHECK(report["schema"] == 1);
  CHECK(report["dof"]["phase"] == 2);
  CHECK(report["reduction"]["hamiltonian"] == "1/6*x3^2 - 5*cos(3*P3)");
  CHECK(std::string(dca_report_text(s.s)).find("psi1 = P1 + P2 + P3") != std::string::npos);
  const auto quantum = nlohmann::json::parse(dca_quantum_json(s.s));
  CHECK(quantum["quantum"]["hbar"] == "hbar");
  CHECK(std::string(dca_error_json(s.s)).empty());
}

TEST_CASE("overrides") {
  Session s(circuit("inductively_shunted.lagr"));
  REQUIRE(dca_add_gauge(s.s, "2*x1 + 3*x3") == DCA_OK);
  REQUIRE(dca_analyze(s.s) == DCA_OK);
  const auto report = nlohmann::json::parse(dca_report_json(s.s));
  CHECK(report["reduction"]["gauges"][0]["body"] == "2*x1 + 3*x3");
  CHECK(dca_add_gauge(s.s, "") == DCA_INVALID_ARGUMENT);
  const size_t bad[] = {1, 2};
  REQUIRE(dca_set_scc_choice(s.s, bad, 2) == DCA_OK);
  CHECK(dca_analyze(s.s) == DCA_INVALID_SCC_CHOICE);
  CHECK(dca_report_json(s.s) == nullptr);
}

TEST_CASE("errors are reported as json") {
  Session s("var x\nlagrangian:\n  x + * x\n");
  CHECK(s.open == DCA_SYNTAX_ERROR);
  const auto err = nlohmann::json::parse(dca_error_json(s.s));
  CHECK(err["error"]["code"] == "SyntaxError");
  CHECK(err["error"]["line"] == 3);
  CHECK(err["error"]["column"] == 7);
  CHECK(std::string(dca_status_name(DCA_SYNTAX_ERROR)) == "SyntaxError");
  CHECK(std::string(dca_error_message(s.s)).size() > 0);
}

TEST_CASE("null handles") {
  CHECK(dca_open("var x\nlagrangian: x", nullptr) == DCA_INVALID_ARGUMENT);
  CHECK(dca_analyze(nullptr) == DCA_INVALID_ARGUMENT);
  CHECK(dca_error_json(nullptr) == nullptr);
  CHECK(dca_gauge_deviation(nullptr) < 0);
  dca_close(nullptr);
}

TEST_CASE("simulation") {
  Session s(circuit("inductively_shunted.lagr"));
  REQUIRE(dca_simulate(s.s, 1e-2, 1, "x3=0.2,P3=0.1") == DCA_OK);
  const std::string csv = dca_trajectory_csv(s.s);
  CHECK(csv.rfind("t,x3,P3,", 0) == 0);
  const auto sim = nlohmann::json::parse(dca_simulation_json(s.s));
  CHECK(sim["simulation"]["steps"] == 100);
  CHECK(sim["simulation"]["energy"]["max_relative_drift"].get<double>() < 1e-6);
  CHECK(dca_simulate(s.s, 0, 1, "") == DCA_INVALID_ARGUMENT);
  CHECK(dca_simulate(s.s, 1e-2, 1, "x1=1") == DCA_INVALID_ARGUMENT);
  CHECK(dca_trajectory_csv(s.s) == nullptr);
}

TEST_CASE("gauge comparison") {
  Session s(circuit("inductively_shunted.lagr"));
  REQUIRE(dca_gauge_compare(s.s, "1,0", "2,3", nullptr, 1e-2, 2, "x3=0.2,P3=0.1") == DCA_OK);
  CHECK(dca_gauge_deviation(s.s) < 1e-10);
  const auto cmp = nlohmann::json::parse(dca_comparison_json(s.s));
  CHECK(cmp["gauge_compare"]["basis"][0] == "x1");
  CHECK(cmp["gauge_compare"]["basis"][1] == "x3");
  CHECK(dca_gauge_compare(s.s, "1,1", "1,-1", nullptr, 1e-2, 1, "") == DCA_INADMISSIBLE_GAUGE);

  Session coupled(circuit("noncommutative.lagr"));
  CHECK(dca_gauge_compare(coupled.s, "1,0", "2,3", nullptr, 1e-2, 1, "") == DCA_INVALID_ARGUMENT);
}
