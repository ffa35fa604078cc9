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

#include "dca/dca.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Common {
  std::string file;
  std::string json;
  std::string keep;
  std::vector<std::string> gauges;
  std::vector<std::size_t> scc;
};

struct Simulate {
  double dt = 1e-3;
  double t_end = 10;
  std::vector<std::string> init;
  std::string csv;
  std::vector<std::string> compare;
  std::string basis;
};

int exit_code(dca_status status) {
  if (status == DCA_OK) return 0;
  if (status == DCA_INVARIANT_VIOLATION || status == DCA_INTERNAL_ERROR) return 2;
  return 1;
}

bool write_file(const std::string& path, const char* content) {
  if (path == "-") {
    std::fputs(content, stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

int fail(dca_session* s, dca_status status, const std::string& json_path) {
  const char* err = dca_error_json(s);
  std::fputs(err, stderr);
  if (!json_path.empty() && json_path != "-") write_file(json_path, err);
  return exit_code(status);
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "circuit Lagrangian (.lagr)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--json", c.json, "write the JSON report to this path ('-' for stdout)");
  cmd->add_option("--keep", c.keep, "variables to keep, comma separated");
  cmd->add_option("--gauge", c.gauges, "gauge condition (repeatable); replaces the file's");
  cmd->add_option("--scc-choice", c.scc, "1-based constraint indices of the second-class set")
      ->delimiter(',');
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : " ") + i;
  return out;
}

int run(const std::string& command, const Common& c, const Simulate& sim) {
  dca_session* s = nullptr;
  dca_status st = dca_open(read_all(c.file).c_str(), &s);
  struct Closer {
    dca_session* s;
    ~Closer() { dca_close(s); }
  } closer{s};
  if (st != DCA_OK) return fail(s, st, c.json);
  if (!c.keep.empty() && (st = dca_set_keep(s, c.keep.c_str())) != DCA_OK) return fail(s, st, c.json);
  for (const auto& g : c.gauges)
    if ((st = dca_add_gauge(s, g.c_str())) != DCA_OK) return fail(s, st, c.json);
  if (!c.scc.empty() && (st = dca_set_scc_choice(s, c.scc.data(), c.scc.size())) != DCA_OK)
    return fail(s, st, c.json);

  if (command == "simulate" && !sim.compare.empty()) {
    st = dca_gauge_compare(s, sim.compare[0].c_str(), sim.compare[1].c_str(),
                           sim.basis.empty() ? nullptr : sim.basis.c_str(), sim.dt, sim.t_end,
                           joined(sim.init).c_str());
    if (st != DCA_OK) return fail(s, st, c.json);
    if (c.json != "-") std::fputs(dca_comparison_text(s), stdout);
    if (!c.json.empty() && !write_file(c.json, dca_comparison_json(s))) return 1;
    return 0;
  }
  if (command == "simulate") {
    if ((st = dca_simulate(s, sim.dt, sim.t_end, joined(sim.init).c_str())) != DCA_OK)
      return fail(s, st, c.json);
    if (c.json != "-" && sim.csv != "-") std::fputs(dca_simulation_text(s), stdout);
    if (!sim.csv.empty() && !write_file(sim.csv, dca_trajectory_csv(s))) return 1;
    if (!c.json.empty() && !write_file(c.json, dca_simulation_json(s))) return 1;
    return 0;
  }
  if ((st = dca_analyze(s)) != DCA_OK) return fail(s, st, c.json);
  const bool quantize = command == "quantize";
  if (c.json != "-") std::fputs(quantize ? dca_quantum_text(s) : dca_report_text(s), stdout);
  if (!c.json.empty() && !write_file(c.json, quantize ? dca_quantum_json(s) : dca_report_json(s)))
    return 1;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac constraint analysis of circuit Lagrangians"};
  app.require_subcommand(1);
  Common common;
  Simulate sim;

  auto* analyze = app.add_subcommand("analyze", "full constraint analysis report");
  add_common(analyze, common);
  auto* quantize = app.add_subcommand("quantize", "commutator table only");
  add_common(quantize, common);
  auto* simulate = app.add_subcommand("simulate", "integrate the reduced dynamics");
  add_common(simulate, common);
  simulate->add_option("--dt", sim.dt, "RK4 step")->check(CLI::PositiveNumber);
  simulate->add_option("--t-end", sim.t_end, "final time")->check(CLI::PositiveNumber);
  simulate->add_option("--init", sim.init, "initial values, name=value (kept variables)");
  simulate->add_option("--csv", sim.csv, "write the trajectory as CSV ('-' for stdout)");
  simulate->add_option("--gauge-compare", sim.compare, "two gauge pairs a1,b1 a2,b2")
      ->expected(2);
  simulate->add_option("--gauge-basis", sim.basis, "u,v for the gauge a*u + b*v");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (sim.dt > sim.t_end) {
    std::fputs("--t-end must be at least --dt\n", stderr);
    return 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return run(command, common, sim);
}
