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

#include "dca/error.hpp"
#include "dca/pipeline.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <sstream>

struct dca_session {
  std::string text;
  dca::AnalysisOptions options;
  std::optional<dca::Analysis> analysis;
  std::optional<dca::Simulation> simulation;
  std::optional<dca::GaugeComparison> comparison;
  std::string buffer;
  std::string error_json;
  std::string error_message;
};

namespace {

dca_status status_of(dca::ErrorCode code) {
  return static_cast<dca_status>(static_cast<int>(code) + 1);
}

std::vector<std::string> split(const char* list) {
  std::vector<std::string> out;
  if (list == nullptr) return out;
  std::string s(list);
  for (auto& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

void set_error(dca_session* s, const std::string& code, const std::string& message, int line,
               int column) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"message", message}, {"line", line}, {"column", column}};
  s->error_json = j.dump(2) + "\n";
  s->error_message = message;
}

template <class F>
dca_status guarded(dca_session* s, F&& body) {
  if (s == nullptr) return DCA_INVALID_ARGUMENT;
  s->error_json.clear();
  s->error_message.clear();
  try {
    body();
    return DCA_OK;
  } catch (const dca::Error& e) {
    set_error(s, std::string(dca::error_code_name(e.code())), e.what(), e.line(), e.column());
    return status_of(e.code());
  } catch (const std::exception& e) {
    set_error(s, "InternalError", e.what(), 0, 0);
    return DCA_INTERNAL_ERROR;
  }
}

const char* hold(dca_session* s, std::string value) {
  s->buffer = std::move(value);
  return s->buffer.c_str();
}

std::map<std::string, double> parse_init(const char* init) {
  std::map<std::string, double> out;
  for (const auto& item : split(init)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw dca::Error(dca::ErrorCode::InvalidArgument, "expected name=value, got '" + item + "'");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1)
      throw dca::Error(dca::ErrorCode::InvalidArgument, "bad number in '" + item + "'");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

std::pair<dca::Rational, dca::Rational> parse_pair(const char* text) {
  const auto parts = split(text);
  if (parts.size() != 2)
    throw dca::Error(dca::ErrorCode::InvalidArgument,
                     std::string("expected a,b, got '") + (text ? text : "") + "'");
  return {dca::parse_rational(parts[0]), dca::parse_rational(parts[1])};
}

} // namespace

extern "C" {

const char* dca_status_name(dca_status status) {
  if (status == DCA_OK) return "OK";
  if (status == DCA_INTERNAL_ERROR) return "InternalError";
  if (status > DCA_OK && status < DCA_INTERNAL_ERROR)
    return dca::error_code_name(static_cast<dca::ErrorCode>(static_cast<int>(status) - 1)).data();
  return "Unknown";
}

dca_status dca_open(const char* text, dca_session** out) {
  if (out == nullptr) return DCA_INVALID_ARGUMENT;
  auto s = std::make_unique<dca_session>();
  s->text = text ? text : "";
  dca_session* raw = s.get();
  const dca_status st = guarded(raw, [&] { (void)dca::parse(raw->text); });
  *out = s.release();
  return st;
}

void dca_close(dca_session* session) { delete session; }

dca_status dca_set_keep(dca_session* session, const char* names) {
  return guarded(session, [&] { session->options.keep = split(names); });
}

dca_status dca_add_gauge(dca_session* session, const char* expression) {
  return guarded(session, [&] {
    if (expression == nullptr || *expression == '\0')
      throw dca::Error(dca::ErrorCode::InvalidArgument, "empty gauge condition");
    session->options.gauges.emplace_back(expression);
  });
}

dca_status dca_set_scc_choice(dca_session* session, const size_t* indices, size_t count) {
  return guarded(session, [&] {
    if (indices == nullptr && count > 0)
      throw dca::Error(dca::ErrorCode::InvalidArgument, "null index array");
    session->options.scc_choice = std::vector<std::size_t>(indices, indices + count);
  });
}

dca_status dca_analyze(dca_session* session) {
  return guarded(session, [&] {
    session->analysis.reset();
    session->analysis = dca::analyze(session->text, session->options);
  });
}

const char* dca_report_json(dca_session* session) {
  if (session == nullptr || !session->analysis) return nullptr;
  return hold(session, dca::report_json(*session->analysis));
}

const char* dca_report_text(dca_session* session) {
  if (session == nullptr || !session->analysis) return nullptr;
  return hold(session, dca::report_text(*session->analysis));
}

const char* dca_quantum_json(dca_session* session) {
  if (session == nullptr || !session->analysis) return nullptr;
  return hold(session, dca::quantum_json(*session->analysis));
}

const char* dca_quantum_text(dca_session* session) {
  if (session == nullptr || !session->analysis) return nullptr;
  return hold(session, dca::quantum_text(*session->analysis));
}

dca_status dca_simulate(dca_session* session, double dt, double t_end, const char* init) {
  return guarded(session, [&] {
    session->simulation.reset();
    if (!session->analysis) session->analysis = dca::analyze(session->text, session->options);
    dca::SimulationOptions o{dt, t_end, parse_init(init)};
    session->simulation = dca::simulate(*session->analysis, o);
  });
}

const char* dca_trajectory_csv(dca_session* session) {
  if (session == nullptr || !session->simulation) return nullptr;
  return hold(session, dca::to_csv(session->simulation->trajectory));
}

const char* dca_simulation_json(dca_session* session) {
  if (session == nullptr || !session->simulation) return nullptr;
  return hold(session, dca::simulation_json(*session->simulation));
}

const char* dca_simulation_text(dca_session* session) {
  if (session == nullptr || !session->simulation) return nullptr;
  return hold(session, dca::simulation_text(*session->simulation));
}

dca_status dca_gauge_compare(dca_session* session, const char* first, const char* second,
                             const char* basis, double dt, double t_end, const char* init) {
  return guarded(session, [&] {
    session->comparison.reset();
    dca::SimulationOptions o{dt, t_end, parse_init(init)};
    session->comparison = dca::gauge_compare(session->text, session->options, parse_pair(first),
                                             parse_pair(second), split(basis), o);
  });
}

double dca_gauge_deviation(dca_session* session) {
  if (session == nullptr || !session->comparison) return -1;
  return session->comparison->max_relative_deviation;
}

const char* dca_comparison_json(dca_session* session) {
  if (session == nullptr || !session->comparison) return nullptr;
  return hold(session, dca::comparison_json(*session->comparison));
}

const char* dca_comparison_text(dca_session* session) {
  if (session == nullptr || !session->comparison) return nullptr;
  return hold(session, dca::comparison_text(*session->comparison));
}

const char* dca_error_json(dca_session* session) {
  if (session == nullptr) return nullptr;
  return session->error_json.c_str();
}

const char* dca_error_message(dca_session* session) {
  if (session == nullptr) return nullptr;
  return session->error_message.c_str();
}

} // extern "C"
