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

#ifndef DCA_DCA_H
#define DCA_DCA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DCA_API __declspec(dllexport)
#else
#define DCA_API __attribute__((visibility("default")))
#endif

typedef enum dca_status {
  DCA_OK = 0,
  DCA_SYNTAX_ERROR,
  DCA_UNDECLARED_IDENTIFIER,
  DCA_UNBOUND_PARAMETER,
  DCA_UNSUPPORTED_VELOCITY_STRUCTURE,
  DCA_UNSUPPORTED_EXPRESSION,
  DCA_DEPENDENT_CONSTRAINT_SET,
  DCA_UNBOUND_VARIABLE,
  DCA_NON_AFFINE_SECONDARY_CONSTRAINT,
  DCA_INCONSISTENT_CONSTRAINTS,
  DCA_NON_TERMINATING,
  DCA_NON_CONSTANT_BRACKET_MATRIX,
  DCA_INVALID_SCC_CHOICE,
  DCA_UNSOLVABLE_ELIMINATION_CHOICE,
  DCA_INADMISSIBLE_GAUGE,
  DCA_NON_FINITE_STATE,
  DCA_OPERATOR_ORDERING_UNSUPPORTED,
  DCA_INVALID_ARGUMENT,
  DCA_INVARIANT_VIOLATION,
  DCA_INTERNAL_ERROR
} dca_status;

/* One analysis of one .lagr text. Not thread-safe; use one session per
   thread. Returned strings stay valid until the next call on the session. */
typedef struct dca_session dca_session;

DCA_API const char* dca_status_name(dca_status status);

/* Parses `text`. On failure *out is still a session carrying the error. */
DCA_API dca_status dca_open(const char* text, dca_session** out);
DCA_API void dca_close(dca_session* session);

/* Space- or comma-separated variable names; replaces the file's keep list. */
DCA_API dca_status dca_set_keep(dca_session* session, const char* names);
/* Adds a gauge condition; once any is added the file's gauges are ignored. */
DCA_API dca_status dca_add_gauge(dca_session* session, const char* expression);
/* 1-based constraint indices of the second-class set. */
DCA_API dca_status dca_set_scc_choice(dca_session* session, const size_t* indices, size_t count);

DCA_API dca_status dca_analyze(dca_session* session);
DCA_API const char* dca_report_json(dca_session* session);
DCA_API const char* dca_report_text(dca_session* session);
DCA_API const char* dca_quantum_json(dca_session* session);
DCA_API const char* dca_quantum_text(dca_session* session);

/* `init` is "name=value" pairs separated by spaces or commas; may be NULL. */
DCA_API dca_status dca_simulate(dca_session* session, double dt, double t_end, const char* init);
DCA_API const char* dca_trajectory_csv(dca_session* session);
DCA_API const char* dca_simulation_json(dca_session* session);
DCA_API const char* dca_simulation_text(dca_session* session);

/* `first`/`second` are "a,b" rational pairs for the gauge a*u + b*v = 0;
   `basis` is "u,v" or NULL for the default. */
DCA_API dca_status dca_gauge_compare(dca_session* session, const char* first, const char* second,
                                     const char* basis, double dt, double t_end,
                                     const char* init);
DCA_API double dca_gauge_deviation(dca_session* session);
DCA_API const char* dca_comparison_json(dca_session* session);
DCA_API const char* dca_comparison_text(dca_session* session);

/* {"error": {"code", "message", "line", "column"}} for the last failure. */
DCA_API const char* dca_error_json(dca_session* session);
DCA_API const char* dca_error_message(dca_session* session);

#ifdef __cplusplus
}
#endif

#endif
