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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dca {

/// Exact arbitrary-precision rational, always kept in reduced form.
using Rational = mpq_class;

/// "p/q" or "p" (denominator 1); parses back through parse_rational.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.125" or "-2.5".
/// Throws Error(InvalidArgument) on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

inline double to_double(const Rational& value) { return value.get_d(); }

} // namespace dca
