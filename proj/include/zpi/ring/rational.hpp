// Copyright 2026 The zpi Authors
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

namespace zpi::ring {

/// Exact rationals, always kept in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "a" or "a/b" with b > 0.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Accepts "a" or "a/b" (optional leading sign). Throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace zpi::ring
