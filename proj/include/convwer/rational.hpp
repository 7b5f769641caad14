// Copyright 2026 The convwer Authors.
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

#ifndef CONVWER_RATIONAL_HPP_
#define CONVWER_RATIONAL_HPP_

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace convwer {

// All rates and aggregates are exact rationals until the moment they are
// serialized. Utterance means need a big-integer backend: the common
// denominator of a mean over reference lengths grows like an lcm and
// overflows any fixed-width integer long before corpora get interesting.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Arithmetic mean of a non-empty vector, exact.
Rational rational_mean(const std::vector<Rational>& values);

// Parses a plain decimal string ("9.81", "-1.37", "4") into an exact
// rational. Used to load published aggregates into fixtures and configs
// without a float round trip. Throws std::invalid_argument on junk.
Rational rational_from_decimal(const std::string& text);

// Renders value*100 with two decimals, rounding half away from zero.
// 403/10000 -> "4.03", -137/10000 -> "-1.37". This is the only place a
// rational becomes a decimal, so every emitted number shares one rounding
// rule.
std::string format_pct(const Rational& value);

// Same rounding, but the value is already in percent/point units
// (format_pp(757/100) -> "7.57"). Used for values that were constructed
// directly on the percent scale.
std::string format_pp(const Rational& value_pp);

// Nearest double, for API boundaries that want floats (bindings, sanity
// checks). Reports never go through this.
double rational_to_double(const Rational& value);

}  // namespace convwer

#endif  // CONVWER_RATIONAL_HPP_
