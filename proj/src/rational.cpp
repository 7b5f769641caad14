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

#include "convwer/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace convwer {

Rational rational_mean(const std::vector<Rational>& values) {
  if (values.empty()) {
    throw std::invalid_argument("rational_mean: empty input");
  }
  Rational sum = 0;
  for (const Rational& v : values) {
    sum += v;
  }
  return sum / Rational(static_cast<unsigned>(values.size()));
}

Rational rational_from_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt numerator = 0;
  BigInt denominator = 1;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_point) {
        throw std::invalid_argument("rational_from_decimal: bad number '" + text + "'");
      }
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      numerator = numerator * 10 + (c - '0');
      if (seen_point) {
        denominator *= 10;
      }
      any_digit = true;
    } else {
      throw std::invalid_argument("rational_from_decimal: bad number '" + text + "'");
    }
  }
  if (!any_digit) {
    throw std::invalid_argument("rational_from_decimal: bad number '" + text + "'");
  }
  if (negative) {
    numerator = -numerator;
  }
  return Rational(numerator, denominator);
}

namespace {

// Hundredths of `scaled`, rounded half away from zero, as a decimal
// string with exactly two fraction digits.
std::string format_hundredths(const Rational& scaled) {
  BigInt num = boost::multiprecision::numerator(scaled);
  BigInt den = boost::multiprecision::denominator(scaled);  // > 0, canonical
  bool negative = num < 0;
  if (negative) {
    num = -num;
  }
  // round(num*100 / den), half away from zero.
  BigInt t = num * 100;
  BigInt q = t / den;
  BigInt r = t % den;
  if (r * 2 >= den) {
    ++q;
  }
  BigInt whole = q / 100;
  BigInt frac = q % 100;
  std::string out;
  if (negative && q != 0) {
    out += '-';
  }
  out += whole.str();
  out += '.';
  std::string f = frac.str();
  if (f.size() < 2) {
    f.insert(f.begin(), 2 - f.size(), '0');
  }
  out += f;
  return out;
}

}  // namespace

std::string format_pct(const Rational& value) { return format_hundredths(value * 100); }

std::string format_pp(const Rational& value_pp) { return format_hundredths(value_pp); }

double rational_to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace convwer
