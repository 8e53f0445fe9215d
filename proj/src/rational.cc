// Copyright 2026 The corefkit Authors.
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

#include "corefkit/rational.h"

#include "corefkit/error.h"

namespace corefkit {
namespace {

using boost::multiprecision::cpp_int;

cpp_int Pow10(int exponent) {
  cpp_int result = 1;
  for (int i = 0; i < exponent; ++i) result *= 10;
  return result;
}

std::string RenderScaled(const cpp_int& scaled, int decimals) {
  std::string digits = scaled.str();
  if (decimals == 0) return digits;
  if (static_cast<int>(digits.size()) <= decimals) {
    digits.insert(0, decimals + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - decimals, ".");
  return digits;
}

void RequireNonNegative(const Rational& value) {
  if (value < 0) throw Error("cannot render negative value " + RenderExact(value));
}

}  // namespace

std::string RenderTruncated(const Rational& value, int decimals) {
  RequireNonNegative(value);
  const cpp_int scaled =
      numerator(value) * Pow10(decimals) / denominator(value);
  return RenderScaled(scaled, decimals);
}

std::string RenderRounded(const Rational& value, int decimals) {
  RequireNonNegative(value);
  // floor(x * 10^d + 1/2)
  const cpp_int num = numerator(value) * Pow10(decimals) * 2 + denominator(value);
  const cpp_int scaled = num / (denominator(value) * 2);
  return RenderScaled(scaled, decimals);
}

std::string RenderExact(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double ToDouble(const Rational& value) {
  return value.convert_to<double>();
}

Rational ParseRational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(cpp_int(text));
    return Rational(cpp_int(text.substr(0, slash)),
                    cpp_int(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error("not a rational: '" + text + "'");
  }
}

}  // namespace corefkit
