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

#ifndef COREFKIT_RATIONAL_H_
#define COREFKIT_RATIONAL_H_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace corefkit {

// Exact arbitrary-precision rational used for all metric arithmetic.
using Rational = boost::multiprecision::cpp_rational;

// Renders a non-negative value with `decimals` digits, dropping the rest.
// 7/6 renders as "1.16" at two decimals.
std::string RenderTruncated(const Rational& value, int decimals);

// Renders a non-negative value with `decimals` digits, rounding half up.
std::string RenderRounded(const Rational& value, int decimals);

// "p/q", or "p" when the denominator is 1.
std::string RenderExact(const Rational& value);

double ToDouble(const Rational& value);

// Parses the RenderExact form.
Rational ParseRational(const std::string& text);

}  // namespace corefkit

#endif  // COREFKIT_RATIONAL_H_
