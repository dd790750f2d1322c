// Copyright 2026 The QSI Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSI_EXACT_H
#define QSI_EXACT_H

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);
BigInt binomial(int n, int k);
std::int64_t gcd(std::int64_t a, std::int64_t b);

double to_double(const Rational &q);
double to_double(const BigInt &z);

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational &q);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string &text);

}  // namespace qsi

#endif  // QSI_EXACT_H
