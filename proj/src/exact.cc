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

#include "qsi/exact.h"

#include <algorithm>
#include <stdexcept>

namespace qsi {

BigInt factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("factorial of negative number");
    }
    BigInt result = 1;
    for (int i = 2; i <= n; ++i) {
        result *= i;
    }
    return result;
}

BigInt binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        // Exact at every step: result holds C(n - k + i, i).
        result = result * (n - k + i) / i;
    }
    return result;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

double to_double(const Rational &q) {
    return q.convert_to<double>();
}

double to_double(const BigInt &z) {
    return z.convert_to<double>();
}

std::string to_string(const Rational &q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string &text) {
    auto parse_int = [&](const std::string &s) {
        if (s.empty()) {
            throw std::invalid_argument("malformed rational: '" + text + "'");
        }
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) {
            throw std::invalid_argument("malformed rational: '" + text + "'");
        }
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                throw std::invalid_argument("malformed rational: '" + text + "'");
            }
        }
        return BigInt(s);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_int(text));
    }
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator: '" + text + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace qsi
