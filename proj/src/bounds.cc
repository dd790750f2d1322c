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

#include "qsi/bounds.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsi/errors.h"
#include "qsi/identity_tests.h"
#include "qsi/permgroup.h"
#include "qsi/qmath.h"

namespace qsi {

RationalBound RationalBound::of(Rational q) {
    RationalBound b;
    b.float_view = to_double(q);
    b.value = std::move(q);
    return b;
}

RationalBound two_block_soundness(int n, int l) {
    if (n < 2 || n > 40 || l < 1 || l > n - 1) {
        throw std::invalid_argument("two_block_soundness needs 1 <= l <= n - 1 and n <= 40");
    }
    Rational ratio(factorial(l) * factorial(n - l), factorial(n));
    if (ratio > Rational(1, n)) {
        throw std::logic_error("two-block soundness exceeds 1/n");
    }
    return RationalBound::of(std::move(ratio));
}

namespace {

void check_q_args(int n, int r, int s) {
    if (n < 1 || r < 1 || s < 1) {
        throw std::invalid_argument("q(n, r, s) needs positive arguments");
    }
    if (n % s != 0 || r % s != 0) {
        throw std::invalid_argument("q(n, r, s) needs s to divide both n and r");
    }
    if (2 * r > n) {
        throw std::invalid_argument("q(n, r, s) needs r <= n/2");
    }
}

}  // namespace

RationalBound q_value(int n, int r, int s) {
    check_q_args(n, r, s);
    return RationalBound::of(Rational(binomial(n / s, r / s), binomial(n, r)) * Rational(s, n));
}

const char *to_string(QCase c) {
    switch (c) {
    case QCase::SAtMostRThird:
        return "s<=r/3";
    case QCase::SHalfR:
        return "s=r/2";
    case QCase::SEqualsR:
        return "s=r";
    case QCase::Uncovered:
        return "uncovered";
    }
    return "?";
}

QBoundCheck q_bound_check(int n, int r, int s) {
    check_q_args(n, r, s);
    if (n < 4) {
        throw std::invalid_argument("q_bound_check needs n >= 4");
    }
    QBoundCheck check;
    check.q = q_value(n, r, s).value;
    if (3 * s <= r) {
        check.which = QCase::SAtMostRThird;
        check.bound = Rational(1, BigInt(n) * s * s);
    } else if (2 * s == r) {
        check.which = QCase::SHalfR;
        check.bound = Rational(6, BigInt(n - 1) * (n - 2) * (n - 3));
    } else if (s == r) {
        check.which = QCase::SEqualsR;
        check.bound = Rational(2, BigInt(n) * (n - 1));
    } else {
        check.which = QCase::Uncovered;
        check.bound = 0;
        check.holds = false;
        return check;
    }
    check.holds = check.q <= check.bound;
    return check;
}

RationalBound eq2_bound(int n, int r) {
    if (n < 2 || r < 1 || 2 * r > n) {
        throw std::invalid_argument("eq2_bound needs 1 <= r <= n/2");
    }
    Rational total(1, n);
    for (int s = 2; s <= r; ++s) {
        if (n % s == 0 && r % s == 0) {
            total += q_value(n, r, s).value;
        }
    }
    return RationalBound::of(std::move(total));
}

double basel_asymptote(int n) {
    if (n < 2) {
        throw std::invalid_argument("basel_asymptote needs n >= 2");
    }
    return std::numbers::pi * std::numbers::pi / (6.0 * n);
}

double basel_companion(int n) {
    if (n < 2) {
        throw std::invalid_argument("basel_companion needs n >= 2");
    }
    return 1.7 / n;
}

BaselCheck basel_tail_check(long long terms, double tol) {
    if (terms < 2) {
        throw std::invalid_argument("basel_tail_check needs at least S = 2");
    }
    BaselCheck check;
    check.terms = terms;
    double partial = 0.0;
    for (long long s = terms; s >= 2; --s) {
        const double x = static_cast<double>(s);
        partial += 1.0 / (x * x);
    }
    check.partial = partial;
    check.tail_lo = 1.0 / static_cast<double>(terms + 1);
    check.tail_hi = 1.0 / static_cast<double>(terms);
    check.target = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    const double mid = partial + 0.5 * (check.tail_lo + check.tail_hi);
    check.error = std::abs(mid - check.target);
    // Rounding in the partial sum is far below 1e-13 for S up to 1e8.
    const double slack = 1e-13;
    const bool bracketed =
        partial + check.tail_lo - slack <= check.target && check.target <= partial + check.tail_hi + slack;
    check.holds = bracketed && check.error <= tol;
    return check;
}

Eigen::MatrixXd symmetric_projector(std::size_t dim, int n) {
    if (dim == 0 || n < 1) {
        throw std::invalid_argument("symmetric_projector needs dim >= 1 and n >= 1");
    }
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > kMaxProjectorDim / dim) {
            throw CapExceeded("symmetric_projector limited to dim^n <= " + std::to_string(kMaxProjectorDim));
        }
        total *= dim;
    }
    if (n > kMaxEnumerationDegree) {
        throw CapExceeded("symmetric_projector limited to n <= " + std::to_string(kMaxEnumerationDegree));
    }
    const auto d = static_cast<Eigen::Index>(total);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    const double weight = 1.0 / factorial(n).convert_to<double>();
    std::vector<std::size_t> stride(static_cast<std::size_t>(n));
    {
        std::size_t acc = 1;
        for (int m = n - 1; m >= 0; --m) {
            stride[static_cast<std::size_t>(m)] = acc;
            acc *= dim;
        }
    }
    for_each_sym(n, [&](const Permutation &sigma) {
        // U_sigma |y_1 ... y_n> = |y_sigma(1) ... y_sigma(n)>.
        for (std::size_t y = 0; y < total; ++y) {
            std::size_t x = 0;
            for (int m = 0; m < n; ++m) {
                std::size_t digit = (y / stride[static_cast<std::size_t>(sigma.image0(m))]) % dim;
                x += digit * stride[static_cast<std::size_t>(m)];
            }
            p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += weight;
        }
    });
    return p;
}

double ps_lower_bound(const QsiInstance &inst) {
    const int n = inst.n();
    if (n > kMaxEnumerationDegree) {
        throw CapExceeded("ps_lower_bound limited to n <= " + std::to_string(kMaxEnumerationDegree));
    }
    const Matrix gram = inst.gram();
    Eigen::MatrixXd overlap2 = gram.cwiseAbs2();
    double sum = 0.0;
    std::size_t count = 0;
    for_each_sym(n, [&](const Permutation &sigma) {
        double term = 1.0;
        for (int i = 0; i < n; ++i) {
            term *= overlap2(i, sigma.image0(i));
        }
        sum += term;
        ++count;
    });
    return sum / static_cast<double>(count);
}

Rational ps_lower_bound_exact(const Partition &partition) {
    // Overlaps are 0 or 1, so each term is 1 exactly on block stabilizers.
    return Rational(stabilizer_count(partition, GroupKind::Sym), factorial(partition.n()));
}

TwoSidedReport two_sided_gap_check() {
    const PureState zero = PureState::basis(2, 0);
    const PureState one = PureState::basis(2, 1);
    const PureState plus = PureState::plus();
    const PureState minus = PureState::minus();

    const std::vector<double> half{0.5, 0.5};
    const std::vector<PureState> yes_states{tensor({zero, zero}), tensor({one, one})};
    const std::vector<PureState> no_states{tensor({plus, minus}), tensor({minus, plus})};
    const DensityMatrix rho_y = DensityMatrix::mixture(half, yes_states);
    const DensityMatrix rho_n = DensityMatrix::mixture(half, no_states);

    TwoSidedReport report;
    report.trace_distance = trace_distance(rho_y, rho_n);

    auto swap_equal = [](const PureState &a, const PureState &b) {
        return run_circuit(TestKind::Swap, QsiInstance::unstructured({a, b})).p_equal;
    };
    report.swap_completeness_error = 0.5 * (1.0 - swap_equal(zero, zero)) + 0.5 * (1.0 - swap_equal(one, one));
    report.swap_soundness_error = 0.5 * swap_equal(plus, minus) + 0.5 * swap_equal(minus, plus);

    report.trace_distance_ok = std::abs(report.trace_distance - 0.5) <= kTolerance;
    report.equality_ok = std::abs(report.swap_completeness_error) <= kTolerance &&
                         std::abs(report.swap_soundness_error - 0.5) <= kTolerance &&
                         std::abs(report.swap_completeness_error + report.swap_soundness_error - 0.5) <= kTolerance;
    return report;
}

}  // namespace qsi
