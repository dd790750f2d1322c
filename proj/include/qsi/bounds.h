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

#ifndef QSI_BOUNDS_H
#define QSI_BOUNDS_H

#include <string>

#include <Eigen/Dense>

#include "qsi/exact.h"
#include "qsi/instances.h"

namespace qsi {

/// An exact rational with its double view.
struct RationalBound {
    Rational value;
    double float_view = 0.0;

    static RationalBound of(Rational q);
};

/// l!(n - l)!/n!, the Permutation-test soundness on blocks of sizes l, n - l.
/// Requires 1 <= l <= n - 1 and n <= 40.
RationalBound two_block_soundness(int n, int l);

/// q(n, r, s) = C(n/s, r/s)/C(n, r) * s/n. Requires s | n, s | r, r <= n/2.
RationalBound q_value(int n, int r, int s);

enum class QCase {
    SAtMostRThird,  // s <= r/3:  q <= 1/(n s^2)
    SHalfR,         // s = r/2:   q <= 6/((n-1)(n-2)(n-3))
    SEqualsR,       // s = r:     q <= 2/(n(n-1))
    Uncovered,      // r/3 < s < r/2
};

const char *to_string(QCase c);

struct QBoundCheck {
    QCase which = QCase::Uncovered;
    Rational q;
    Rational bound;  // zero when uncovered
    bool holds = false;
};

/// Compares q_value(n, r, s) against the case bound in exact arithmetic.
/// Requires n >= 4 along with the q_value preconditions.
QBoundCheck q_bound_check(int n, int r, int s);

/// 1/n + sum over s >= 2 dividing both n and r of q(n, r, s). Requires
/// 1 <= r <= n/2.
RationalBound eq2_bound(int n, int r);

/// pi^2/(6n).
double basel_asymptote(int n);
/// 1.7/n.
double basel_companion(int n);

struct BaselCheck {
    long long terms = 0;      // S
    double partial = 0.0;     // sum_{s=2..S} 1/s^2
    double tail_lo = 0.0;     // 1/(S + 1)
    double tail_hi = 0.0;     // 1/S
    double target = 0.0;      // pi^2/6 - 1
    double error = 0.0;       // |partial + midpoint tail - target|
    bool holds = false;
};

/// Partial sum of 1/s^2 from s = 2 to S, accumulated from the small end
/// backwards, with the integral tail bracket [1/(S+1), 1/S]. Holds when the
/// target lies in the bracket and the midpoint estimate is within tol.
BaselCheck basel_tail_check(long long terms, double tol = 1e-8);

/// Largest dim^n accepted by symmetric_projector (dense dim^n x dim^n).
inline constexpr std::size_t kMaxProjectorDim = 4096;

/// (1/n!) sum over S_n of the register permutation operators on (C^dim)^n.
/// Throws CapExceeded past kMaxProjectorDim or n > 10.
Eigen::MatrixXd symmetric_projector(std::size_t dim, int n);

/// Tr[P_S rho] for rho = |psi_1 ... psi_n><psi_1 ... psi_n|, via the Gram
/// matrix: (1/n!) sum_sigma prod_i |<psi_i|psi_sigma(i)>|^2. Requires n <= 10.
double ps_lower_bound(const QsiInstance &inst);
/// Same quantity, exact, for a partition-structured instance.
Rational ps_lower_bound_exact(const Partition &partition);

struct TwoSidedReport {
    double trace_distance = 0.0;
    double swap_completeness_error = 0.0;  // p_c on |00>, |11>
    double swap_soundness_error = 0.0;     // p_s on |+->, |-+>
    bool trace_distance_ok = false;
    bool equality_ok = false;
};

/// Builds rho_y = (|00><00| + |11><11|)/2 and rho_n = (|+-><+-| + |-+><-+|)/2,
/// checks their trace distance is 1/2 and that the swap test meets
/// p_c + p_s = 1/2 with (p_c, p_s) = (0, 1/2).
TwoSidedReport two_sided_gap_check();

}  // namespace qsi

#endif  // QSI_BOUNDS_H
