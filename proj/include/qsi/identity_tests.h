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

#ifndef QSI_IDENTITY_TESTS_H
#define QSI_IDENTITY_TESTS_H

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsi/exact.h"
#include "qsi/instances.h"
#include "qsi/permgroup.h"
#include "qsi/qmath.h"

namespace qsi {

enum class TestKind { Swap, Circle, Permutation, Alternation };

const char *to_string(TestKind kind);
/// Accepts "swap", "circle", "permutation", "alternation".
TestKind parse_test_kind(const std::string &name);

/// Size limits for dense circuit simulation.
struct CircuitCaps {
    static constexpr std::size_t kDefaultMaxAmps = std::size_t{1} << 24;
    /// Permutation and Alternation circuits (control dimension n! or n!/2).
    int max_group_n = 6;
    int max_circle_n = 10;
    /// Bound on control_dim * dim^n.
    std::size_t max_amps = kDefaultMaxAmps;

    /// Defaults, with max_amps taken from QSI_MAX_AMPS when set.
    static CircuitCaps from_environment();
};

/// Formula-path limits on n.
inline constexpr int kMaxFormulaGroupN = 10;
inline constexpr int kMaxFormulaCircleN = 24;

/// The permutations applied under control, element 0 being the identity:
/// Swap -> [id, (1 2)], Circle -> sigma_c^0..sigma_c^(n-1), Permutation -> S_n,
/// Alternation -> A_n.
std::vector<Permutation> control_group(TestKind kind, int n);

struct TestResult {
    double p_equal = 0.0;
    /// Content registers (factor dims = dim, ..., dim) after outcome 0.
    std::optional<JointState> post_equal;
    std::vector<std::pair<std::size_t, double>> outcome_distribution;
};

/// Dense simulation of: |0> (x) psi_1 (x) ... (x) psi_n, DFT on the control,
/// controlled permutation of the content registers, inverse DFT, measurement
/// of the control. Works on any states; throws CapExceeded past the caps.
TestResult run_circuit(TestKind kind, const QsiInstance &inst, const CircuitCaps &caps = CircuitCaps{});

/// Whether run_circuit(kind, ...) on n states of dimension dim fits the caps.
bool circuit_fits(TestKind kind, int n, std::size_t dim, const CircuitCaps &caps = CircuitCaps{});

/// Applies "register m receives the content of register g(m)" to a product
/// space of n registers of dimension dim.
Vector permute_registers(const Vector &amps, std::size_t dim, const Permutation &g);

/// Controlled-g: the content block for control value c is permuted by
/// group[c]. The content factors must all have dimension dim.
JointState apply_controlled(const JointState &s, std::span<const Permutation> group);

/// (1/|G|) sum_{g in G} prod_m <psi_m|psi_g(m)>, from the n x n Gram matrix.
double equal_prob_formula(TestKind kind, const QsiInstance &inst);
double equal_prob_formula(TestKind kind, const Matrix &gram);

/// Exact EQUAL probability on a partition-structured instance: the number of
/// group elements stabilizing every block, divided by |G|.
Rational equal_prob_exact(TestKind kind, const Partition &partition);

struct RepetitionSet {
    std::vector<int> shifts;  // K, ascending
    int s = 0;                // repetition number |K|
    int k = 0;                // cycle size n / s
};

/// Shifts k' in 0..n-1 whose cyclic rotation maps I_1 onto itself.
RepetitionSet repetition_set(const Alignment &a);
/// Same for a general block labeling of the cycle (any number of blocks).
RepetitionSet repetition_set(std::span<const int> labels);

}  // namespace qsi

#endif  // QSI_IDENTITY_TESTS_H
