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

#ifndef QSI_PROTOCOLS_H
#define QSI_PROTOCOLS_H

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qsi/exact.h"
#include "qsi/identity_tests.h"
#include "qsi/instances.h"
#include "qsi/rng.h"

namespace qsi {

enum class Answer { Yes, No };

const char *to_string(Answer a);

struct SwapRecord {
    std::pair<int, int> pair;  // 1-based registers, first < second
    bool equal;
};

struct ProtocolOutcome {
    Answer verdict = Answer::Yes;
    int rounds_executed = 0;
    std::vector<SwapRecord> transcript;
};

/// How the register kept after a passing round is chosen.
enum class SrsPolicy {
    /// Either tested register with probability 1/2.
    Uniform,
    /// The second register of the first tested pair is kept in every round,
    /// so the other two registers alternate against it.
    KeepSecond,
};

/// Largest m accepted by the exact SRS evaluator.
inline constexpr int kMaxSrsRounds = 20;

/// One sampled run of SRS(m) on three states: each round a fresh control
/// qubit runs the swap-test circuit on the chosen registers of the joint
/// content state, the control is measured and discarded, and NOT EQUAL halts
/// with NO. Throws std::invalid_argument if n != 3 or the promise fails.
ProtocolOutcome srs_sample(const QsiInstance &inst, int m, Rng &rng);

/// Exact YES probability of SRS(m), by branching over every classical choice.
/// Rounds act as (I + SWAP)/2 on integer coefficient vectors in the block-label
/// basis, so every branch weight is an exact rational.
Rational srs_exact(const QsiInstance &inst, int m, SrsPolicy policy = SrsPolicy::Uniform);

struct SrsRound {
    std::pair<int, int> pair;
    /// Conditional probability of passing this round.
    Rational p_pass;
    /// Unnormalized state after the round: product of (I + SWAP) applied to the
    /// initial basis vector, indexed by label_1 * B^2 + label_2 * B + label_3.
    std::vector<std::int64_t> coefficients;
};

/// The KeepSecond path from a fixed first pair, round by round.
std::vector<SrsRound> srs_trace(const QsiInstance &inst, int m, std::pair<int, int> first_pair);

struct SrsClosedForm {
    Rational p;  // conditional pass probability of round k
    Rational a;  // coefficient parameter of the post-round state
    Rational q;  // cumulative pass probability after k rounds
};

/// p_k = 1 - 6/(4^k + 8); a_k = (2/3)(4^((k-1)/2) - 1) for odd k and
/// (1/3)(4^(k/2) - 1) for even k; q_k = 1/3 + 2/(3 * 4^k).
SrsClosedForm srs_closed_form(int k);

/// Where RCIR gets its circle-test EQUAL probability.
enum class CirclePath { Auto, Circuit, Formula };

/// Uniform tau over S_n, relabel phi_j = psi_tau(j), then one circle test.
/// Auto uses the circuit when it fits the caps and the exact formula otherwise.
Answer rcir_sample(const QsiInstance &inst, Rng &rng, CirclePath path = CirclePath::Auto,
                   const CircuitCaps &caps = CircuitCaps{});

/// Soundness error of RCIR on a two-block instance with |I_1| = r:
/// the mean of s(A)/n over all r-subsets A of [n]. Throws CapExceeded when
/// C(n, r) > 10^7 or n > 64.
Rational rcir_exact(int n, int r);

/// Exact RCIR EQUAL probability for any block structure, averaging s/n over
/// every distinct arrangement of the block labels on the cycle.
Rational rcir_exact_arrangements(const Partition &partition);

/// Worst two-block coarsening of a partition: the largest rcir_exact(n, r)
/// over all ways of merging the blocks into two groups. Upper-bounds
/// rcir_exact_arrangements.
Rational rcir_worst_merge(const Partition &partition);

/// RCIR soundness for a promise instance: 1 for YES, rcir_exact(n, r) for two
/// blocks, rcir_worst_merge for more.
Rational rcir_exact(const QsiInstance &inst);

struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;

    /// Wilson half-width divided by the 95% z value.
    double sigma() const;
    /// |p_hat - p| <= k * sigma().
    bool agrees_with(double p, double k) const;
};

/// Runs `trial` with Rng(base_seed ^ i) for i in [0, trials); reports the
/// success frequency and a Wilson 95% interval.
McEstimate mc_run(const std::function<bool(Rng &)> &trial, std::uint64_t trials, std::uint64_t base_seed);

}  // namespace qsi

#endif  // QSI_PROTOCOLS_H
