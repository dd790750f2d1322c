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

#include "qsi/protocols.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsi/errors.h"

namespace qsi {

const char *to_string(Answer a) {
    return a == Answer::Yes ? "YES" : "NO";
}

namespace {

constexpr std::array<std::pair<int, int>, 3> kPairs{{{1, 2}, {1, 3}, {2, 3}}};

Partition require_promise(const QsiInstance &inst) {
    auto part = infer_partition(inst);
    if (!part) {
        throw std::invalid_argument("instance violates the equal-or-orthogonal promise");
    }
    return *part;
}

Partition require_three_state_promise(const QsiInstance &inst) {
    if (inst.n() != 3) {
        throw std::invalid_argument("SRS needs exactly three states, got " + std::to_string(inst.n()));
    }
    return require_promise(inst);
}

std::pair<int, int> ordered(int a, int b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

int leftover(std::pair<int, int> p) {
    return 6 - p.first - p.second;
}

// Integer coefficient vectors over the block-label basis of three registers.
class LabelSpace {
  public:
    explicit LabelSpace(int blocks) : blocks_(blocks) {}

    std::size_t size() const { return static_cast<std::size_t>(blocks_ * blocks_ * blocks_); }

    std::vector<std::int64_t> basis(const std::vector<int> &labels) const {
        std::vector<std::int64_t> v(size(), 0);
        v[index(labels[0], labels[1], labels[2])] = 1;
        return v;
    }

    // (I + SWAP_ab) v.
    std::vector<std::int64_t> pass(const std::vector<std::int64_t> &v, std::pair<int, int> pair) const {
        std::vector<std::int64_t> out(v.size());
        for (std::size_t x = 0; x < v.size(); ++x) {
            std::array<int, 3> d = digits(x);
            std::swap(d[static_cast<std::size_t>(pair.first - 1)], d[static_cast<std::size_t>(pair.second - 1)]);
            out[x] = v[x] + v[index(d[0], d[1], d[2])];
        }
        return out;
    }

    static BigInt norm2(const std::vector<std::int64_t> &v) {
        BigInt s = 0;
        for (std::int64_t c : v) {
            s += BigInt(c) * c;
        }
        return s;
    }

  private:
    std::size_t index(int a, int b, int c) const {
        return static_cast<std::size_t>((a * blocks_ + b) * blocks_ + c);
    }
    std::array<int, 3> digits(std::size_t x) const {
        int i = static_cast<int>(x);
        return {i / (blocks_ * blocks_), (i / blocks_) % blocks_, i % blocks_};
    }
    int blocks_;
};

// Sum over the remaining choice tree of (choice probability) * |v_final|^2,
// where v_final is the product of (I + SWAP) over the path.
Rational srs_branch(const LabelSpace &space, const std::vector<std::int64_t> &v, std::pair<int, int> pair,
                    int round, int m, SrsPolicy policy, int pivot) {
    std::vector<std::int64_t> w = space.pass(v, pair);
    if (round == m) {
        return Rational(LabelSpace::norm2(w));
    }
    const int rest = leftover(pair);
    if (policy == SrsPolicy::KeepSecond) {
        return srs_branch(space, w, ordered(pivot, rest), round + 1, m, policy, pivot);
    }
    Rational total = 0;
    for (int kept : {pair.first, pair.second}) {
        total += srs_branch(space, w, ordered(kept, rest), round + 1, m, policy, pivot) / 2;
    }
    return total;
}

void check_rounds(int m) {
    if (m < 1) {
        throw std::invalid_argument("SRS needs at least one round");
    }
    if (m > kMaxSrsRounds) {
        throw CapExceeded("exact SRS limited to m <= " + std::to_string(kMaxSrsRounds));
    }
}

}  // namespace

ProtocolOutcome srs_sample(const QsiInstance &inst, int m, Rng &rng) {
    require_three_state_promise(inst);
    if (m < 1) {
        throw std::invalid_argument("SRS needs at least one round");
    }
    const std::size_t dim = inst.dim();
    const std::vector<std::size_t> dims{2, dim, dim, dim};
    const Matrix hadamard = dft(2);
    Vector content = tensor(inst.states()).amps();

    ProtocolOutcome outcome;
    std::pair<int, int> pair = kPairs[rng.below(3)];
    for (int round = 1; round <= m; ++round) {
        Vector amps = Vector::Zero(2 * content.size());
        amps.head(content.size()) = content;
        JointState state = JointState::from_amplitudes(dims, std::move(amps));
        state = state.apply_to_control(hadamard);
        const std::array<Permutation, 2> controlled{Permutation::identity(3),
                                                    Permutation::transposition(3, pair.first, pair.second)};
        state = apply_controlled(state, controlled);
        state = state.apply_to_control(hadamard);

        auto branches = measure_first_register(state);
        double u = rng.uniform();
        double cumulative = 0.0;
        const MeasurementBranch *picked = &branches.back();
        for (const auto &b : branches) {
            cumulative += b.probability;
            if (u < cumulative) {
                picked = &b;
                break;
            }
        }
        const bool equal = picked->outcome == 0;
        outcome.transcript.push_back({pair, equal});
        outcome.rounds_executed = round;
        if (!equal) {
            outcome.verdict = Answer::No;
            return outcome;
        }
        content = picked->post_state.content_block(0);
        const int kept = rng.below(2) == 0 ? pair.first : pair.second;
        pair = ordered(kept, leftover(pair));
    }
    outcome.verdict = Answer::Yes;
    return outcome;
}

Rational srs_exact(const QsiInstance &inst, int m, SrsPolicy policy) {
    const Partition part = require_three_state_promise(inst);
    check_rounds(m);
    const LabelSpace space(static_cast<int>(part.block_count()));
    const auto start = space.basis(part.labels());
    Rational total = 0;
    for (auto pair : kPairs) {
        total += srs_branch(space, start, pair, 1, m, policy, pair.second) / 3;
    }
    BigInt scale = 1;
    scale <<= 2 * m;
    return total / scale;
}

std::vector<SrsRound> srs_trace(const QsiInstance &inst, int m, std::pair<int, int> first_pair) {
    const Partition part = require_three_state_promise(inst);
    check_rounds(m);
    first_pair = ordered(first_pair.first, first_pair.second);
    if (first_pair.first < 1 || first_pair.second > 3 || first_pair.first == first_pair.second) {
        throw std::invalid_argument("first pair must name two distinct registers in 1..3");
    }
    const LabelSpace space(static_cast<int>(part.block_count()));
    std::vector<std::int64_t> v = space.basis(part.labels());
    const int pivot = first_pair.second;
    std::pair<int, int> pair = first_pair;
    std::vector<SrsRound> rounds;
    for (int round = 1; round <= m; ++round) {
        std::vector<std::int64_t> w = space.pass(v, pair);
        BigInt before = LabelSpace::norm2(v);
        BigInt after = LabelSpace::norm2(w);
        rounds.push_back({pair, Rational(after, 4 * before), w});
        if (after == 0) {
            break;
        }
        v = std::move(w);
        pair = ordered(pivot, leftover(pair));
    }
    return rounds;
}

SrsClosedForm srs_closed_form(int k) {
    if (k < 1) {
        throw std::invalid_argument("closed form defined for k >= 1");
    }
    auto pow4 = [](int e) {
        BigInt v = 1;
        v <<= 2 * e;
        return v;
    };
    SrsClosedForm f;
    f.p = Rational(1) - Rational(6, pow4(k) + 8);
    if (k % 2 == 1) {
        f.a = Rational(2, 3) * Rational(pow4((k - 1) / 2) - 1);
    } else {
        f.a = Rational(1, 3) * Rational(pow4(k / 2) - 1);
    }
    f.q = Rational(1, 3) + Rational(2, 3 * pow4(k));
    return f;
}

Answer rcir_sample(const QsiInstance &inst, Rng &rng, CirclePath path, const CircuitCaps &caps) {
    require_promise(inst);
    const int n = inst.n();
    if (n < 2) {
        throw std::invalid_argument("RCIR needs at least two states");
    }
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(images[static_cast<std::size_t>(i)], images[j]);
    }
    const QsiInstance relabeled = relabel(inst, Permutation::from_one_line(images));
    const bool use_circuit =
        path == CirclePath::Circuit || (path == CirclePath::Auto && circuit_fits(TestKind::Circle, n, inst.dim(), caps));
    const double p = use_circuit ? run_circuit(TestKind::Circle, relabeled, caps).p_equal
                                 : equal_prob_formula(TestKind::Circle, relabeled);
    return rng.bernoulli(p) ? Answer::Yes : Answer::No;
}

namespace {

constexpr std::uint64_t kMaxAlignments = 10'000'000;

std::uint64_t rotate(std::uint64_t mask, int k, int n, std::uint64_t full) {
    if (k == 0) {
        return mask;
    }
    return ((mask << k) | (mask >> (n - k))) & full;
}

}  // namespace

Rational rcir_exact(int n, int r) {
    if (n < 2 || r < 1 || r > n - 1) {
        throw std::invalid_argument("rcir_exact needs 1 <= r <= n - 1");
    }
    if (n > 64) {
        throw CapExceeded("rcir_exact limited to n <= 64");
    }
    const BigInt count = binomial(n, r);
    if (count > kMaxAlignments) {
        throw CapExceeded("rcir_exact needs C(n, r) <= 10^7, got " + count.str());
    }
    std::vector<int> divisors;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) {
            divisors.push_back(d);
        }
    }
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const auto total = count.convert_to<std::uint64_t>();
    std::uint64_t mask = (r == 64) ? full : (std::uint64_t{1} << r) - 1;
    std::uint64_t sum_s = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        // The preserving shifts form a subgroup of Z_n generated by the
        // minimal period, which divides n.
        int period = n;
        for (int d : divisors) {
            if (rotate(mask, d, n, full) == mask) {
                period = d;
                break;
            }
        }
        sum_s += static_cast<std::uint64_t>(n / period);
        if (i + 1 < total) {
            // Gosper's hack: next larger integer with the same popcount.
            std::uint64_t c = mask & (~mask + 1);
            std::uint64_t next = mask + c;
            mask = (((next ^ mask) >> 2) / c) | next;
        }
    }
    return Rational(BigInt(sum_s), BigInt(n) * count);
}

Rational rcir_exact_arrangements(const Partition &partition) {
    const int n = partition.n();
    std::vector<int> labels = partition.labels();
    std::sort(labels.begin(), labels.end());
    BigInt arrangements = factorial(n);
    for (const auto &b : partition.blocks()) {
        arrangements /= factorial(static_cast<int>(b.size()));
    }
    if (arrangements > kMaxAlignments) {
        throw CapExceeded("rcir_exact_arrangements needs at most 10^7 arrangements, got " + arrangements.str());
    }
    std::uint64_t sum_s = 0;
    std::uint64_t seen = 0;
    do {
        sum_s += static_cast<std::uint64_t>(repetition_set(labels).s);
        ++seen;
    } while (std::next_permutation(labels.begin(), labels.end()));
    return Rational(BigInt(sum_s), BigInt(n) * seen);
}

Rational rcir_worst_merge(const Partition &partition) {
    const int n = partition.n();
    if (partition.block_count() == 1) {
        return Rational(1);
    }
    // Achievable |I_1| values via subset sums of block sizes, excluding the
    // empty and full selections.
    std::vector<bool> reachable(static_cast<std::size_t>(n) + 1, false);
    reachable[0] = true;
    for (const auto &b : partition.blocks()) {
        const int size = static_cast<int>(b.size());
        for (int v = n; v >= size; --v) {
            if (reachable[static_cast<std::size_t>(v - size)]) {
                reachable[static_cast<std::size_t>(v)] = true;
            }
        }
    }
    Rational worst = 0;
    for (int r = 1; r <= n / 2; ++r) {
        if (reachable[static_cast<std::size_t>(r)]) {
            worst = std::max(worst, rcir_exact(n, r));
        }
    }
    return worst;
}

Rational rcir_exact(const QsiInstance &inst) {
    const Partition part = require_promise(inst);
    if (part.block_count() == 1) {
        return Rational(1);
    }
    if (part.block_count() == 2) {
        return rcir_exact(part.n(), static_cast<int>(part.blocks().front().size()));
    }
    return rcir_worst_merge(part);
}

namespace {
constexpr double kZ95 = 1.959963984540054;
}

double McEstimate::sigma() const {
    return (ci_hi - ci_lo) / (2.0 * kZ95);
}

bool McEstimate::agrees_with(double p, double k) const {
    return std::abs(p_hat - p) <= k * sigma();
}

McEstimate mc_run(const std::function<bool(Rng &)> &trial, std::uint64_t trials, std::uint64_t base_seed) {
    if (trials == 0) {
        throw std::invalid_argument("Monte Carlo needs at least one trial");
    }
    McEstimate est;
    est.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(base_seed ^ i);
        if (trial(rng)) {
            ++est.successes;
        }
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(est.successes) / n;
    est.p_hat = p;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    est.ci_lo = std::max(0.0, std::min(p, center - half));
    est.ci_hi = std::min(1.0, std::max(p, center + half));
    return est;
}

}  // namespace qsi
