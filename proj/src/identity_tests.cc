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

#include "qsi/identity_tests.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qsi/errors.h"

namespace qsi {

const char *to_string(TestKind kind) {
    switch (kind) {
    case TestKind::Swap:
        return "swap";
    case TestKind::Circle:
        return "circle";
    case TestKind::Permutation:
        return "permutation";
    case TestKind::Alternation:
        return "alternation";
    }
    return "?";
}

TestKind parse_test_kind(const std::string &name) {
    if (name == "swap") return TestKind::Swap;
    if (name == "circle") return TestKind::Circle;
    if (name == "permutation") return TestKind::Permutation;
    if (name == "alternation") return TestKind::Alternation;
    throw std::invalid_argument("unknown test kind '" + name + "'");
}

CircuitCaps CircuitCaps::from_environment() {
    CircuitCaps caps;
    if (const char *env = std::getenv("QSI_MAX_AMPS")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) {
            throw std::invalid_argument(std::string("QSI_MAX_AMPS is not a positive integer: ") + env);
        }
        caps.max_amps = static_cast<std::size_t>(v);
    }
    return caps;
}

namespace {

void check_kind_size(TestKind kind, int n) {
    if (kind == TestKind::Swap && n != 2) {
        throw std::invalid_argument("the swap test needs exactly two states");
    }
    if (n < 2) {
        throw std::invalid_argument(std::string(to_string(kind)) + " test needs at least two states");
    }
}

}  // namespace

std::vector<Permutation> control_group(TestKind kind, int n) {
    check_kind_size(kind, n);
    switch (kind) {
    case TestKind::Swap:
        return {Permutation::identity(2), Permutation::transposition(2, 1, 2)};
    case TestKind::Circle: {
        if (n > kMaxFormulaCircleN) {
            throw CapExceeded("circle test limited to n <= " + std::to_string(kMaxFormulaCircleN));
        }
        std::vector<Permutation> out;
        for (int j = 0; j < n; ++j) {
            out.push_back(cycle_power(n, j));
        }
        return out;
    }
    case TestKind::Permutation:
        return enumerate_sym(n);
    case TestKind::Alternation:
        return enumerate_alt(n);
    }
    throw std::logic_error("unreachable");
}

Vector permute_registers(const Vector &amps, std::size_t dim, const Permutation &g) {
    const int n = g.n();
    std::vector<std::size_t> stride(static_cast<std::size_t>(n));
    std::size_t total = 1;
    for (int m = n - 1; m >= 0; --m) {
        stride[static_cast<std::size_t>(m)] = total;
        total *= dim;
    }
    if (static_cast<std::size_t>(amps.size()) != total) {
        throw std::invalid_argument("amplitude vector does not match dim^n");
    }
    // Source stride for each output register: out digit x_m is read from
    // register g(m) of the input.
    std::vector<std::size_t> source_stride(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        source_stride[static_cast<std::size_t>(m)] = stride[static_cast<std::size_t>(g.image0(m))];
    }
    Vector out(amps.size());
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    std::size_t src = 0;
    for (std::size_t x = 0; x < total; ++x) {
        out(static_cast<Eigen::Index>(x)) = amps(static_cast<Eigen::Index>(src));
        // Odometer increment of the output digits, tracking the source index.
        for (int m = n - 1; m >= 0; --m) {
            auto &d = digits[static_cast<std::size_t>(m)];
            if (++d < dim) {
                src += source_stride[static_cast<std::size_t>(m)];
                break;
            }
            src -= (dim - 1) * source_stride[static_cast<std::size_t>(m)];
            d = 0;
        }
    }
    return out;
}

namespace {

std::size_t control_dim_of(TestKind kind, int n) {
    switch (kind) {
    case TestKind::Swap:
        return 2;
    case TestKind::Circle:
        return static_cast<std::size_t>(n);
    case TestKind::Permutation:
        return factorial(n).convert_to<std::size_t>();
    case TestKind::Alternation:
        return factorial(n).convert_to<std::size_t>() / 2;
    }
    throw std::logic_error("unreachable");
}

// control_dim * dim^n, or 0 when it exceeds `limit`.
std::size_t amplitude_count(std::size_t control_dim, int n, std::size_t dim, std::size_t limit) {
    std::size_t amps = control_dim;
    for (int i = 0; i < n; ++i) {
        if (amps > limit / dim) {
            return 0;
        }
        amps *= dim;
    }
    return amps > limit ? 0 : amps;
}

void check_circuit_caps(TestKind kind, int n, std::size_t dim, const CircuitCaps &caps) {
    check_kind_size(kind, n);
    if ((kind == TestKind::Permutation || kind == TestKind::Alternation) && n > caps.max_group_n) {
        throw CapExceeded(std::string(to_string(kind)) + " circuit limited to n <= " +
                          std::to_string(caps.max_group_n));
    }
    if (kind == TestKind::Circle && n > caps.max_circle_n) {
        throw CapExceeded("circle circuit limited to n <= " + std::to_string(caps.max_circle_n));
    }
    if (amplitude_count(control_dim_of(kind, n), n, dim, caps.max_amps) == 0) {
        throw CapExceeded("circuit needs more than " + std::to_string(caps.max_amps) + " amplitudes");
    }
}

}  // namespace

bool circuit_fits(TestKind kind, int n, std::size_t dim, const CircuitCaps &caps) {
    try {
        check_circuit_caps(kind, n, dim, caps);
    } catch (const CapExceeded &) {
        return false;
    }
    return true;
}

JointState apply_controlled(const JointState &s, std::span<const Permutation> group) {
    if (group.size() != s.control_dim()) {
        throw std::invalid_argument("one permutation per control value is required");
    }
    const auto &dims = s.factor_dims();
    const std::size_t dim = dims.size() > 1 ? dims[1] : 1;
    for (std::size_t i = 1; i < dims.size(); ++i) {
        if (dims[i] != dim) {
            throw std::invalid_argument("controlled permutation needs equal register dimensions");
        }
    }
    const auto block = static_cast<Eigen::Index>(s.content_dim());
    Vector out(s.amps().size());
    for (std::size_t c = 0; c < group.size(); ++c) {
        if (group[c].n() != static_cast<int>(dims.size()) - 1) {
            throw std::invalid_argument("permutation degree differs from the register count");
        }
        out.segment(static_cast<Eigen::Index>(c) * block, block) =
            permute_registers(s.content_block(c), dim, group[c]);
    }
    return JointState::from_amplitudes(dims, std::move(out));
}

TestResult run_circuit(TestKind kind, const QsiInstance &inst, const CircuitCaps &caps) {
    const int n = inst.n();
    const std::size_t dim = inst.dim();
    check_circuit_caps(kind, n, dim, caps);

    const std::vector<Permutation> group = control_group(kind, n);
    const Matrix fourier = dft(group.size());

    JointState state = JointState::with_control(group.size(), inst.states());
    state = state.apply_to_control(fourier);
    state = apply_controlled(state, group);
    state = state.apply_to_control(fourier.adjoint());

    TestResult result;
    for (const auto &branch : measure_first_register(state)) {
        result.outcome_distribution.emplace_back(branch.outcome, branch.probability);
    }
    Vector equal_block = state.content_block(0);
    result.p_equal = equal_block.squaredNorm();
    if (result.p_equal >= 1e-14) {
        std::vector<std::size_t> content_dims(static_cast<std::size_t>(n), dim);
        result.post_equal =
            JointState::from_amplitudes(std::move(content_dims), equal_block / std::sqrt(result.p_equal));
    }
    return result;
}

double equal_prob_formula(TestKind kind, const Matrix &gram) {
    const int n = static_cast<int>(gram.rows());
    check_kind_size(kind, n);
    if (gram.cols() != gram.rows()) {
        throw std::invalid_argument("Gram matrix must be square");
    }
    if ((kind == TestKind::Permutation || kind == TestKind::Alternation) && n > kMaxFormulaGroupN) {
        throw CapExceeded(std::string(to_string(kind)) + " formula limited to n <= " +
                          std::to_string(kMaxFormulaGroupN));
    }
    if (kind == TestKind::Circle && n > kMaxFormulaCircleN) {
        throw CapExceeded("circle formula limited to n <= " + std::to_string(kMaxFormulaCircleN));
    }
    Complex sum = 0.0;
    std::size_t order = 0;
    auto add_term = [&](const Permutation &g) {
        Complex term = 1.0;
        for (int m = 0; m < n; ++m) {
            term *= gram(m, g.image0(m));
        }
        sum += term;
        ++order;
    };
    switch (kind) {
    case TestKind::Swap:
    case TestKind::Circle:
        for (const auto &g : control_group(kind, n)) {
            add_term(g);
        }
        break;
    case TestKind::Permutation:
        for_each_sym(n, add_term);
        break;
    case TestKind::Alternation:
        for_each_sym(n, [&](const Permutation &g) {
            if (sign(g) == 1) {
                add_term(g);
            }
        });
        break;
    }
    Complex p = sum / static_cast<double>(order);
    if (std::abs(p.imag()) > 1e-10) {
        throw std::logic_error("EQUAL probability has an imaginary part " + std::to_string(p.imag()));
    }
    return p.real();
}

double equal_prob_formula(TestKind kind, const QsiInstance &inst) {
    return equal_prob_formula(kind, inst.gram());
}

Rational equal_prob_exact(TestKind kind, const Partition &partition) {
    const int n = partition.n();
    check_kind_size(kind, n);
    switch (kind) {
    case TestKind::Swap:
        return partition.block_count() == 1 ? Rational(1) : Rational(1, 2);
    case TestKind::Circle: {
        if (n > kMaxFormulaCircleN) {
            throw CapExceeded("circle formula limited to n <= " + std::to_string(kMaxFormulaCircleN));
        }
        return Rational(repetition_set(partition.labels()).s, n);
    }
    case TestKind::Permutation:
        return Rational(stabilizer_count(partition, GroupKind::Sym), factorial(n));
    case TestKind::Alternation:
        return Rational(stabilizer_count(partition, GroupKind::Alt), factorial(n) / 2);
    }
    throw std::logic_error("unreachable");
}

RepetitionSet repetition_set(std::span<const int> labels) {
    const int n = static_cast<int>(labels.size());
    if (n < 1) {
        throw std::invalid_argument("repetition set of an empty cycle");
    }
    RepetitionSet rs;
    for (int shift = 0; shift < n; ++shift) {
        bool preserved = true;
        for (int m = 0; m < n && preserved; ++m) {
            preserved = labels[static_cast<std::size_t>(m)] == labels[static_cast<std::size_t>((m + shift) % n)];
        }
        if (preserved) {
            rs.shifts.push_back(shift);
        }
    }
    rs.s = static_cast<int>(rs.shifts.size());
    rs.k = n / rs.s;
    return rs;
}

RepetitionSet repetition_set(const Alignment &a) {
    std::vector<int> labels(static_cast<std::size_t>(a.n), 0);
    for (int m : a.members) {
        labels[static_cast<std::size_t>(m - 1)] = 1;
    }
    return repetition_set(labels);
}

}  // namespace qsi
