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

#include "qsi/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "qsi/bounds.h"
#include "qsi/identity_tests.h"
#include "qsi/protocols.h"
#include "qsi/sweep.h"

namespace qsi {

namespace {

template <typename... Args>
std::string cat(const Args &...args) {
    std::ostringstream out;
    out.precision(12);
    (out << ... << args);
    return out.str();
}

QsiInstance from_labels(const std::vector<int> &labels, std::size_t dim = 0) {
    Partition part = Partition::from_labels(labels);
    return build_instance(part, dim == 0 ? part.block_count() : dim);
}

std::vector<int> two_block_labels(int n, int l) {
    std::vector<int> labels(static_cast<std::size_t>(n), 1);
    std::fill(labels.begin(), labels.begin() + l, 0);
    return labels;
}

Rational pow4(int k) {
    BigInt v = 1;
    for (int i = 0; i < k; ++i) v *= 4;
    return Rational(v);
}

PureState random_state(std::size_t dim, Rng &rng) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.normal(), rng.normal());
    return PureState::normalized(std::move(v));
}

void for_each_set_partition(int n, const std::function<void(const std::vector<int> &)> &fn) {
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int max_label) {
        if (pos == n) {
            fn(labels);
            return;
        }
        for (int v = 0; v <= max_label + 1; ++v) {
            labels[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, std::max(max_label, v));
        }
    };
    rec(1, 0);
}

void criterion_1(CriterionResult &r) {
    const PureState z = PureState::basis(2, 0), o = PureState::basis(2, 1);
    const double yes = run_circuit(TestKind::Swap, QsiInstance::unstructured({z, z})).p_equal;
    const double ortho = run_circuit(TestKind::Swap, QsiInstance::unstructured({z, o})).p_equal;
    const QsiInstance rotated = build_instance(Partition::from_labels(std::vector<int>{0, 1}), 2, std::uint64_t{1});
    const double ortho_rot = run_circuit(TestKind::Swap, rotated).p_equal;
    r.passed = std::abs(yes - 1.0) <= 1e-12 && std::abs(ortho - 0.5) <= 1e-12 && std::abs(ortho_rot - 0.5) <= 1e-12;
    r.details.push_back(cat("p_equal(|0>,|0>) = ", yes));
    r.details.push_back(cat("p_equal(|0>,|1>) = ", ortho, ", rotated orthogonal pair ", ortho_rot));
}

void criterion_2(CriterionResult &r) {
    Rng rng(20260101);
    const int count = 240;
    double worst = 0.0;
    int done = 0;
    for (int i = 0; i < count; ++i) {
        const auto kind = static_cast<TestKind>(i % 4);
        const int variant = (i / 4) % 3;  // structured, rotated, unstructured
        int n = 2;
        if (kind == TestKind::Circle) n = 2 + static_cast<int>(rng.below(6));
        if (kind == TestKind::Permutation || kind == TestKind::Alternation) n = 2 + static_cast<int>(rng.below(4));
        QsiInstance inst = QsiInstance::unstructured({PureState::basis(1, 0)});
        if (variant == 2) {
            const std::size_t dim = 2 + rng.below(2);
            std::vector<PureState> states;
            for (int j = 0; j < n; ++j) states.push_back(random_state(dim, rng));
            inst = QsiInstance::unstructured(std::move(states));
        } else {
            std::vector<int> labels(static_cast<std::size_t>(n));
            std::vector<int> seen;
            for (auto &x : labels) {
                // Relabel by first appearance so block ids are 0, 1, ... without gaps.
                const int raw = static_cast<int>(rng.below(3));
                auto it = std::find(seen.begin(), seen.end(), raw);
                if (it == seen.end()) {
                    seen.push_back(raw);
                    it = seen.end() - 1;
                }
                x = static_cast<int>(it - seen.begin());
            }
            const Partition part = Partition::from_labels(labels);
            const std::size_t dim = std::max<std::size_t>(part.block_count(), 2);
            inst = variant == 0 ? build_instance(part, dim) : build_instance(part, dim, rng.next_u64());
        }
        if (!circuit_fits(kind, inst.n(), inst.dim())) {
            throw std::logic_error("criterion 2 generated an instance past the circuit caps");
        }
        worst = std::max(worst, std::abs(run_circuit(kind, inst).p_equal - equal_prob_formula(kind, inst)));
        ++done;
    }
    r.passed = done >= 200 && worst <= 1e-9;
    r.details.push_back(cat(done, " instances (structured, rotated, unstructured; all four kinds)"));
    r.details.push_back(cat("max |circuit - formula| = ", worst));
}

void criterion_3(CriterionResult &r) {
    bool ok = true;
    int checked = 0;
    for (int n = 2; n <= 9; ++n) {
        for (int l = 1; l < n; ++l) {
            const Partition part = Partition::from_labels(two_block_labels(n, l));
            const Rational expected(factorial(l) * factorial(n - l), factorial(n));
            ok = ok && equal_prob_exact(TestKind::Permutation, part) == expected;
            // A_2 is trivial, so the alternation identity starts at n = 3.
            if (n >= 3) ok = ok && equal_prob_exact(TestKind::Alternation, part) == expected;
            ++checked;
        }
    }
    const Partition p32 = Partition::from_labels(two_block_labels(3, 2));
    const Rational perm32 = equal_prob_exact(TestKind::Permutation, p32);
    const Rational alt32 = equal_prob_exact(TestKind::Alternation, p32);
    const double formula32 = equal_prob_formula(TestKind::Permutation, build_instance(p32, 2));
    ok = ok && perm32 == Rational(1, 3) && alt32 == Rational(1, 3) && std::abs(formula32 - 1.0 / 3.0) <= 1e-12;
    r.passed = ok;
    r.details.push_back(cat(checked, " (n, l) pairs, Permutation n = 2..9, Alternation n = 3..9, exact rationals"));
    r.details.push_back(cat("(n, l) = (3, 2): Permutation ", to_string(perm32), ", Alternation ", to_string(alt32)));
}

void criterion_4(CriterionResult &r) {
    bool exact_ok = true;
    for (int n = 2; n <= 8; ++n) {
        std::vector<int> labels(static_cast<std::size_t>(n), 1);
        labels[0] = 0;
        const Partition part = Partition::from_labels(labels);
        exact_ok = exact_ok && ps_lower_bound_exact(part) == Rational(1, n) &&
                   std::abs(ps_lower_bound(build_instance(part, 2)) - 1.0 / n) <= 1e-12;
    }
    double worst_gap = 1.0;
    int tested = 0;
    auto check = [&](const QsiInstance &inst) {
        const double witness = ps_lower_bound(inst);
        for (TestKind kind : {TestKind::Swap, TestKind::Circle, TestKind::Permutation, TestKind::Alternation}) {
            if (kind == TestKind::Swap && inst.n() != 2) continue;
            worst_gap = std::min(worst_gap, equal_prob_formula(kind, inst) - witness);
            ++tested;
        }
    };
    for (int n = 2; n <= 6; ++n) {
        for_each_set_partition(n, [&](const std::vector<int> &labels) {
            const Partition part = Partition::from_labels(labels);
            check(build_instance(part, part.block_count()));
            check(build_instance(part, part.block_count() + 1, std::uint64_t(labels.size() * 1000 + part.block_count())));
        });
    }
    for (int n = 7; n <= 8; ++n) {
        std::vector<int> labels(static_cast<std::size_t>(n), 1);
        labels[0] = 0;
        check(from_labels(labels));
    }
    r.passed = exact_ok && worst_gap >= -1e-9;
    r.details.push_back(cat("worst-case NO instance: ps_lower_bound = 1/n exactly for n = 2..8: ",
                            exact_ok ? "yes" : "no"));
    r.details.push_back(cat(tested, " (instance, test) pairs; min(p_equal - witness) = ", worst_gap));
}

void criterion_5(CriterionResult &r) {
    const QsiInstance a = from_labels({0, 0, 0, 1});
    const QsiInstance b = from_labels({0, 1, 0, 1});
    const Rational ea = equal_prob_exact(TestKind::Circle, *a.partition());
    const Rational eb = equal_prob_exact(TestKind::Circle, *b.partition());
    const double ca = run_circuit(TestKind::Circle, a).p_equal;
    const double cb = run_circuit(TestKind::Circle, b).p_equal;
    r.passed = ea == Rational(1, 4) && eb == Rational(1, 2) && std::abs(ca - 0.25) <= 1e-12 &&
               std::abs(cb - 0.5) <= 1e-12;
    r.details.push_back(cat("(psi, psi, psi, perp): exact ", to_string(ea), ", circuit ", ca));
    r.details.push_back(cat("(psi, perp, psi, perp): exact ", to_string(eb), ", circuit ", cb));
}

void criterion_6(CriterionResult &r) {
    bool ok = true;
    long long alignments = 0;
    for (int n : {2, 3, 5, 7, 11, 13}) {
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
            std::vector<int> labels(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = (mask >> i) & 1;
            ok = ok && equal_prob_exact(TestKind::Circle, Partition::from_labels(labels)) == Rational(1, n);
            ++alignments;
        }
        for (int rr = 1; rr < n; ++rr) ok = ok && rcir_exact(n, rr) == Rational(1, n);
    }
    r.passed = ok;
    r.details.push_back(cat(alignments, " two-block alignments over n in {2, 3, 5, 7, 11, 13}; all give s/n = 1/n"));
}

void criterion_7(CriterionResult &r) {
    bool closed = srs_closed_form(1).p == Rational(1, 2) && srs_closed_form(2).p == Rational(3, 4) &&
                  srs_closed_form(1).a == 0 && srs_closed_form(2).a == 1;
    Rational product = 1;
    for (int k = 1; k <= 6; ++k) {
        const SrsClosedForm c = srs_closed_form(k);
        product *= c.p;
        closed = closed && c.q == Rational(1, 3) + Rational(2, 3) / pow4(k) && c.q == product;
    }

    const QsiInstance yes = from_labels({0, 0, 0});
    const QsiInstance two = from_labels({0, 1, 0});
    const QsiInstance ortho = from_labels({0, 1, 2});

    bool evaluator = true;
    const auto trace = srs_trace(two, 6, {1, 2});
    for (int k = 1; k <= 6; ++k) {
        evaluator = evaluator && trace[static_cast<std::size_t>(k - 1)].p_pass == srs_closed_form(k).p;
    }
    bool bound = true;
    for (int m = 1; m <= 6; ++m) {
        const Rational q_prev = m == 1 ? Rational(1) : srs_closed_form(m - 1).q;
        const Rational two_m = srs_exact(two, m);
        evaluator = evaluator && two_m == Rational(2, 3) * srs_closed_form(m).q + Rational(1, 3) * q_prev;
        evaluator = evaluator && srs_exact(two, m, SrsPolicy::KeepSecond) == two_m;
        evaluator = evaluator && srs_exact(yes, m) == 1;
        const Rational stated = Rational(1, 3) + 1 / pow4(m - 1);
        bound = bound && two_m <= stated && srs_exact(ortho, m) <= stated;
        r.details.push_back(cat("m = ", m, ": two-identical ", to_string(two_m), " = 1/3 + 1/(3*4^", m - 1,
                                ") <= ", to_string(stated), "; all-orthogonal ", to_string(srs_exact(ortho, m))));
    }

    bool mc = true;
    double worst_z = 0.0;
    for (const QsiInstance *inst : {&two, &ortho}) {
        for (int m = 1; m <= 4; ++m) {
            const McEstimate est = mc_run([&](Rng &rng) { return srs_sample(*inst, m, rng).verdict == Answer::Yes; },
                                          100000, 7000 + static_cast<std::uint64_t>(m));
            const double exact = to_double(srs_exact(*inst, m));
            mc = mc && est.agrees_with(exact, 5.0);
            worst_z = std::max(worst_z, std::abs(est.p_hat - exact) / est.sigma());
        }
    }
    r.passed = closed && evaluator && bound && mc;
    r.details.push_back(cat("closed forms p_1, p_2, a_1, a_2, q_k: ", closed ? "ok" : "mismatch",
                            "; branching evaluator vs closed forms k <= 6: ", evaluator ? "ok" : "mismatch"));
    r.details.push_back(cat("Monte Carlo 10^5 trials, m = 1..4, two shapes: worst deviation ", worst_z, " sigma"));
}

void criterion_8(CriterionResult &r) {
    bool rcir_ok = true;
    for (int n = 2; n <= 24; ++n) {
        Rational best_rcir = 0, best_eq2 = 0;
        for (int rr = 1; 2 * rr <= n; ++rr) {
            const Rational exact = rcir_exact(n, rr);
            const Rational eq2 = eq2_bound(n, rr).value;
            rcir_ok = rcir_ok && exact <= eq2;
            best_rcir = std::max(best_rcir, Rational(exact * n));
            best_eq2 = std::max(best_eq2, Rational(eq2 * n));
        }
        rcir_ok = rcir_ok && best_rcir <= best_eq2;
        r.details.push_back(cat("n = ", n, ": max_r n*rcir = ", to_double(best_rcir), ", max_r n*eq2 = ",
                                to_double(best_eq2)));
    }
    bool q_ok = true;
    int q_cases = 0;
    for (int n = 4; n <= 40; ++n) {
        for (int rr = 1; 2 * rr <= n; ++rr) {
            for (int s = 2; s <= rr; ++s) {
                if (n % s != 0 || rr % s != 0) continue;
                const QBoundCheck c = q_bound_check(n, rr, s);
                if (c.which == QCase::Uncovered) continue;
                q_ok = q_ok && c.holds;
                ++q_cases;
            }
        }
    }
    const BaselCheck basel = basel_tail_check(100000);
    r.passed = rcir_ok && q_ok && basel.holds;
    r.details.push_back(cat("rcir_exact <= eq2_bound for 2 <= n <= 24: ", rcir_ok ? "yes" : "no"));
    r.details.push_back(cat(q_cases, " q(n, r, s) case inequalities for 4 <= n <= 40: ", q_ok ? "all hold" : "violated"));
    r.details.push_back(cat("sum_{s=2..", basel.terms, "} 1/s^2 + tail midpoint vs pi^2/6 - 1: error ", basel.error));
}

void criterion_9(CriterionResult &r) {
    const TwoSidedReport rep = two_sided_gap_check();
    r.passed = rep.trace_distance_ok && rep.equality_ok;
    r.details.push_back(cat("trace_distance(rho_y, rho_n) = ", rep.trace_distance));
    r.details.push_back(cat("swap test (p_c, p_s) = (", rep.swap_completeness_error, ", ", rep.swap_soundness_error, ")"));
}

struct CriterionDef {
    int id;
    const char *title;
    double limit;
    void (*fn)(CriterionResult &);
};

const CriterionDef kCriteria[] = {
    {1, "swap test circuit: identical pair 1, orthogonal pair 1/2", 1.0, criterion_1},
    {2, "circuit and Gram formula agree on randomized instances", 120.0, criterion_2},
    {3, "two-block Permutation/Alternation soundness is l!(n-l)!/n!", 60.0, criterion_3},
    {4, "symmetric-subspace witness is 1/n and is dominated by every test", 60.0, criterion_4},
    {5, "circle test n = 4 dichotomy 1/4 vs 1/2", 1.0, criterion_5},
    {6, "prime-n circle test soundness is exactly 1/n", 60.0, criterion_6},
    {7, "SRS closed forms, exact evaluator, stated bound, Monte Carlo", 300.0, criterion_7},
    {8, "RCIR exact soundness under the divisor-sum bound", 300.0, criterion_8},
    {9, "two-sided error: trace distance 1/2 and swap test equality", 1.0, criterion_9},
};

template <typename Fn>
CriterionResult timed(int id, const char *title, double limit, Fn &&fn) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    r.time_limit_seconds = limit;
    const auto start = std::chrono::steady_clock::now();
    try {
        fn(r);
    } catch (const std::exception &e) {
        r.passed = false;
        r.details.push_back(cat("exception: ", e.what()));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > limit) {
        r.passed = false;
        r.details.push_back(cat("over the time limit of ", limit, " s"));
    }
    return r;
}

}  // namespace

std::vector<CriterionResult> run_criteria_1_to_9(const std::function<void(const CriterionResult &)> &on_result) {
    std::vector<CriterionResult> results;
    for (const CriterionDef &def : kCriteria) {
        results.push_back(timed(def.id, def.title, def.limit, def.fn));
        if (on_result) on_result(results.back());
    }
    return results;
}

CriterionResult run_criterion_10(const std::vector<CriterionResult> &earlier) {
    return timed(10, "reproducibility: criteria 1-9 pass and seeded sweeps rerun byte-identically", 600.0,
                 [&](CriterionResult &r) {
                     const bool all_earlier =
                         earlier.size() == 9 &&
                         std::all_of(earlier.begin(), earlier.end(), [](const CriterionResult &c) { return c.passed; });
                     bool identical = true;
                     for (SweepTarget t : {SweepTarget::PermSoundness, SweepTarget::RcirVsBound, SweepTarget::SrsVsM,
                                           SweepTarget::QBounds}) {
                         SweepOptions opts;
                         opts.target = t;
                         opts.seed = 12345;
                         if (t == SweepTarget::RcirVsBound) {
                             opts.hi = 8;
                             opts.trials = 500;
                         }
                         if (t == SweepTarget::SrsVsM) {
                             opts.hi = 4;
                             opts.trials = 500;
                         }
                         auto serialize = [&] {
                             const auto records = run_sweep(opts);
                             OrderedJson sidecar = OrderedJson::array();
                             for (const auto &rec : records) sidecar.push_back(rec.to_json());
                             return CsvTable::from_records(records).str() + sidecar.dump(2);
                         };
                         const std::string first = serialize();
                         const bool same = first == serialize();
                         identical = identical && same;
                         r.details.push_back(cat(to_string(t), ": ", first.size(), " bytes, rerun ",
                                                 same ? "identical" : "DIFFERENT"));
                     }
                     r.passed = all_earlier && identical;
                     r.details.insert(r.details.begin(),
                                      cat("criteria 1-9 all pass: ", all_earlier ? "yes" : "no"));
                 });
}

void print_result(std::ostream &out, const CriterionResult &r, bool verbose) {
    std::ostringstream secs;
    secs.setf(std::ios::fixed);
    secs.precision(2);
    secs << r.seconds;
    out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.title << " (" << secs.str()
        << " s)\n";
    if (verbose || !r.passed) {
        for (const auto &d : r.details) out << "       " << d << '\n';
    }
}

}  // namespace qsi
