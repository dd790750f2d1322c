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

#include "qsi/sweep.h"

#include <chrono>
#include <functional>
#include <stdexcept>

#include "qsi/bounds.h"
#include "qsi/errors.h"
#include "qsi/identity_tests.h"
#include "qsi/protocols.h"

namespace qsi {

const char *to_string(SweepTarget t) {
    switch (t) {
    case SweepTarget::PermSoundness:
        return "perm-soundness";
    case SweepTarget::RcirVsBound:
        return "rcir-vs-bound";
    case SweepTarget::SrsVsM:
        return "srs-vs-m";
    case SweepTarget::QBounds:
        return "qbounds";
    }
    return "?";
}

SweepTarget parse_sweep_target(const std::string &name) {
    for (SweepTarget t : {SweepTarget::PermSoundness, SweepTarget::RcirVsBound, SweepTarget::SrsVsM,
                          SweepTarget::QBounds}) {
        if (name == to_string(t)) {
            return t;
        }
    }
    throw std::invalid_argument("unknown sweep target '" + name + "'");
}

SweepDefaults sweep_defaults(SweepTarget t) {
    switch (t) {
    case SweepTarget::PermSoundness:
        return {2, 9, 2, kMaxEnumerationDegree};
    case SweepTarget::RcirVsBound:
        return {2, 24, 2, 24};
    case SweepTarget::SrsVsM:
        return {1, 6, 1, kMaxSrsRounds};
    case SweepTarget::QBounds:
        return {4, 40, 4, 40};
    }
    throw std::logic_error("unhandled sweep target");
}

namespace {

QsiInstance two_block_instance(int n, int r) {
    std::vector<int> labels(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < r; ++i) labels[static_cast<std::size_t>(i)] = 0;
    return build_instance(Partition::from_labels(labels), 2);
}

void put_mc(RunRecord &rec, const McEstimate &est) {
    rec.put("mc_trials", est.trials);
    rec.put_real("mc_p_hat", est.p_hat);
    rec.put_real("mc_ci_lo", est.ci_lo);
    rec.put_real("mc_ci_hi", est.ci_hi);
}

void put_mc_blank(RunRecord &rec) {
    for (const char *name : {"mc_trials", "mc_p_hat", "mc_ci_lo", "mc_ci_hi"}) rec.put_blank(name);
}

Rational pow4(int k) {
    BigInt v = 1;
    for (int i = 0; i < k; ++i) v *= 4;
    return Rational(v);
}

class Builder {
  public:
    explicit Builder(const SweepOptions &opts) : opts_(opts) {}

    /// Fills one record; `body` sets params and outputs. Sampled rows get the
    /// per-row seed.
    void add(const std::function<void(RunRecord &, std::uint64_t)> &body, bool sampled) {
        RunRecord rec;
        rec.command = std::string("sweep ") + to_string(opts_.target);
        rec.run_id = std::string(to_string(opts_.target)) + ":" + std::to_string(records_.size());
        const std::uint64_t row_seed = opts_.seed + records_.size();
        const auto start = std::chrono::steady_clock::now();
        body(rec, row_seed);
        if (sampled) {
            rec.seed = row_seed;
        }
        if (opts_.timing) {
            rec.wall_time_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                    .count();
        }
        records_.push_back(std::move(rec));
    }

    std::vector<RunRecord> take() { return std::move(records_); }

  private:
    const SweepOptions &opts_;
    std::vector<RunRecord> records_;
};

void sweep_perm(int lo, int hi, Builder &b) {
    for (int n = lo; n <= hi; ++n) {
        for (int l = 1; l < n; ++l) {
            b.add(
                [&](RunRecord &rec, std::uint64_t) {
                    rec.params["n"] = n;
                    rec.params["l"] = l;
                    std::vector<int> labels(static_cast<std::size_t>(n), 1);
                    for (int i = 0; i < l; ++i) labels[static_cast<std::size_t>(i)] = 0;
                    const Partition part = Partition::from_labels(labels);
                    const Rational ratio = two_block_soundness(n, l).value;
                    const Rational perm = equal_prob_exact(TestKind::Permutation, part);
                    rec.put_rational("ratio", ratio);
                    rec.put_rational("perm_exact", perm);
                    if (n >= 3) {
                        rec.put_rational("alt_exact", equal_prob_exact(TestKind::Alternation, part));
                    } else {
                        rec.put_blank("alt_exact");
                        rec.put_blank("alt_exact_float");
                    }
                    rec.put_rational("one_over_n", Rational(1, n));
                    rec.put("matches", perm == ratio);
                    rec.put("below_one_over_n", ratio <= Rational(1, n));
                },
                false);
        }
    }
}

void sweep_rcir(const SweepOptions &opts, int lo, int hi, Builder &b) {
    for (int n = lo; n <= hi; ++n) {
        for (int r = 1; 2 * r <= n; ++r) {
            b.add(
                [&](RunRecord &rec, std::uint64_t seed) {
                    rec.params["n"] = n;
                    rec.params["r"] = r;
                    const Rational exact = rcir_exact(n, r);
                    const Rational eq2 = eq2_bound(n, r).value;
                    rec.put_rational("rcir_exact", exact);
                    rec.put_rational("eq2_bound", eq2);
                    rec.put_real("basel_companion", basel_companion(n));
                    rec.put_rational("n_rcir", exact * n);
                    rec.put("holds", exact <= eq2);
                    if (opts.trials > 0) {
                        const QsiInstance inst = two_block_instance(n, r);
                        put_mc(rec, mc_run([&](Rng &rng) { return rcir_sample(inst, rng) == Answer::Yes; },
                                           opts.trials, seed));
                    } else {
                        put_mc_blank(rec);
                    }
                },
                opts.trials > 0);
        }
    }
}

void sweep_srs(const SweepOptions &opts, int lo, int hi, Builder &b) {
    struct Shape {
        const char *name;
        std::vector<int> labels;
    };
    const std::vector<Shape> shapes{{"yes", {0, 0, 0}}, {"two-identical", {0, 1, 0}}, {"all-orthogonal", {0, 1, 2}}};
    for (int m = lo; m <= hi; ++m) {
        for (const auto &shape : shapes) {
            b.add(
                [&](RunRecord &rec, std::uint64_t seed) {
                    rec.params["m"] = m;
                    rec.params["shape"] = shape.name;
                    const Partition part = Partition::from_labels(shape.labels);
                    const QsiInstance inst = build_instance(part, part.block_count());
                    const Rational exact = srs_exact(inst, m);
                    const Rational bound = Rational(1, 3) + 1 / pow4(m - 1);
                    rec.put_rational("srs_exact", exact);
                    rec.put_rational("stated_bound", bound);
                    // The bound is a soundness bound; it says nothing about YES instances.
                    if (shape.labels == std::vector<int>{0, 0, 0}) {
                        rec.put_blank("within_bound");
                    } else {
                        rec.put("within_bound", exact <= bound);
                    }
                    if (shape.name == std::string("two-identical")) {
                        const Rational q_m = srs_closed_form(m).q;
                        const Rational q_prev = m == 1 ? Rational(1) : srs_closed_form(m - 1).q;
                        rec.put_rational("closed_form", Rational(2, 3) * q_m + Rational(1, 3) * q_prev);
                    } else {
                        rec.put_blank("closed_form");
                        rec.put_blank("closed_form_float");
                    }
                    if (opts.trials > 0) {
                        put_mc(rec, mc_run([&](Rng &rng) { return srs_sample(inst, m, rng).verdict == Answer::Yes; },
                                           opts.trials, seed));
                    } else {
                        put_mc_blank(rec);
                    }
                },
                opts.trials > 0);
        }
    }
}

void sweep_q(int lo, int hi, Builder &b) {
    for (int n = lo; n <= hi; ++n) {
        for (int r = 1; 2 * r <= n; ++r) {
            for (int s = 2; s <= r; ++s) {
                if (n % s != 0 || r % s != 0) continue;
                b.add(
                    [&](RunRecord &rec, std::uint64_t) {
                        rec.params["n"] = n;
                        rec.params["r"] = r;
                        rec.params["s"] = s;
                        const QBoundCheck c = q_bound_check(n, r, s);
                        rec.put("case", to_string(c.which));
                        rec.put_rational("q", c.q);
                        rec.put_rational("bound", c.bound);
                        rec.put("holds", c.holds);
                    },
                    false);
            }
        }
    }
}

}  // namespace

std::vector<RunRecord> run_sweep(const SweepOptions &opts) {
    const SweepDefaults d = sweep_defaults(opts.target);
    const int lo = opts.lo == 0 ? d.lo : opts.lo;
    const int hi = opts.hi == 0 ? d.hi : opts.hi;
    if (lo > hi) {
        throw std::invalid_argument("sweep range is empty");
    }
    if (lo < d.min || hi > d.max) {
        throw CapExceeded(std::string(to_string(opts.target)) + " accepts the range " + std::to_string(d.min) + ".." +
                          std::to_string(d.max));
    }
    Builder b(opts);
    switch (opts.target) {
    case SweepTarget::PermSoundness:
        sweep_perm(lo, hi, b);
        break;
    case SweepTarget::RcirVsBound:
        sweep_rcir(opts, lo, hi, b);
        break;
    case SweepTarget::SrsVsM:
        sweep_srs(opts, lo, hi, b);
        break;
    case SweepTarget::QBounds:
        sweep_q(lo, hi, b);
        break;
    }
    return b.take();
}

}  // namespace qsi
