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

// qsi: command-line front end for the identity tests, protocols and bounds.
//
// Exit codes: 0 ok, 2 input error, 3 cap exceeded, 4 I/O error, 1 failed
// self-test or internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsi/acceptance.h"
#include "qsi/bounds.h"
#include "qsi/errors.h"
#include "qsi/identity_tests.h"
#include "qsi/instances.h"
#include "qsi/protocols.h"
#include "qsi/records.h"
#include "qsi/sweep.h"

using namespace qsi;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitIo = 4;

struct OutputFlags {
    std::string out;
    bool json = false;
    bool timing = false;
};

void add_output_flags(CLI::App *cmd, OutputFlags &f) {
    cmd->add_option("--out", f.out, "Write CSV here instead of stdout");
    cmd->add_flag("--json", f.json, "Emit JSON run records instead of CSV");
    cmd->add_flag("--timing", f.timing, "Fill the wall_time_ms column");
}

void emit(const std::vector<RunRecord> &records, const OutputFlags &f) {
    std::string text;
    if (f.json) {
        OrderedJson arr = OrderedJson::array();
        for (const auto &r : records) arr.push_back(r.to_json());
        text = (records.size() == 1 ? arr[0] : arr).dump(2) + "\n";
    } else {
        text = CsvTable::from_records(records).str();
    }
    if (f.out.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
    } else {
        write_file(f.out, text);
    }
}

QsiInstance load_instance(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read instance file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

using Clock = std::chrono::steady_clock;

void finish_timing(RunRecord &rec, Clock::time_point start, bool timing) {
    if (timing) {
        rec.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &seed) { return seed ? *seed : entropy_seed(); }

// ---- test ----------------------------------------------------------------

struct TestArgs {
    std::string kind;
    std::string instance;
    bool circuit = false;
    bool formula = false;
    bool both = false;
    OutputFlags out;
};

void cmd_test(const TestArgs &a) {
    const auto start = Clock::now();
    const TestKind kind = parse_test_kind(a.kind);
    const QsiInstance inst = load_instance(a.instance);
    const CircuitCaps caps = CircuitCaps::from_environment();

    bool use_circuit = a.circuit || a.both;
    bool use_formula = a.formula || a.both;
    if (!use_circuit && !use_formula) {
        // Default: the circuit when it fits, the formula otherwise.
        use_circuit = circuit_fits(kind, inst.n(), inst.dim(), caps);
        use_formula = !use_circuit;
    }

    RunRecord rec;
    rec.command = "test";
    rec.run_id = "test:0";
    rec.params["kind"] = to_string(kind);
    rec.params["instance"] = a.instance;
    rec.params["n"] = inst.n();
    rec.params["dim"] = inst.dim();
    rec.params["path"] = a.both ? "both" : (use_circuit ? "circuit" : "formula");

    std::optional<double> pc, pf;
    if (use_circuit) pc = run_circuit(kind, inst, caps).p_equal;
    if (use_formula) pf = equal_prob_formula(kind, inst);
    pc ? rec.put_real("p_equal_circuit", *pc) : rec.put_blank("p_equal_circuit");
    pf ? rec.put_real("p_equal_formula", *pf) : rec.put_blank("p_equal_formula");
    (pc && pf) ? rec.put_real("abs_diff", std::abs(*pc - *pf)) : rec.put_blank("abs_diff");
    if (inst.partition()) {
        rec.put_rational("p_equal_exact", equal_prob_exact(kind, *inst.partition()));
    } else {
        rec.put_blank("p_equal_exact");
        rec.put_blank("p_equal_exact_float");
    }
    finish_timing(rec, start, a.out.timing);
    emit({rec}, a.out);
}

// ---- protocol ------------------------------------------------------------

struct ProtocolArgs {
    std::string which;
    std::string instance;
    int n = 0;
    int r = 0;
    int m = 2;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    bool exact = false;
    std::string policy = "uniform";
    OutputFlags out;
};

void cmd_protocol(const ProtocolArgs &a) {
    const auto start = Clock::now();
    if (a.which != "srs" && a.which != "rcir") {
        throw std::invalid_argument("protocol must be srs or rcir");
    }
    if (!a.exact && a.trials == 0) {
        throw std::invalid_argument("give --exact or --trials N");
    }
    const bool from_file = !a.instance.empty();
    if (from_file == (a.n > 0)) {
        throw std::invalid_argument("give exactly one of --instance or --n/--r");
    }
    std::optional<QsiInstance> inst;
    RunRecord rec;
    rec.command = "protocol " + a.which;
    rec.run_id = a.which + ":0";
    if (from_file) {
        inst = load_instance(a.instance);
        rec.params["instance"] = a.instance;
    } else {
        if (a.which == "srs") {
            throw std::invalid_argument("srs needs --instance");
        }
        if (a.r < 1 || a.r >= a.n) {
            throw std::invalid_argument("--r must satisfy 1 <= r <= n - 1");
        }
        rec.params["n"] = a.n;
        rec.params["r"] = a.r;
    }
    const CircuitCaps caps = CircuitCaps::from_environment();
    auto build_two_block = [&] {
        std::vector<int> labels(static_cast<std::size_t>(a.n), 1);
        for (int i = 0; i < a.r; ++i) labels[static_cast<std::size_t>(i)] = 0;
        return build_instance(Partition::from_labels(labels), 2);
    };

    const SrsPolicy policy = [&] {
        if (a.policy == "uniform") return SrsPolicy::Uniform;
        if (a.policy == "keep-second") return SrsPolicy::KeepSecond;
        throw std::invalid_argument("--policy must be uniform or keep-second");
    }();
    if (a.which == "srs") {
        rec.params["m"] = a.m;
        rec.params["policy"] = a.policy;
    }

    if (a.exact) {
        Rational p;
        if (a.which == "srs") {
            p = srs_exact(*inst, a.m, policy);
        } else {
            p = from_file ? rcir_exact(*inst) : rcir_exact(a.n, a.r);
        }
        rec.put_rational("p_yes_exact", p);
    } else {
        rec.put_blank("p_yes_exact");
        rec.put_blank("p_yes_exact_float");
    }
    if (a.trials > 0) {
        const std::uint64_t seed = resolve_seed(a.seed);
        rec.seed = seed;
        if (!inst) inst = build_two_block();
        const QsiInstance &ref = *inst;
        std::function<bool(Rng &)> trial;
        if (a.which == "srs") {
            trial = [&](Rng &rng) { return srs_sample(ref, a.m, rng).verdict == Answer::Yes; };
        } else {
            trial = [&](Rng &rng) { return rcir_sample(ref, rng, CirclePath::Auto, caps) == Answer::Yes; };
        }
        const McEstimate est = mc_run(trial, a.trials, seed);
        rec.put("trials", est.trials);
        rec.put("successes", est.successes);
        rec.put_real("p_hat", est.p_hat);
        rec.put_real("ci_lo", est.ci_lo);
        rec.put_real("ci_hi", est.ci_hi);
        rec.put_real("sigma", est.sigma());
    }
    finish_timing(rec, start, a.out.timing);
    emit({rec}, a.out);
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
    std::string target;
    int lo = 0;
    int hi = 0;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    OutputFlags out;
};

void cmd_sweep(const SweepArgs &a) {
    SweepOptions opts;
    opts.target = parse_sweep_target(a.target);
    opts.lo = a.lo;
    opts.hi = a.hi;
    opts.trials = a.trials;
    opts.seed = resolve_seed(a.seed);
    opts.timing = a.out.timing;
    const std::vector<RunRecord> records = run_sweep(opts);
    if (a.out.json || a.out.out.empty()) {
        emit(records, a.out);
        return;
    }
    write_file(a.out.out, CsvTable::from_records(records).str());
    OrderedJson sidecar = OrderedJson::array();
    for (const auto &r : records) sidecar.push_back(r.to_json());
    write_file(a.out.out + ".json", sidecar.dump(2) + "\n");
}

// ---- bounds --------------------------------------------------------------

struct BoundsArgs {
    std::string what;
    int n = 0;
    int l = 0;
    int r = 0;
    int s = 0;
    int dim = 0;
    long long terms = 100000;
    std::string instance;
    OutputFlags out;
};

void cmd_bounds(const BoundsArgs &a) {
    const auto start = Clock::now();
    RunRecord rec;
    rec.command = "bounds " + a.what;
    rec.run_id = a.what + ":0";
    if (a.what == "two-block") {
        rec.params["n"] = a.n;
        rec.params["l"] = a.l;
        rec.put_rational("soundness", two_block_soundness(a.n, a.l).value);
    } else if (a.what == "q") {
        rec.params["n"] = a.n;
        rec.params["r"] = a.r;
        rec.params["s"] = a.s;
        const QBoundCheck c = q_bound_check(a.n, a.r, a.s);
        rec.put("case", to_string(c.which));
        rec.put_rational("q", c.q);
        rec.put_rational("bound", c.bound);
        rec.put("holds", c.holds);
    } else if (a.what == "eq2") {
        rec.params["n"] = a.n;
        rec.params["r"] = a.r;
        rec.put_rational("eq2_bound", eq2_bound(a.n, a.r).value);
        rec.put_real("basel_asymptote", basel_asymptote(a.n));
        rec.put_real("basel_companion", basel_companion(a.n));
    } else if (a.what == "basel") {
        rec.params["terms"] = a.terms;
        const BaselCheck c = basel_tail_check(a.terms);
        rec.put_real("partial", c.partial);
        rec.put_real("tail_lo", c.tail_lo);
        rec.put_real("tail_hi", c.tail_hi);
        rec.put_real("target", c.target);
        rec.put_real("error", c.error);
        rec.put("holds", c.holds);
    } else if (a.what == "projector") {
        rec.params["dim"] = a.dim;
        rec.params["n"] = a.n;
        if (a.dim < 1) throw std::invalid_argument("--dim must be positive");
        const Eigen::MatrixXd p = symmetric_projector(static_cast<std::size_t>(a.dim), a.n);
        rec.put_real("trace", p.trace());
        rec.put_rational("expected_trace", Rational(binomial(a.dim + a.n - 1, a.n)));
        rec.put_real("idempotency_error", (p * p - p).cwiseAbs().maxCoeff());
    } else if (a.what == "ps") {
        rec.params["instance"] = a.instance;
        const QsiInstance inst = load_instance(a.instance);
        rec.put_real("ps_lower_bound", ps_lower_bound(inst));
        if (inst.partition()) {
            rec.put_rational("ps_lower_bound_exact", ps_lower_bound_exact(*inst.partition()));
        }
    } else if (a.what == "gap") {
        const TwoSidedReport t = two_sided_gap_check();
        rec.put_real("trace_distance", t.trace_distance);
        rec.put_real("p_c", t.swap_completeness_error);
        rec.put_real("p_s", t.swap_soundness_error);
        rec.put("trace_distance_ok", t.trace_distance_ok);
        rec.put("equality_ok", t.equality_ok);
    } else {
        throw std::invalid_argument("unknown bound '" + a.what + "'");
    }
    finish_timing(rec, start, a.out.timing);
    emit({rec}, a.out);
}

// ---- selftest ------------------------------------------------------------

int cmd_selftest(bool verbose) {
    const auto results = run_criteria_1_to_9([&](const CriterionResult &r) {
        print_result(std::cout, r, verbose);
        std::cout.flush();
    });
    bool ok = true;
    for (const auto &r : results) ok = ok && r.passed;
    std::cout << (ok ? "selftest: all criteria passed\n" : "selftest: FAILED\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum state identity tests, protocols and bounds"};
    app.require_subcommand(1);

    TestArgs test_args;
    auto *test = app.add_subcommand("test", "Run one identity test on an instance");
    test->add_option("--kind", test_args.kind, "swap, circle, permutation or alternation")->required();
    test->add_option("--instance", test_args.instance, "Instance JSON file")->required();
    auto *c1 = test->add_flag("--circuit", test_args.circuit, "Dense circuit simulation");
    auto *c2 = test->add_flag("--formula", test_args.formula, "Gram-matrix formula");
    auto *c3 = test->add_flag("--both", test_args.both, "Both paths and their difference");
    c1->excludes(c2)->excludes(c3);
    c2->excludes(c3);
    add_output_flags(test, test_args.out);

    ProtocolArgs proto_args;
    auto *proto = app.add_subcommand("protocol", "Run SRS or RCIR, exactly or by sampling");
    proto->add_option("which", proto_args.which, "srs or rcir")->required();
    proto->add_option("--instance", proto_args.instance, "Instance JSON file");
    proto->add_option("--n", proto_args.n, "RCIR two-block instance size");
    proto->add_option("--r", proto_args.r, "RCIR first-block size");
    proto->add_option("--m", proto_args.m, "SRS rounds")->check(CLI::Range(1, 1000));
    proto->add_option("--trials", proto_args.trials, "Monte Carlo trials");
    proto->add_option("--seed", proto_args.seed, "Base seed (default: fresh, recorded)");
    proto->add_flag("--exact", proto_args.exact, "Exact rational probability");
    proto->add_option("--policy", proto_args.policy, "SRS exact policy: uniform or keep-second");
    add_output_flags(proto, proto_args.out);

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Parameter sweep to CSV (plus a <out>.json sidecar)");
    sweep->add_option("target", sweep_args.target, "perm-soundness, rcir-vs-bound, srs-vs-m or qbounds")->required();
    sweep->add_option("--from", sweep_args.lo, "First grid value (n, or m for srs-vs-m)");
    sweep->add_option("--to", sweep_args.hi, "Last grid value");
    sweep->add_option("--trials", sweep_args.trials, "Monte Carlo trials per row (rcir-vs-bound, srs-vs-m)");
    sweep->add_option("--seed", sweep_args.seed, "Base seed; row i uses seed + i");
    add_output_flags(sweep, sweep_args.out);

    BoundsArgs bounds_args;
    auto *bounds = app.add_subcommand("bounds", "Evaluate one analytic bound");
    bounds->add_option("what", bounds_args.what, "two-block, q, eq2, basel, projector, ps or gap")->required();
    bounds->add_option("--n", bounds_args.n);
    bounds->add_option("--l", bounds_args.l);
    bounds->add_option("--r", bounds_args.r);
    bounds->add_option("--s", bounds_args.s);
    bounds->add_option("--dim", bounds_args.dim);
    bounds->add_option("--terms", bounds_args.terms, "Basel partial-sum length S");
    bounds->add_option("--instance", bounds_args.instance);
    add_output_flags(bounds, bounds_args.out);

    bool verbose = false;
    auto *selftest = app.add_subcommand("selftest", "Run acceptance criteria 1-9");
    selftest->add_flag("-v,--verbose", verbose, "Print the numbers behind each verdict");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*test) cmd_test(test_args);
        if (*proto) cmd_protocol(proto_args);
        if (*sweep) cmd_sweep(sweep_args);
        if (*bounds) cmd_bounds(bounds_args);
        if (*selftest) return cmd_selftest(verbose);
    } catch (const CapExceeded &e) {
        std::cerr << "qsi: cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const IoError &e) {
        std::cerr << "qsi: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "qsi: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "qsi: internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
