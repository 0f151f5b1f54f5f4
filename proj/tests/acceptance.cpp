// Acceptance battery: twelve criteria, one verdict line each, with the stated
// wall-clock bounds enforced as part of each verdict.
//
// Criterion 4 includes the unrestricted inversion claim red(cut(F, a+1)) == F
// over every stored block F and every a in F.  That quantification is
// genuinely false: cutting at a+1 moves every point above a onto the fresh
// tail, so two blocks that differ only above a share a cut ({0,2} and {0,5}
// both cut to {0,w} at a = 0) and no reduction can tell them apart again.
// The battery runs the claim as stated and expects it to be refuted at
// exactly that first counterexample, while the restricted inversion and the
// monotonicity law -- which do hold -- are checked alongside and must pass.
// The process exits 0 only when criteria 1-3 and 5-12 pass and criterion 4
// fails in precisely the documented way; any other profile (including
// criterion 4 accidentally passing) exits 1.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "schemes/ad.hpp"
#include "schemes/block.hpp"
#include "schemes/forcing.hpp"
#include "schemes/metric_space.hpp"
#include "schemes/metrics.hpp"
#include "schemes/scheme.hpp"
#include "schemes/verify.hpp"

using namespace schemes;
using namespace schemes::test;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

// Fold property-suite results into one verdict; the first failure, if any,
// is surfaced on the criterion line.
Verdict fold(std::initializer_list<SuiteResult> suites, const std::string& note) {
    Verdict v;
    v.pass = true;
    long long checks = 0;
    std::string first;
    for (const SuiteResult& s : suites) {
        checks += s.checks;
        if (!s.ok) {
            v.pass = false;
            if (first.empty())
                first = s.failures.empty() ? (s.name + " failed") : s.failures.front();
        }
    }
    v.detail = std::to_string(checks) + " checks";
    if (!note.empty()) v.detail += "; " + note;
    if (!first.empty()) v.detail += "; first failure: " + first;
    return v;
}

// Every size-w index subset of {0..n-1}, lexicographic.
void for_combinations(long long n, long long w,
                      const std::function<void(const std::vector<long long>&)>& fn) {
    if (w < 0 || w > n) return;
    std::vector<long long> idx(static_cast<size_t>(w));
    std::iota(idx.begin(), idx.end(), 0);
    if (w == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        long long i = w - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - w + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (long long j = i + 1; j < w; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

// Candidate filter for the characterization sweep: the points at or above
// gamma must be exactly gamma, gamma+1, ... with no holes.
bool tail_initial(const Block& p, const Ord& gamma) {
    long long j = 0;
    for (const Ord& x : p)
        if (!(x < gamma)) {
            if (!(x == gamma.plus(j))) return false;
            ++j;
        }
    return true;
}

// 1. Every domain of a scheduled size carries exactly one scheme prefix and
//    the independent axiom checker accepts it.
Verdict criterion_scheme_construction() {
    Verdict v;
    v.pass = true;
    TypeSpec spec = t4();
    std::string sizes;
    for (long long k = 0; k <= spec.top_level(); ++k) {
        SchemePrefix f = unique_finite_scheme(iota(spec.m(k)), spec);
        SchemeCheckReport rep = is_scheme(f.levels, f.spec, f.domain);
        if (!rep.ok) {
            v.pass = false;
            v.detail = "domain of " + std::to_string(spec.m(k)) + " points: " +
                       (rep.violations.empty() ? "axiom checker failed" : rep.violations.front());
            return v;
        }
        if (!sizes.empty()) sizes += ",";
        sizes += std::to_string(spec.m(k));
    }
    v.detail = "domains of " + sizes + " points all pass the independent axiom checker";
    return v;
}

// 2. Rank/split/piece-index lemmas, exhaustively on the 10-point fixture and
//    on a three-way fixture with a domain past 20 points.
Verdict criterion_metric_lemmas() {
    MetricContext a(f10());
    MetricContext b(f26());
    return fold({verify_metric_lemmas(a), verify_metric_lemmas(b)},
                "all pairs and triples of the 10-point and 26-point fixtures");
}

// 3. closure(a, k) equals F intersected with [0, a] for every level-k block
//    F containing a -- the same answer from every containing block.
Verdict criterion_closure_identity() {
    Verdict v;
    v.pass = true;
    long long checks = 0;
    for (const SchemePrefix& f : {f10(), f26(), f6e()}) {
        MetricContext ctx(f);
        for (long long k = 0; k <= f.top_level(); ++k) {
            for (const Block& blk : f.level(k)) {
                for (const Ord& a : blk) {
                    Block expected = below(blk, a.next());
                    const Block& got = ctx.closure(a, k);
                    ++checks;
                    if (!(got == expected)) {
                        v.pass = false;
                        v.detail = "closure(" + to_string(a) + "," + std::to_string(k) +
                                   ") = " + to_string(got) + " != " + to_string(expected);
                        return v;
                    }
                }
            }
        }
    }
    v.detail = std::to_string(checks) + " (block, point) pairs across three fixtures, exact";
    return v;
}

// 4. Forcing calculus over gamma = w.  Three laws hold; the fourth -- the
//    unrestricted inversion -- cannot, and its first counterexample is part
//    of the expected profile checked in main().
struct ForcingOutcome {
    Verdict verdict;          // the criterion as stated (expected to fail)
    bool as_documented = false;
};

ForcingOutcome criterion_forcing_calculus() {
    ForcingOutcome out;
    OmegaGround om(t4(), 4);
    ForcingGround g(om);
    const Ord gamma = g.gamma();
    const SchemePrefix f = f10();

    // (a) membership characterization: direct clause check == reduction
    // membership, for every tail-initial candidate of a scheduled width
    // drawn from the 10 finite points plus w..w+5.
    std::vector<Ord> pool = f.domain;
    for (long long i = 0; i < 6; ++i) pool.push_back(Ord{1, i});
    std::vector<long long> widths = {1, f.spec.m(1), f.spec.m(2)};
    std::sort(widths.begin(), widths.end());
    widths.erase(std::unique(widths.begin(), widths.end()), widths.end());

    long long candidates = 0;
    std::vector<long long> per_width;
    std::string probe_bad;
    for (long long width : widths) {
        long long count = 0;
        for_combinations(static_cast<long long>(pool.size()), width,
                         [&](const std::vector<long long>& idx) {
                             Block p;
                             for (long long i : idx) p.push_back(pool[static_cast<size_t>(i)]);
                             if (!tail_initial(p, gamma)) return;
                             ++candidates;
                             ++count;
                             ConditionProbe pr = probe_condition(g, p);
                             if (pr.direct != pr.reduced && probe_bad.empty())
                                 probe_bad = "probes disagree at p = " + to_string(p);
                         });
        per_width.push_back(count);
    }
    const std::vector<long long> expected_counts = {11, 56, 386};
    bool a_ok = probe_bad.empty() && candidates == 453 && per_width == expected_counts;

    // (b) both inversion directions over every stored block F and a in F:
    // cutting a reduced cut restores the cut (holds), and reducing a cut
    // restores the block (cannot hold -- collect its failures in order).
    long long trips = 0;
    bool trip1_ok = true;
    std::string trip1_bad;
    bool trip2_ok = true;
    std::vector<std::string> trip2_failures;
    for (long long k = 0; k <= f.top_level(); ++k) {
        for (const Block& blk : f.level(k)) {
            for (const Ord& a : blk) {
                ++trips;
                Block q = cut_block(blk, a.next(), gamma);
                Block back = cut_block(red(q, gamma), alpha_p(q, gamma).next(), gamma);
                if (!(back == q)) {
                    trip1_ok = false;
                    if (trip1_bad.empty())
                        trip1_bad = "cut(red(q)) = " + to_string(back) + " != q = " + to_string(q);
                }
                Block got = red(q, gamma);
                if (!(got == blk)) {
                    trip2_ok = false;
                    if (trip2_failures.size() < 4)
                        trip2_failures.push_back("red(cut(F," + to_string(a) + "+1)) = " +
                                                 to_string(got) + " != F = " + to_string(blk));
                }
            }
        }
    }

    // (c) cut monotonicity on every nested stored pair, at every cut point
    // of the smaller block.
    long long nested = 0;
    bool mono_ok = true;
    std::string mono_bad;
    for (long long k1 = 0; k1 <= f.top_level(); ++k1) {
        for (long long k2 = k1; k2 <= f.top_level(); ++k2) {
            for (const Block& small : f.level(k1)) {
                for (const Block& big : f.level(k2)) {
                    if (!is_subset(small, big)) continue;
                    for (const Ord& a : small) {
                        ++nested;
                        if (!leq(g, cut_block(big, a, gamma), cut_block(small, a, gamma))) {
                            mono_ok = false;
                            if (mono_bad.empty())
                                mono_bad = "cut(" + to_string(big) + "," + to_string(a) +
                                           ") not below cut(" + to_string(small) + ",...)";
                        }
                    }
                }
            }
        }
    }

    out.verdict.pass = a_ok && trip1_ok && trip2_ok && mono_ok;
    const std::string documented = "red(cut(F,0+1)) = {0,1} != F = {0,2}";
    out.as_documented = a_ok && trip1_ok && mono_ok && !trip2_ok &&
                        !trip2_failures.empty() && trip2_failures.front() == documented;

    std::string d;
    if (a_ok) {
        d = std::to_string(candidates) + " candidates (11+56+386) probed, characterization agrees";
    } else {
        d = "characterization sweep failed: " +
            (probe_bad.empty() ? std::to_string(candidates) + " candidates, expected 453" : probe_bad);
    }
    d += trip1_ok ? "; restricted inversion holds on all " + std::to_string(trips) + " cuts"
                  : "; restricted inversion FAILED: " + trip1_bad;
    d += mono_ok ? "; monotonicity holds on " + std::to_string(nested) + " nested cuts"
                 : "; monotonicity FAILED: " + mono_bad;
    d += trip2_ok ? "; unrestricted inversion unexpectedly held"
                  : "; unrestricted inversion refuted, first: " +
                        (trip2_failures.empty() ? std::string("(none recorded)") : trip2_failures.front());
    out.verdict.detail = d;
    return out;
}

// 5. Limit extension with three scheduled targets: valid output scheme,
//    every target met, byte-for-byte identical on rerun.
Verdict criterion_limit_extension() {
    return fold({verify_extension_determinism(t4(), 4, 6)},
                "horizon 6, three scheduled targets, rerun identical");
}

// 6. Captured-family search equals the literal double-loop oracle, and every
//    disjoint-family report yields a verified intersection witness.
Verdict criterion_capture_search() {
    MetricContext ctx(f10());
    return fold({verify_capture_search(ctx, 1), verify_capture_search(ctx, 2)},
                "singleton families of sizes 1 and 2, levels 1..4");
}

// 7. Level-wise disjointness of the derived almost-disjoint pieces above the
//    pair's rank, with the graded symbol slices staying small.
Verdict criterion_ad_grading() {
    MetricContext ctx(f10());
    Verdict v = fold({verify_ad_grading(ctx)}, "all pairs a != b below 10, levels up to 4");
    const std::vector<long long> pinned = {1, 8, 16, 36};
    std::string sizes;
    for (long long k = 1; k <= 4; ++k) {
        long long n = symbol_space_size(t4(), k);
        if (n != pinned[static_cast<size_t>(k - 1)] || n > 36) {
            v.pass = false;
            v.detail += "; symbol slice at level " + std::to_string(k) + " has " +
                        std::to_string(n) + " elements, expected " +
                        std::to_string(pinned[static_cast<size_t>(k - 1)]);
            return v;
        }
        if (!sizes.empty()) sizes += ",";
        sizes += std::to_string(n);
    }
    v.detail += "; slice sizes " + sizes;
    return v;
}

// 8. Realization mechanism on the five-way fixture at level 2: every
//    captured disjoint pair family, under both one-place order patterns,
//    yields a verified index.  Higher levels stay out of scope here.
Verdict criterion_realizations() {
    MetricContext ctx(f6e());
    SuiteResult r = verify_realizations(ctx, 2);
    Verdict v = fold({r}, "five-way fixture, level 2, both order patterns");
    if (r.checks != 2) {
        v.pass = false;
        v.detail += "; expected exactly 2 realization checks, saw " + std::to_string(r.checks);
    }
    return v;
}

// 9. The point metric built from rational level metrics satisfies all three
//    metric axioms on every triple, and captured reports are isometries.
Verdict criterion_point_metric() {
    MetricContext ctx(f10());
    LevelMetrics lm = LevelMetrics::discrete_for(t4(), 4);
    std::vector<std::vector<Rational>> three = {
        {Rational(0), Rational(1, 2), Rational(1)},
        {Rational(1, 2), Rational(0), Rational(1)},
        {Rational(1), Rational(1), Rational(0)},
    };
    lm.by_level[2] = FiniteMetric::from_matrix(three);
    return fold({verify_point_metric(ctx, lm)},
                "non-discrete three-piece level; exact rationals; isometry on every report");
}

// 10. Bounded search for a small non-monotone metric space: the pinned
//     outcome recurs and the verdict is re-verified over every point order.
Verdict criterion_monotone_search() {
    return fold({verify_monotone_search()},
                "4-point space on the 1,3/4,1/2,1/4 grid, re-verified over all orders");
}

// 11. Representation judgments on a 3-chain, a diamond, and a 2-antichain at
//     three levels all agree, and the two-step selector assignment satisfies
//     its postconditions together with the product law.
Verdict criterion_representations() {
    MetricContext ctx(f10());
    return fold({verify_representations(ctx, 3), verify_recursive_assignment(ctx, 4)},
                "three posets; selector steps for both branch choices; product law");
}

// 12. The command-line verify battery finishes within its bound and is
//     byte-deterministic across two runs.
Verdict criterion_cli_determinism() {
    Verdict v;
    const std::string tool = SCHEMETOOL_PATH;
    const std::string run1 = "acceptance_verify_run1.jsonl";
    const std::string run2 = "acceptance_verify_run2.jsonl";
    auto invoke = [&](const std::string& out) {
        std::string cmd = "\"" + tool + "\" verify --out " + out;
        return std::system(cmd.c_str());
    };
    int rc1 = invoke(run1);
    int rc2 = invoke(run2);
    if (rc1 != 0 || rc2 != 0) {
        v.pass = false;
        v.detail = "verify exited nonzero (" + std::to_string(rc1) + ", " + std::to_string(rc2) + ")";
        return v;
    }
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string b1 = slurp(run1);
    std::string b2 = slurp(run2);
    if (b1.empty()) {
        v.pass = false;
        v.detail = "verify produced no output";
        return v;
    }
    if (b1 != b2) {
        v.pass = false;
        v.detail = "the two runs differ (" + std::to_string(b1.size()) + " vs " +
                   std::to_string(b2.size()) + " bytes); outputs kept for inspection";
        return v;
    }
    std::remove(run1.c_str());
    std::remove(run2.c_str());
    v.pass = true;
    v.detail = "two runs byte-identical (" + std::to_string(b1.size()) + " bytes each), exit 0";
    return v;
}

struct Row {
    int id = 0;
    bool pass = false;
};

} // namespace

int main() {
    std::printf("acceptance battery: 12 criteria, stated time bounds enforced per line\n\n");

    std::vector<Row> rows;
    bool forcing_as_documented = false;

    auto emit = [&](int id, const char* label, double bound_ms, double ms, const Verdict& v) {
        rows.push_back({id, v.pass});
        char timing[64];
        if (bound_ms > 0)
            std::snprintf(timing, sizeof timing, "%.1f ms, bound %.0f ms", ms, bound_ms);
        else
            std::snprintf(timing, sizeof timing, "%.1f ms", ms);
        std::printf("[%s] %2d %-23s %s (%s)\n", v.pass ? "PASS" : "FAIL", id, label,
                    v.detail.c_str(), timing);
        std::fflush(stdout);
    };

    auto timed = [&](int id, const char* label, double bound_ms,
                     const std::function<Verdict()>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = fn();
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (bound_ms > 0 && ms > bound_ms) {
            v.pass = false;
            v.detail += "; exceeded the " + std::to_string(static_cast<long long>(bound_ms)) +
                        " ms bound";
        }
        emit(id, label, bound_ms, ms, v);
    };

    timed(1, "scheme-construction", 1000, criterion_scheme_construction);
    timed(2, "ordinal-metric-lemmas", 5000, criterion_metric_lemmas);
    timed(3, "closure-identity", 0, criterion_closure_identity);

    {
        auto t0 = std::chrono::steady_clock::now();
        ForcingOutcome out = criterion_forcing_calculus();
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (ms > 10000) {
            out.verdict.pass = false;
            out.as_documented = false;
            out.verdict.detail += "; exceeded the 10000 ms bound";
        }
        forcing_as_documented = out.as_documented;
        emit(4, "forcing-calculus", 10000, ms, out.verdict);
    }

    timed(5, "limit-extension", 5000, criterion_limit_extension);
    timed(6, "capture-search", 0, criterion_capture_search);
    timed(7, "ad-grading", 0, criterion_ad_grading);
    timed(8, "entangled-realizations", 0, criterion_realizations);
    timed(9, "point-metric", 0, criterion_point_metric);
    timed(10, "monotone-search", 60000, criterion_monotone_search);
    timed(11, "representations", 0, criterion_representations);
    timed(12, "cli-determinism", 120000, criterion_cli_determinism);

    bool gate = true;
    std::vector<std::string> deviations;
    int passed = 0;
    for (const Row& r : rows) {
        if (r.pass) ++passed;
        if (r.id == 4) {
            if (r.pass) {
                gate = false;
                deviations.push_back("criterion 4 passed, but its unrestricted half cannot hold");
            } else if (!forcing_as_documented) {
                gate = false;
                deviations.push_back("criterion 4 failed, but not at the documented counterexample");
            }
        } else if (!r.pass) {
            gate = false;
            deviations.push_back("criterion " + std::to_string(r.id) + " failed");
        }
    }

    if (gate) {
        std::printf("\nacceptance: %d of 12 criteria pass; criterion 4 is refuted exactly at its"
                    " documented counterexample\n",
                    passed);
        std::printf("  cutting at a+1 moves every point above a onto the fresh tail, so {0,2} and"
                    " {0,5} both cut to {0,w} at a = 0;\n  no reduction can tell them apart, so"
                    " red(cut(F,a+1)) == F fails while every restricted inversion holds.\n");
        std::printf("result: expected profile -> exit 0\n");
        return 0;
    }
    std::printf("\nacceptance: profile deviates from the documented expectation:\n");
    for (const std::string& d : deviations) std::printf("  - %s\n", d.c_str());
    std::printf("result: exit 1\n");
    return 1;
}
