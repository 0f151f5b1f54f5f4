#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "schemes/verify.hpp"

using namespace schemes;
using namespace schemes::test;

namespace {

LevelMetrics mixed_levels() {
    LevelMetrics lm = LevelMetrics::discrete_for(t4(), 4);
    std::vector<std::vector<Rational>> three = {
        {Rational(0), Rational(1, 2), Rational(1)},
        {Rational(1, 2), Rational(0), Rational(1)},
        {Rational(1), Rational(1), Rational(0)},
    };
    lm.by_level[2] = FiniteMetric::from_matrix(three);
    return lm;
}

} // namespace

TEST_CASE("forcing calculus suite passes and sweeps the full candidate pool") {
    SuiteResult r = verify_forcing_calculus(t4(), 4);
    CHECK(r.ok);
    CHECK(r.failures.empty());
    // 453 tail-initial candidates of widths 1, 2, 4 are probed, plus the
    // restoration trip on each condition and the per-block sweeps
    CHECK(r.checks > 453);
}

TEST_CASE("the unrestricted inversion claim fails exactly where cutting loses information") {
    SuiteResult r = verify_cut_reduction_unrestricted(t4(), 4);
    CHECK_FALSE(r.ok);
    // every stored block and cut point is still visited
    long long pairs = 0;
    SchemePrefix f = f10();
    for (long long k = 0; k <= f.top_level(); ++k)
        for (const Block& blk : f.level(k)) pairs += (long long)blk.size();
    CHECK(r.checks == pairs);
    REQUIRE_FALSE(r.failures.empty());
    CHECK(r.failures.front() == "red(cut(F,0+1)) = {0,1} != F = {0,2}");
}

TEST_CASE("extension determinism suite passes on the standard schedule") {
    SuiteResult r = verify_extension_determinism(t4(), 4, 6);
    CHECK(r.ok);
    CHECK(r.failures.empty());
    CHECK(r.checks > 10);
}

TEST_CASE("capture search suite matches its oracle for singletons and pairs") {
    MetricContext ctx(f10());
    for (long long n : {1LL, 2LL}) {
        SuiteResult r = verify_capture_search(ctx, n);
        CAPTURE(n);
        CHECK(r.ok);
        CHECK(r.failures.empty());
    }
}

TEST_CASE("ad grading suite is exhaustive over pairs and levels") {
    MetricContext ctx(f10());
    SuiteResult r = verify_ad_grading(ctx);
    CHECK(r.ok);
    // 45 pairs, each contributing the report check, the level-list check,
    // and one check per graded level
    CHECK(r.checks > 90);
}

TEST_CASE("realization suite verifies both patterns on the five-way fixture") {
    MetricContext ctx(f6e());
    SuiteResult r = verify_realizations(ctx, 2);
    CHECK(r.ok);
    CHECK(r.checks == 2); // one captured full family, two patterns
}

TEST_CASE("vector alignment suite passes on both prefixes") {
    for (const SchemePrefix& f : {f10(), f6e()}) {
        MetricContext ctx(f);
        SuiteResult r = verify_vector_alignment(ctx);
        CHECK(r.ok);
        CHECK(r.failures.empty());
    }
}

TEST_CASE("point metric suite passes with mixed level metrics") {
    MetricContext ctx(f10());
    SuiteResult r = verify_point_metric(ctx, mixed_levels());
    CHECK(r.ok);
    CHECK(r.failures.empty());
}

TEST_CASE("monotone search regression holds") {
    SuiteResult r = verify_monotone_search();
    CHECK(r.ok);
    CHECK(r.checks == 5);
}

TEST_CASE("representation and assignment suites pass at the tested depth") {
    MetricContext ctx(f10());
    SuiteResult rep = verify_representations(ctx, 4);
    CHECK(rep.ok);
    CHECK(rep.checks == 12 + 21 + 7); // chain, diamond, antichain judgment counts
    SuiteResult rec = verify_recursive_assignment(ctx, 4);
    CHECK(rec.ok);
    CHECK(rec.failures.empty());
}
