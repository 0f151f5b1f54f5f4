#pragma once

#include <string>
#include <vector>

#include "schemes/metric_space.hpp"
#include "schemes/metrics.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

// One property suite run: every quantified instance evaluated, failures
// collected (capped) rather than thrown, so callers can render a table.
struct SuiteResult {
    std::string name;
    bool ok = true;
    long long checks = 0;
    std::vector<std::string> failures;

    void count() { ++checks; }
    void fail(std::string what);
};

// Scheme axioms re-checked independently of the constructor.
SuiteResult verify_scheme_axioms(const SchemePrefix& s);

// Lemma-level sweeps over every pair/triple of the context's domain:
//   rho is a point-separating symmetric ultrametric-like rank,
//   cardinality ordering below rho, split-level coherence,
//   piece-index laws at k <, =, > the separation levels,
//   and the closure identity against every containing block.
SuiteResult verify_metric_lemmas(const MetricContext& ctx);

// Condition calculus over the limit of the stored prefix:
//   (a) the clause-by-clause membership test agrees with the reduction-based
//       one for every candidate of width 1, m_1, or m_2 drawn from the finite
//       domain plus the first six fresh tail points whose above-limit part is
//       an initial run of the tail;
//   (b) reducing a condition and cutting back at its last lower point
//       restores it, and cutting a stored block then reducing yields the
//       lower part followed by a consecutive run that is again stored;
//   (c) cutting nested stored blocks preserves the extension order.
SuiteResult verify_forcing_calculus(const TypeSpec& spec, long long levels);

// The unrestricted claim that reduction inverts cutting on every stored
// block at every cut point. Cutting forgets which points sat above the cut,
// so this quantification is genuinely false; the suite records the
// counterexamples instead of passing and exists to document exactly where
// the restricted forms in verify_forcing_calculus are sharp.
SuiteResult verify_cut_reduction_unrestricted(const TypeSpec& spec, long long levels);

// Greedy limit extension run twice from fresh grounds: identical traces,
// the final condition's scheme passes the axiom checker, its ground-level
// blocks are stored blocks, every scheduled set is met, the fresh tail
// points are present, and each chain member's scheme embeds in the final
// one.
SuiteResult verify_extension_determinism(const TypeSpec& spec, long long levels,
                                         long long horizon);

// search_captured over singleton families versus a literal double loop
// (subsets in index order, then levels ascending), plus a re-verified
// intersection symbol for every report with pairwise disjoint sets.
SuiteResult verify_capture_search(const MetricContext& ctx, long long family_size);

// Almost-disjointness of the attached block families: for every point pair,
// the level-k blocks are disjoint at every level above the pair's covering
// level, and the report records exactly those levels.
SuiteResult verify_ad_grading(const MetricContext& ctx);

// Sequence-realization bridge at `level`: every full disjoint singleton
// family the cardinality-split search finds realizes both one-letter
// comparison patterns with a verified index.
SuiteResult verify_realizations(const MetricContext& ctx, long long level);

// Sign-vector laws: zero first entry, entries bounded by the level widths,
// nonpositive piece indexes collapse to zero, and two points' vectors first
// differ exactly at their split level.
SuiteResult verify_vector_alignment(const MetricContext& ctx);

// Point-metric laws for the supplied level metrics: the three metric axioms
// on all pairs/triples, the two-sided scale bounds at the split level, and
// agreement with the scaled level distances on every captured pair and
// triple family the search finds.
SuiteResult verify_point_metric(const MetricContext& ctx, const LevelMetrics& lm);

// Regression on the monotonicity search: the standard grid refutes c = 1 at
// four points with the pinned matrix, and the refutation survives an
// order-by-order re-verification.
SuiteResult verify_monotone_search();

// Representation clause battery (a)-(e) over a three-chain, a diamond, and a
// two-antichain, every judgment required to agree within its tail bound.
SuiteResult verify_representations(const MetricContext& ctx, long long levels);

// Recursive selector assignment on the doubled two-chain: every step report
// sound, both assembled assignments coherent, and the symmetric-difference
// product containing the flipped copy's block while avoiding the unflipped
// one's at all levels above the copy tail.
SuiteResult verify_recursive_assignment(const MetricContext& ctx, long long levels);

} // namespace schemes
