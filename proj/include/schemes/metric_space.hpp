#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "schemes/capture.hpp"
#include "schemes/metrics.hpp"

namespace schemes {

using Rational = boost::rational<long long>;

// "p/q", or just "p" for integers; parsing accepts both forms.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& text);

// ---------------------------------------------------------------------------
// Finite rational metric spaces
// ---------------------------------------------------------------------------

struct FiniteMetric {
    std::vector<std::vector<Rational>> dist;

    // Validates: square, symmetric, zero diagonal, positive off-diagonal,
    // triangle inequality. Violations are ValidationErrors.
    static FiniteMetric from_matrix(std::vector<std::vector<Rational>> m);
    static FiniteMetric discrete(long long n); // all off-diagonal distances 1
    static FiniteMetric from_json(const std::string& text); // {"matrix":[["0","1"],...]}
    std::string to_json() const;

    long long size() const { return (long long)dist.size(); }
    Rational diam() const;    // 0 on spaces with fewer than two points
    Rational mindist() const; // least off-diagonal distance; 1 on tiny spaces
};

// One metric per represented level k >= 1; level k's space must have n_k
// points and diameter exactly 1 when consumed.
struct LevelMetrics {
    std::map<long long, FiniteMetric> by_level;

    static LevelMetrics discrete_for(const TypeSpec& spec, long long k_max);
    static LevelMetrics from_json(const std::string& text); // [{"k":2,"matrix":[...]},...]
    std::string to_json() const;
};

// s_k: the product of the least distances of the levels below k (levels
// 1..k-1; the level-0 factor is 1 by convention).
Rational scale_factor(const LevelMetrics& lm, long long k);

// The point metric: 0 on the diagonal, else the split level's metric at the
// two piece indices, scaled by that level's factor.
Rational scheme_metric(const MetricContext& ctx, const LevelMetrics& lm, const Ord& alpha,
                       const Ord& beta);

// ---------------------------------------------------------------------------
// Monotone suborders and the search for spaces without them
// ---------------------------------------------------------------------------

// Exhaustive scan over all linear orders (permutations in lexicographic
// order): the space is c-monotone iff some order has d(x,y) <= c * d(x,z)
// whenever x < y < z. The first witnessing order is returned.
struct MonotoneVerdict {
    bool monotone = false;
    std::vector<long long> order; // witnessing order when monotone
    long long orders_checked = 0;
};

MonotoneVerdict is_c_monotone(const FiniteMetric& space, const Rational& c);

// Brute-force search for a space that is not (1/n)-monotone: sizes ascend
// from 3 to the bound, upper-triangle entries drawn from the grid in the
// given order (last pair varies fastest); candidates must pass the metric
// axioms. The first refuted space is re-verified and returned; exhaustion
// is a value, not an error.
struct MetricSearchResult {
    bool found = false;
    long long size = 0;
    FiniteMetric space;
};

MetricSearchResult finite_metric_search(long long n, long long size_bound,
                                        const std::vector<Rational>& grid);

// ---------------------------------------------------------------------------
// Captured families as isometric copies of a level space
// ---------------------------------------------------------------------------

// Verifies, for every tail position and every member pair (i,j), that the
// point metric of the aligned elements equals the report level's scaled
// metric at (i,j). Exact rational equality; the first mismatch is reported.
struct IsometryReport {
    bool ok = false;
    long long level = 0;
    long long pairs_checked = 0;
    std::string reason; // nonempty when a pair mismatched
};

IsometryReport isometry_check(const MetricContext& ctx, const LevelMetrics& lm,
                              const CaptureReport& report);

} // namespace schemes
