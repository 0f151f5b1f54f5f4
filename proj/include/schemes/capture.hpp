#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schemes/block.hpp"
#include "schemes/delta_system.hpp"
#include "schemes/metrics.hpp"

namespace schemes {

// Ordered root-tail-tail system of equal-size sets. sets[i][a] is the
// position-a element of the i-th member; positions a < r land in the root.
struct DeltaSystemWitness {
    std::vector<Block> sets;
    Block root;
    long long r = 0;

    long long size() const { return (long long)sets.size(); }
    long long width() const { return sets.empty() ? 0 : (long long)sets[0].size(); }
};

struct DeltaSystemResult {
    std::optional<DeltaSystemWitness> witness;
    std::string violation; // empty iff witness present
    bool ok() const { return witness.has_value(); }
};

// Strict detector: needs >= 2 equal-size sets in root-tail-tail position.
// Failure is a value naming the violated clause, never an exception.
DeltaSystemResult delta_system_root(const std::vector<Block>& family);

// Same shape checks but one-set (and empty-root) families are admitted with
// root = {}; the capture searches quantify over these too.
DeltaSystemResult witness_any_size(const std::vector<Block>& family);

// Which of the two derived functions clause (II) constrains.
struct StarSet {
    bool rho = false;
    bool delta = false;

    static StarSet both() { return {true, true}; }
    std::string label() const;
};

struct CaptureReport {
    DeltaSystemWitness witness;
    long long level = 0;
    StarSet star;
    bool full = false; // family size equals the level's piece count
};

// Failure carries the violated clause: "I" (piece-index pattern),
// "II:rho" / "II:delta" (pairwise tail values), or a shape tag.
struct CaptureOutcome {
    std::optional<CaptureReport> report;
    std::string clause;
    std::string reason;
    bool ok() const { return report.has_value(); }
};

// Clause (I): position a < r has piece index -1 at level l, position a >= r
// has piece index i in member i. Clause (II_nu): nu(D_i(a), D_j(a)) = l for
// i < j at tail positions, for each nu named by star.
CaptureOutcome is_captured(const MetricContext& ctx, const DeltaSystemWitness& d, long long l,
                           StarSet star);

// Exhaustive scan: n-subsets of S in index-lexicographic order, then levels
// ascending; returns every passing report in that order.
std::vector<CaptureReport> search_captured(const MetricContext& ctx, const std::vector<Block>& s,
                                           long long n, StarSet star, long long level_lo,
                                           long long level_hi);

// Finite-scale refinement pipeline: the largest (ties: least index set)
// subfamily of S that is a root-tail-tail system whose members all meet at
// the same level k, and whose max-element closures at k form a second
// root-tail-tail system with root R' satisfying R' inter D = R for every
// member D.
struct RefinementReport {
    bool ok = false;
    std::string reason;
    std::vector<long long> indices;
    std::vector<Block> family;
    Block root;
    long long k = 0;
    std::vector<Ord> alphas;
    std::vector<Block> closures;
    Block closure_root;
};

RefinementReport refine_to_uniform_system(const std::vector<Block>& s, const MetricContext& ctx);

} // namespace schemes
