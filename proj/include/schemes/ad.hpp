#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "schemes/capture.hpp"
#include "schemes/metrics.hpp"

namespace schemes {

// ---------------------------------------------------------------------------
// Graded symbol space
// ---------------------------------------------------------------------------

// A symbol at level k >= 1 is a tuple of length n_k with entries < m_{k-1}.
// Distinct levels are disjoint by construction (the level is part of the
// symbol's identity).
struct Symbol {
    long long level = 0;
    std::vector<long long> entries;

    auto operator<=>(const Symbol&) const = default;
};

std::string to_string(const Symbol& s);

// Finite subsets of the graded space, any mix of levels.
using GradedSet = std::set<Symbol>;

GradedSet slice_level(const GradedSet& s, long long level);
GradedSet graded_unite(const GradedSet& a, const GradedSet& b);
GradedSet graded_intersect(const GradedSet& a, const GradedSet& b);
GradedSet graded_diff(const GradedSet& a, const GradedSet& b);
GradedSet graded_symdiff(const GradedSet& a, const GradedSet& b);
bool graded_subset(const GradedSet& a, const GradedSet& b);

// |level-k slice| = m_{k-1}^{n_k}; HorizonError when the slice is too large
// to enumerate (or k is outside the stored type).
long long symbol_space_size(const TypeSpec& spec, long long k);
// All level-k symbols in lexicographic entry order.
std::vector<Symbol> symbol_space(const TypeSpec& spec, long long k);

// ---------------------------------------------------------------------------
// The graded almost-disjoint blocks attached to each point
// ---------------------------------------------------------------------------

// Level-k block of a point: all level-k symbols whose entry at the point's
// piece index equals the point's strict closure size one level down. Empty
// exactly when the point sits in the root of its level-k block.
struct ADPiece {
    Ord alpha;
    long long level = 0;
    GradedSet members;
};

ADPiece ad_piece(const MetricContext& ctx, const Ord& alpha, long long k);

// Union of the point's blocks over levels 1..k_max.
GradedSet ad_prefix(const MetricContext& ctx, const Ord& alpha, long long k_max);

// Verifies that two distinct points' blocks are disjoint at every level
// strictly above their joint covering level, up to the horizon.
struct GradingReport {
    Ord alpha;
    Ord beta;
    long long rho = 0;
    long long horizon = 0;
    std::vector<long long> checked; // levels verified disjoint
    bool ok = false;
};

GradingReport ad_intersection_bound(const MetricContext& ctx, const Ord& alpha, const Ord& beta,
                                    long long horizon);

// For a captured family with pairwise disjoint sets, builds the level-l
// symbol lying in every selected point's level-l block: coordinate i is the
// strict closure size of the i-th set's selector (its i-th element, clamped
// to the set's size), remaining coordinates 0. Membership is re-verified.
Symbol capture_intersection_witness(const MetricContext& ctx, const CaptureReport& report);

// ---------------------------------------------------------------------------
// Finite partial orders
// ---------------------------------------------------------------------------

struct FinitePoset {
    std::vector<std::string> elements;     // ids; the vector order is the enumeration order
    std::vector<std::vector<bool>> less;   // strict order, transitively closed

    static FinitePoset from_edges(std::vector<std::string> ids,
                                  const std::vector<std::pair<std::string, std::string>>& lt);
    static FinitePoset from_json(const std::string& text);
    std::string to_json() const;

    long long size() const { return static_cast<long long>(elements.size()); }
    long long index_of(const std::string& id) const; // ValidationError when absent
    bool lt(long long i, long long j) const { return less[i][j]; }
    bool leq(long long i, long long j) const { return i == j || less[i][j]; }

    std::vector<long long> down_set(long long i) const;      // strictly below, ascending index
    std::vector<long long> predecessors(long long i) const;  // covers: maximal elements below
    std::optional<long long> inf(long long i, long long j) const;
    bool incompatible(long long i, long long j) const;       // no common lower bound
};

// Greedy cofinal selection: walk the enumeration and keep each element that
// is not below any earlier one; the result is verified cofinal.
FinitePoset well_founded_cofinal(const FinitePoset& p);

// Deterministic monotone enumeration (x < y implies phi(x) < phi(y)):
// repeatedly emit the id-lexicographically least element with no remaining
// strict predecessor. Returns element index -> rank.
std::vector<long long> monotone_bijection(const FinitePoset& p);

// ---------------------------------------------------------------------------
// Representation of a finite order inside the graded blocks
// ---------------------------------------------------------------------------

// {z <= x : phi(z) in the level-k closure of phi(x)}, ascending element index.
std::vector<long long> m_set(const MetricContext& ctx, const FinitePoset& p,
                             const std::vector<long long>& phi, long long x, long long k);

// Union of the level-(k+1) blocks over the image of m_set(x, k).
GradedSet t_piece(const MetricContext& ctx, const FinitePoset& p,
                  const std::vector<long long>& phi, long long x, long long k);

// Verdict of a levelwise comparison with an explicit exception bound: the
// two sets must have equal slices at every level in [tail_level, horizon].
struct BoundedTailJudgment {
    std::string clause;
    std::string pair;
    long long tail_level = 1;
    long long horizon = 0;
    bool agree = false;
    long long first_disagreement = -1; // level of the first unequal slice
    std::string to_json() const;
};

BoundedTailJudgment judge_tail_equality(const GradedSet& lhs, const GradedSet& rhs,
                                        long long tail_level, long long horizon,
                                        std::string clause, std::string pair);

struct RepresentationPrefix {
    FinitePoset poset;
    std::vector<long long> phi;     // element index -> ordinal code (finite part)
    long long levels = 0;           // symbol levels 1..levels are populated
    std::vector<GradedSet> t_sets;  // per element: union of t_piece over 0..levels-1
    std::vector<GradedSet> a_sets;  // per element: ad_prefix of its image
};

RepresentationPrefix build_representation(const MetricContext& ctx, const FinitePoset& p,
                                          long long levels);

// Runs every applicable clause over all element pairs and returns the
// judgments in a deterministic order (clause letter, then indices):
//   (a) each element's block prefix is contained in its tree set (exact);
//   (b) for y not below-or-equal x, y's block prefix meets x's tree set only
//       below the tail;
//   (c) tree sets of a pair with a meet intersect, above the tail, in the
//       meet's tree set;
//   (d) each element's tree set minus its covers' tree sets is, above the
//       tail, exactly its block prefix;
//   (e) tree sets of incompatible pairs are disjoint above the tail.
// Tail levels are the joint covering level of the relevant images plus two
// (block slices at level j come from closures one level down, hence the
// extra shift).
std::vector<BoundedTailJudgment> representation_check(const MetricContext& ctx,
                                                      const FinitePoset& p, long long levels);

bool all_agree(const std::vector<BoundedTailJudgment>& js);

// ---------------------------------------------------------------------------
// Coherent assignments over a finite meet-closed family
// ---------------------------------------------------------------------------

// A finite family of graded sets with recorded order, meets, and per-pair
// exception levels.
struct CoherentFamily {
    std::vector<std::string> labels;
    std::vector<GradedSet> sets;
    std::vector<std::vector<bool>> below;     // below[i][j]: sets[i] sits under sets[j]
    std::vector<std::vector<long long>> meet; // index of the meet member
    std::vector<std::vector<long long>> tail; // symbol-level exception bound per pair
    long long horizon = 0;
};

// Validates an assignment g (one graded set per member): (1) g[i] is a
// subset of member i at every level; (2) whenever member i sits under
// member j, g[j] cut to member i agrees with g[i] above the pair's tail.
struct CoherentCheck {
    bool ok = true;
    std::vector<BoundedTailJudgment> judgments;
};

CoherentCheck coherent_check(const CoherentFamily& fam, const std::vector<GradedSet>& g);

// Pointwise symmetric difference; the group law of assignments.
std::vector<GradedSet> coherent_product(const std::vector<GradedSet>& f,
                                        const std::vector<GradedSet>& g);

// Searches for a single set C whose cut to each member agrees with g there
// above that member's recorded tail. Candidates are unions of the members
// and the g-values, enumerated by bitmask ascending (empty set first),
// capped; `capped` reports an inconclusive search.
struct TrivialityResult {
    bool trivial = false;
    bool capped = false;
    unsigned long long mask = 0;
    GradedSet c;
};

TrivialityResult triviality_search(const CoherentFamily& fam, const std::vector<GradedSet>& g,
                                   long long mask_cap = 4096);

// ---------------------------------------------------------------------------
// The two-copy construction and the recursive assignment builder
// ---------------------------------------------------------------------------

// Base must be a meet-semilattice (every pair has an inf). Internally builds
// the representation of base x {0,1} ((x,i) < (y,j) iff x < y and i = j) and
// the family T_x = T_(x,0) u T_(x,1) indexed by the base.
struct DoubledRepresentation {
    FinitePoset base;
    std::vector<long long> process_order; // base indices, monotone rank ascending
    RepresentationPrefix rep;             // over the doubled poset
    std::vector<long long> zero_of;       // base index -> doubled index of (x,0)
    std::vector<long long> one_of;        // base index -> doubled index of (x,1)
    std::vector<long long> copy_tail;     // per base element: level above which the
                                          // first copy's block must stay inside the value
    CoherentFamily family;                // member i = T over base element i
};

DoubledRepresentation build_doubled(const MetricContext& ctx, const FinitePoset& base,
                                    long long levels);

// One recursion step: given the assignment on everything strictly below y,
// find the least separator (bitmask over the lower values, ascending, empty
// first; each candidate cut to T_y and checked above the pair tails), then
// attach y's two blocks — inside the selected set S the second copy's block
// is removed, outside it is added. The step re-verifies: the second copy's
// block is exactly avoided/contained, the first copy's block is contained
// above its own tail, and coherence against everything below holds.
struct GsStepReport {
    long long y = -1;
    unsigned long long separator_mask = 0;
    GradedSet separator;
    GradedSet value;
    std::vector<BoundedTailJudgment> checks;
    bool ok = true;
};

GsStepReport g_s_step(const DoubledRepresentation& d, const std::vector<bool>& s, long long y,
                      const std::vector<GradedSet>& partial);

// Runs g_s_step over the whole base in monotone order; s[i] selects base
// element i. Per-step reports are appended to *reports when given.
std::vector<GradedSet> build_g_assignment(const DoubledRepresentation& d,
                                          const std::vector<bool>& s,
                                          std::vector<GsStepReport>* reports = nullptr);

} // namespace schemes
