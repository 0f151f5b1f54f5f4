#pragma once

#include <map>
#include <optional>
#include <vector>

#include "schemes/block.hpp"
#include "schemes/forcing.hpp"
#include "schemes/metrics.hpp"

namespace schemes {

// Finite piece of a ladder assignment: for each listed limit code delta, a
// strictly increasing finite set C_delta below delta. An absent entry is a
// refusal (HorizonError), never silently empty; an empty entry is data.
struct CSequencePrefix {
    std::map<Ord, Block> entries;

    bool has(const Ord& delta) const { return entries.count(delta) > 0; }
    const Block& at(const Ord& delta) const; // HorizonError when absent
    void validate() const;                   // limit keys, increasing, < key
};

inline bool is_limit_code(const Ord& o) { return o.fin == 0 && o.limit >= 1; }

// Lim_0 = limit codes; Lim_{n+1} = limit codes whose listed set lies inside
// Lim_n. Descends through the listed entries; missing data raises
// HorizonError rather than guessing.
bool lim_n(const CSequencePrefix& c, long long n, const Ord& delta);

// C^0_delta = C_delta; C^{n+1}_delta = union of C^n_xi over xi in C_delta.
Block c_n(const CSequencePrefix& c, long long n, const Ord& delta);

// Tuple (n, delta, k, A): delta of rank n, the k-closures of C^n_delta in
// root-tail-tail position, A at or above delta.
struct GoodTuple {
    long long n = 0;
    Ord delta;
    long long k = 0;
    Block a;
};

// Common root of the k-closure system of C^n_delta. Validates the tuple:
// ValidationError when the shape is wrong (rank, A below delta, closures not
// in root-tail-tail position), HorizonError when the listed data is too thin
// to decide (missing entries, fewer than two closure members).
Block good_tuple_root(const MetricContext& ctx, const CSequencePrefix& c, const GoodTuple& t);

// (l, F) accepts t with tail selection d. The arity guard n_l > t.n runs
// first and yields plain false before any ladder lookup; then |d| = t.n and
// d inside C^{t.n}_{t.delta}; then, decomposing F arithmetically (cut blocks
// that are not stored members are legal inputs), t.a inside piece t.n minus
// the root, and each (d(i))_k inside piece i with
// (d(i))_k cap root(F) = good_tuple_root.
bool accepts(const MetricContext& ctx, const CSequencePrefix& c, long long l, const Block& f,
             const GoodTuple& t, const Block& d);

// d, read as a family of singletons, is captured at level l in the
// Delta-flavoured sense (piece indices 0..|d|-1, pairwise Delta equal to l).
bool is_delta_captured_set(const MetricContext& ctx, const Block& d, long long l);

// Captured at l and Delta(alpha, x) >= l for every member x (an undefined
// Delta counts as large).
bool is_adequate(const MetricContext& ctx, const Block& d, long long l, const Ord& alpha);

struct AdequacyScan {
    long long j = 0;
    bool vacuous = false; // only the empty selection qualified
    Block witness;        // first qualifying selection of size j (empty when vacuous)
};

// Largest j <= n_l with an adequate selection in [c_delta]^j; j descending,
// index combinations lexicographic, first hit wins.
AdequacyScan j_max_for_alpha(const MetricContext& ctx, const Block& c_delta, const Ord& alpha,
                             long long l);

// Variant for a point outside the stored ground: the Delta clause is
// replaced by a prescribed (l-1)-cardinality for every member.
AdequacyScan j_max_for_target(const MetricContext& ctx, const Block& c_delta,
                              long long target_card, long long l);

// Least domain point strictly between lo and hi whose strict k-closure
// equals target; HorizonError when the stored domain offers none.
Ord unbounded_closure_search(const MetricContext& ctx, long long k, const Block& target,
                             const Ord& lo, const Ord& hi);

// One arity-raising step: given a condition p and a tuple t whose instances
// the extended family must keep witnessing, produce q <= p and a level l
// such that (l, q) accepts t, rebuilding the witness across the limit. The
// returned q is always re-verified (condition, order, acceptance); a missing
// ladder entry or an exhausted stored family raises HorizonError. The metric
// context must be built over the ground's current stored prefix.
struct IhRhoResult {
    Block q;
    long long l = -1;
    Block f;       // scanned block that was cut (p itself when already)
    Block d_prime; // tail selection certifying the acceptance of t by (l, q)
    Block a_prime; // augmented A of the delegated instance (empty when already)
    std::optional<Ord> delta_prime; // below-gamma case: chosen ladder member
    std::optional<Ord> nu;          // below-gamma case: iterated-ladder member
    std::optional<Ord> alpha;       // fresh closure point (both cases)
    std::optional<Ord> beta;        // at-gamma case: homogeneity-matched cut point
    bool already = false;           // p itself accepted; nothing was built
};

IhRhoResult ih_rho_extension_step(ForcingGround& g, const MetricContext& ctx,
                                  const CSequencePrefix& c, const Block& p, const GoodTuple& t,
                                  long long k_prime);

// One capture-counting step: produce q <= p and (l, j) such that the scheme
// over q pins r_l = |(alpha)_{l-1} cap delta| and the piece index of alpha
// at l to the maximal adequate selection size j. Outcomes: Pinned (facts
// verified on the scheme over q), FullCapture (the data admits j = n_l, the
// hypothesis violation, reported with its witness), Delegated (alpha below
// the forcing limit; the ground already carries the instance).
struct IhDeltaResult {
    enum class Outcome { Pinned, FullCapture, Delegated };
    Outcome outcome = Outcome::Pinned;
    Block q;
    long long l = -1;
    long long j = -1;
    bool vacuous = false; // j = 0 with only the empty selection
    Block witness;        // adequate selection of size j (empty when vacuous)
    Block g_block;        // stored block cut to form q (empty when none was cut)
    std::optional<Ord> alpha_j;     // at-gamma case: pin point inside piece j
    std::optional<Ord> alpha_proxy; // below-gamma case: ground proxy for alpha
    std::optional<Ord> beta;        // below-gamma case: cut point
    long long target_card = -1;     // at-gamma case: prescribed (l-1)-cardinality
    bool already = false;           // p itself pinned the instance
};

IhDeltaResult ih_delta_extension_step(ForcingGround& g, const MetricContext& ctx,
                                      const CSequencePrefix& c, const Block& p, const Ord& delta,
                                      const Ord& alpha, long long k);

} // namespace schemes
