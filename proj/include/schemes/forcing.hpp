#pragma once

#include <functional>
#include <string>
#include <vector>

#include "schemes/block.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

// Ground family for the block-extension poset over a limit gamma. Two
// flavors: the canonical growable family over w, and a fixed snapshot over a
// larger limit (typically the output of a previous extension). The fixed
// flavor refuses queries it cannot decide; the growable one extends itself.
class ForcingGround {
  public:
    explicit ForcingGround(OmegaGround& g);          // gamma = w, growable
    ForcingGround(SchemePrefix fixed, Ord gamma);    // snapshot semantics

    const Ord& gamma() const { return gamma_; }
    const SchemePrefix& prefix() const;
    const TypeSpec& spec() const { return prefix().spec; }
    bool growable() const { return omega_ != nullptr; }

    // level whose blocks have this size, growing the type if allowed;
    // -1 when the size is skipped, HorizonError when undecidable
    long long level_of_size(long long size);

    // membership among level-k blocks; HorizonError when undecidable
    bool has_level_block(long long k, const Block& f);

    // is the nonempty sorted i an initial segment of some level-k block
    bool some_block_starts_with(long long k, const Block& i);

    // one more level of the growable family; false on snapshots
    bool grow_one();

  private:
    void ensure_covers(const Block& b);

    OmegaGround* omega_ = nullptr;
    SchemePrefix fixed_;
    Ord gamma_;
};

// reduction of p to delta: p below delta, then the gap above max(p cap delta)
// collapsed to consecutive codes; {0..|p|-1} when p misses delta entirely
Block red(const Block& p, const Ord& delta);

// cut of f at alpha over gamma: keep f below alpha, move the rest to the
// fresh tail [gamma, gamma + |f at-or-above alpha|)
Block cut_block(const Block& f, const Ord& alpha, const Ord& gamma);

// max(p cap gamma); ValidationError when p has nothing below gamma
Ord alpha_p(const Block& p, const Ord& gamma);

// Both membership tests, reported separately (no agreement enforcement):
// direct = clauses (I)-(III) against the stored family, reduced = red(p) is
// itself a stored block of the matching level.
struct ConditionProbe {
    bool direct = false;
    bool reduced = false;
    long long k = -1;
    std::string reason; // first failed clause of the direct check
};
ConditionProbe probe_condition(ForcingGround& g, const Block& p);

// Verdict with the two probes required to agree (SchemeError otherwise).
// The empty set is a condition with k = -1.
struct ConditionCheck {
    bool ok = false;
    long long k = -1;
    std::string reason;
};
ConditionCheck is_condition(ForcingGround& g, const Block& p);

// p <= q: q is empty or a block of the scheme over p's points
bool leq(ForcingGround& g, const Block& p, const Block& q);

// Dense-set scheduling: a named predicate plus a deterministic strengthening
// map. Extenders return their input when the predicate already holds, scan
// cuts of stored blocks (levels ascending, blocks in stored order, cut
// positions ascending) otherwise, and raise HorizonError when no stored
// witness works.
struct DenseSetSpec {
    std::string id;
    std::function<bool(ForcingGround&, const Block&)> pred;
    std::function<Block(ForcingGround&, const Block&)> extend;
};

// Least cut of a stored block (levels ascending, blocks in stored order, cut
// positions ascending) that is a condition below p and satisfies pred. Never
// considers p itself. Growable grounds retry after bounded growth;
// HorizonError when the family has no reachable witness.
Block least_strengthening(ForcingGround& g, const Block& p,
                          const std::function<bool(ForcingGround&, const Block&)>& pred);

DenseSetSpec cofinal_dense(const Ord& beta);

// Predicate: some block f of the scheme over p's points has its whole set a
// meets f's first piece and root(f) = f cap alpha.
DenseSetSpec ih1_dense(const Block& a, const Ord& alpha);

struct Chain {
    std::vector<Block> conditions; // weakest first, strengthened left to right
    std::vector<std::string> met;  // ids satisfied by the final condition
};

// Greedy pass over the schedule from start; every extender output is checked
// (predicate holds, ordering holds) before it joins the chain.
Chain run_filter(ForcingGround& g, const Block& start, const std::vector<DenseSetSpec>& schedule);

struct ExtensionResult {
    SchemePrefix combined; // stored ground family plus the final condition's scheme
    SchemePrefix view;     // the final condition's scheme alone
    Block final_points;
    Chain chain;
};

// Canonical schedule: cofinal densities for the first `horizon` points of
// the fresh tail, interleaved one-for-one with the requested extra sets
// (leftovers appended), starting from the empty condition.
ExtensionResult extend_to_next_limit(ForcingGround& g, long long horizon,
                                     const std::vector<DenseSetSpec>& extras);

} // namespace schemes
