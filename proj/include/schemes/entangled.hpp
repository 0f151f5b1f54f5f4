#pragma once

#include <string>
#include <vector>

#include "schemes/metrics.hpp"

namespace schemes {

// ---------------------------------------------------------------------------
// Lexicographic order on integer sequences
// ---------------------------------------------------------------------------

// -1 / 0 / +1 by the first disagreeing coordinate; sequences must have equal
// length (prefix comparison).
int lex_compare(const std::vector<long long>& f, const std::vector<long long>& g);

// ---------------------------------------------------------------------------
// Realization patterns
// ---------------------------------------------------------------------------

// t(i) records the order relation at coordinate i: '<' or '>'.
struct RealizationType {
    std::string t;

    bool operator==(const RealizationType&) const = default;
};

// Coordinatewise comparison of two equal-length tuples; a tie at any
// coordinate is a ValidationError.
RealizationType realization(const std::vector<long long>& a, const std::vector<long long>& b);

// Same pattern over tuples of sequences, compared lexicographically.
RealizationType realization_lex(const std::vector<std::vector<long long>>& a,
                                const std::vector<std::vector<long long>>& b);

// The permutation listing positions in increasing value order: h(i) is the
// position holding the i-th smallest value. Ties are a ValidationError.
std::vector<long long> order_pattern(const std::vector<long long>& values);

// ---------------------------------------------------------------------------
// Subset codes and the entangled vectors
// ---------------------------------------------------------------------------

// C^k_i: the subset of {0..m_k-1} whose characteristic vector is the binary
// expansion of i-1, wrapping modulo 2^{m_k} (the enumeration may repeat);
// i = 0 gives the empty set by convention. Requires 0 <= i < n_{k+1}.
std::vector<long long> subset_code(const TypeSpec& spec, long long k, long long i);

// f_alpha on levels 0..K: 0 at level 0 and wherever the point sits in a
// root; otherwise +/- the piece index, the sign set by whether the one-level-
// down closure size lands in that index's subset code.
struct EntangledVector {
    Ord alpha;
    std::vector<long long> values;
    std::string to_json() const;
};

EntangledVector entangled_f(const MetricContext& ctx, const Ord& alpha, long long K);

// ---------------------------------------------------------------------------
// Realizing a pattern inside a captured family
// ---------------------------------------------------------------------------

// Given a full family c_0..c_{n_l-1} of pairwise disjoint k-tuples whose
// sets are captured (cardinality-split flavor) at level l, computes the
// member index i whose subset code matches {|c_0(j)| one level down :
// t(j) = '<'} and verifies T(c_0, c_i) = t on the entangled vectors cut at
// l. A missing index or a failed verification is reported in the outcome,
// never suppressed; a family that is not captured is a ValidationError.
struct RealizationOutcome {
    bool ok = false;
    long long index = -1;
    RealizationType observed; // realization of (c_0, c_index) when index >= 0
    std::string reason;       // nonempty on failure
};

RealizationOutcome captured_realization_check(const MetricContext& ctx,
                                              const std::vector<Block>& family, long long level,
                                              const RealizationType& t);

} // namespace schemes
