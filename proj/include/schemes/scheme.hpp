#pragma once

#include "schemes/block.hpp"
#include "schemes/type_spec.hpp"

#include <string>
#include <vector>

namespace schemes {

struct DecompositionView {
    Block root;                // first r_k elements of the block
    std::vector<Block> pieces; // n_k pieces, each of size m_{k-1}, sharing the root
};

// Leveled family over a finite domain. Constructed prefixes satisfy:
// (i) same-level blocks meet in a common initial segment of both,
// (ii) each level-k block (k >= 1) is a root-tail-tail system of n_k
//      level-(k-1) blocks with root size r_k,
// and every finite subset of the domain lies in some block.
struct SchemePrefix {
    TypeSpec spec;
    std::vector<Ord> domain; // sorted
    std::vector<std::vector<Block>> levels;
    // When set, the domain is {0..m_K-1} and the family is the full level-K
    // prefix of the canonical scheme over w. Queries outside the stored
    // domain raise HorizonError; see OmegaGround for sound growth.
    bool omega = false;

    long long top_level() const { return static_cast<long long>(levels.size()) - 1; }
    const std::vector<Block>& level(long long k) const;
    bool has_block(long long k, const Block& b) const;
};

// F(X): the unique scheme over X. |X| must be a represented m_k.
SchemePrefix unique_finite_scheme(const Block& X, const TypeSpec& spec);

// Decomposition of a level-k block, k >= 1. Offsets a_i = r_k + i*(m_{k-1}-r_k).
DecompositionView canonical_decomposition(const Block& F, long long k, const TypeSpec& spec);

// F(m_K) over {0..m_K-1}, tagged as an w-prefix.
SchemePrefix omega_scheme_prefix(const TypeSpec& spec, long long K);

// Blocks lying entirely below gamma. A filter; the result is a partial view
// and need not satisfy cofinality over the shrunken domain.
SchemePrefix restrict_to(const SchemePrefix& s, const Ord& gamma);

// All level-k blocks containing every listed point.
std::vector<Block> blocks_containing(const SchemePrefix& s, long long k, const Block& points);

struct SchemeCheckReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string v) {
        ok = false;
        violations.push_back(std::move(v));
    }
};

// Independent re-check of the scheme axioms: sizes, singleton base, property
// (i), property (ii) via exhaustive root-tail-tail search among stored
// level-(k-1) blocks (not via the constructor's formula), pair cofinality,
// and a full subset cofinality sweep for domains of size <= 8.
SchemeCheckReport is_scheme(const std::vector<std::vector<Block>>& levels, const TypeSpec& spec,
                            const Block& domain);

// Growable handle on the canonical scheme over w. Extension via the type
// schedule is deterministic, so growth answers queries the fixed-K prefix
// must refuse. Growth is geometric in m, so targets stay small.
class OmegaGround {
  public:
    OmegaGround(TypeSpec spec, long long K);

    const SchemePrefix& prefix() const { return prefix_; }
    const TypeSpec& spec() const { return prefix_.spec; }

    // ensure m_top > bound (grows the prefix if needed)
    void ensure_beyond(long long bound);

    // membership of b in the canonical scheme over w; grows as needed.
    // Elements must be finite codes.
    bool is_omega_block(const Block& b);
    // level of b by size, or -1 when |b| is not a represented block size
    long long level_of_size(long long size) const;

  private:
    SchemePrefix prefix_;
};

} // namespace schemes
