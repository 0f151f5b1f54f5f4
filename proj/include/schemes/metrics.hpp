#pragma once

#include <optional>
#include <map>
#include <vector>

#include "schemes/block.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

// Derived distance-like functions over a scheme prefix. All tables are
// precomputed from the stored blocks at construction time; queries outside
// the represented horizon throw HorizonError rather than guessing.
class MetricContext {
public:
    explicit MetricContext(SchemePrefix prefix);

    const SchemePrefix& prefix() const { return prefix_; }
    const Block& domain() const { return prefix_.domain; }

    // Least k such that some level-k block contains both a and b; rho(a,a)=0.
    long long rho(Ord a, Ord b) const;

    // Max pairwise rho over a nonempty set; 0 on singletons.
    long long rho_max(const Block& a) const;

    // (a)_k: the common value of F cap (a+1) over every level-k block F
    // containing a. Identical across choices of F; checked at build time.
    const Block& closure(Ord a, long long k) const;

    // (a)_k minus {a}.
    Block closure_strict(Ord a, long long k) const;

    // |(a)_k minus {a}|, equivalently the position of a inside any level-k
    // block containing it.
    long long k_card(Ord a, long long k) const;

    // Least k with k_card(a,k) != k_card(b,k); empty optional means the
    // arguments are equal (no finite level separates them).
    std::optional<long long> delta(Ord a, Ord b) const;

    // Piece index of a in the canonical decomposition of any level-k block
    // containing it; -1 when a lies in the root. By convention 0 when k = 0
    // or when level-k blocks are larger than the whole domain.
    long long xi(Ord a, long long k) const;

    bool in_domain(Ord a) const { return index_of(a) >= 0; }

private:
    long long index_of(Ord a) const;           // -1 when absent
    long long require_index(Ord a) const;       // throws ValidationError

    SchemePrefix prefix_;
    std::vector<Ord> points_;                    // sorted domain
    std::map<Ord, long long> index_;
    long long top_ = 0;                          // top stored level

    // closures_[k][i]: (points_[i])_k, absent when no level-k block covers it
    std::vector<std::vector<std::optional<Block>>> closures_;
    // xi_[k][i]: piece index / -1, absent when uncovered at level k
    std::vector<std::vector<std::optional<long long>>> xi_;
    // rho_[i][j]: least common-block level, -1 when no represented level works
    std::vector<std::vector<long long>> rho_;
};

} // namespace schemes
