#pragma once

#include "schemes/ordinal.hpp"

#include <algorithm>
#include <vector>

namespace schemes {

// A block is a strictly sorted vector of ordinal codes.
using Block = std::vector<Ord>;

inline bool block_contains(const Block& b, const Ord& x) {
    return std::binary_search(b.begin(), b.end(), x);
}

inline bool is_subset(const Block& a, const Block& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Block intersect(const Block& a, const Block& b) {
    Block out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Block unite(const Block& a, const Block& b) {
    Block out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Block diff(const Block& a, const Block& b) {
    Block out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// a = first |a| elements of b
inline bool is_initial_segment(const Block& a, const Block& b) {
    if (a.size() > b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin());
}

// elements of b strictly below x
inline Block below(const Block& b, const Ord& x) {
    Block out;
    for (const auto& e : b)
        if (e < x) out.push_back(e);
    return out;
}

// elements of b at or above x
inline Block at_or_above(const Block& b, const Ord& x) {
    Block out;
    for (const auto& e : b)
        if (e >= x) out.push_back(e);
    return out;
}

inline Block sorted_unique(Block b) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

} // namespace schemes
