#pragma once

#include "schemes/block.hpp"

#include <string>
#include <vector>

namespace schemes {

// Root-tail-tail verdict for an ordered family: pairwise intersections all
// equal one root R, R sits below every tail, and tails are strictly ordered
// by the family's listed order.
struct RootTailTailReport {
    bool ok = false;
    Block root;
    std::string violation; // empty when ok
};

// Conventions for degenerate sizes: the empty family and one-set families are
// accepted with root = {} (capture positions then treat every index as tail).
RootTailTailReport check_root_tail_tail(const std::vector<Block>& family);

} // namespace schemes
