#include "schemes/delta_system.hpp"

namespace schemes {

RootTailTailReport check_root_tail_tail(const std::vector<Block>& family) {
    RootTailTailReport rep;
    if (family.size() <= 1) {
        rep.ok = true;
        return rep;
    }
    Block root = intersect(family[0], family[1]);
    for (size_t i = 0; i < family.size(); ++i) {
        for (size_t j = i + 1; j < family.size(); ++j) {
            if (intersect(family[i], family[j]) != root) {
                rep.violation = "pairwise intersection of members " + std::to_string(i) + "," +
                                std::to_string(j) + " differs from the common root";
                return rep;
            }
        }
    }
    for (size_t i = 0; i < family.size(); ++i) {
        if (!is_initial_segment(root, family[i])) {
            rep.violation = "root is not an initial segment of member " + std::to_string(i);
            return rep;
        }
        if (family[i].size() == root.size()) {
            rep.violation = "member " + std::to_string(i) + " has empty tail";
            return rep;
        }
    }
    for (size_t i = 0; i + 1 < family.size(); ++i) {
        const Block ti = diff(family[i], root);
        const Block tj = diff(family[i + 1], root);
        if (!(ti.back() < tj.front())) {
            rep.violation = "tails of members " + std::to_string(i) + "," + std::to_string(i + 1) +
                            " are not in strictly increasing position";
            return rep;
        }
    }
    rep.ok = true;
    rep.root = root;
    return rep;
}

} // namespace schemes
