#include "schemes/ordinal.hpp"

namespace schemes {

std::string to_string(const Ord& o) {
    if (o.limit == 0) return std::to_string(o.fin);
    std::string s = (o.limit == 1) ? "w" : "w*" + std::to_string(o.limit);
    if (o.fin != 0) s += "+" + std::to_string(o.fin);
    return s;
}

std::string to_string(const std::vector<Ord>& xs) {
    std::string s = "{";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += to_string(xs[i]);
    }
    s += "}";
    return s;
}

} // namespace schemes
