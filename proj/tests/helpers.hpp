#pragma once

#include "schemes/metrics.hpp"
#include "schemes/scheme.hpp"
#include "schemes/type_spec.hpp"

namespace schemes::test {

// m = [1,2,4,6,10]: two pieces at the top, a three-way level in the middle.
inline TypeSpec t4() {
    TypeSpec s;
    s.entries = {{1, 0, 0}, {2, 2, 0}, {4, 3, 1}, {6, 2, 2}, {10, 2, 2}};
    return s;
}

// m = [1,2,6]: one fat five-way level, used by the realization fixtures.
inline TypeSpec te() {
    TypeSpec s;
    s.entries = {{1, 0, 0}, {2, 2, 0}, {6, 5, 1}};
    return s;
}

// m = [1,2,4,10,26]: three-way from level 2 up, domain past 20.
inline TypeSpec talt() {
    TypeSpec s;
    s.entries = {{1, 0, 0}, {2, 2, 0}, {4, 3, 1}, {10, 3, 1}, {26, 3, 2}};
    return s;
}

inline SchemePrefix f10() { return omega_scheme_prefix(t4(), 4); }
inline SchemePrefix f26() { return omega_scheme_prefix(talt(), 4); }
inline SchemePrefix f6e() { return omega_scheme_prefix(te(), 2); }

inline Block iota(long long n, long long start = 0) {
    Block b;
    for (long long i = 0; i < n; ++i) b.push_back(Ord{0, start + i});
    return b;
}

inline Ord w(long long f = 0) { return Ord{1, f}; }
inline Ord w2(long long f = 0) { return Ord{2, f}; }
inline Ord w3(long long f = 0) { return Ord{3, f}; }

} // namespace schemes::test
