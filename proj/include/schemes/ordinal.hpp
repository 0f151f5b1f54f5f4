#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace schemes {

// Ordinal below w^2, encoded as w*limit + fin. Total order is lexicographic on
// (limit, fin), which matches the ordinal order.
struct Ord {
    long long limit = 0;
    long long fin = 0;

    Ord() = default;
    Ord(long long l, long long f) : limit(l), fin(f) {}
    // implicit from a natural number; keeps fixture code readable
    Ord(long long n) : limit(0), fin(n) {}
    Ord(int n) : limit(0), fin(n) {}

    auto operator<=>(const Ord&) const = default;

    bool is_finite() const { return limit == 0; }

    // successor within the same w-block
    Ord next() const { return Ord{limit, fin + 1}; }
    Ord plus(long long k) const { return Ord{limit, fin + k}; }
};

inline Ord omega(long long k = 1) { return Ord{k, 0}; }

std::string to_string(const Ord& o);
std::string to_string(const std::vector<Ord>& xs);

} // namespace schemes
