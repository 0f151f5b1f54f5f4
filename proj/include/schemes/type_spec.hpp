#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace schemes {

// Level parameters. entries[0] carries only m (= 1); entries[k>=1] carry the
// full triple and must satisfy m_k = r_k + (m_{k-1} - r_k) * n_k.
struct TypeEntry {
    long long m = 0;
    long long n = 0;
    long long r = 0;
};

// Deterministic extension rule: Cantor pairs (r, j) enumerated by (r+j, r)
// ascending. A pair whose r is >= the current top m is consumed and skipped,
// so every feasible root size recurs infinitely often. n is always default_n.
struct DiagonalSchedule {
    long long default_n = 2;
    long long cursor = 0;
};

struct TypeSpec {
    std::vector<TypeEntry> entries;
    DiagonalSchedule schedule;

    long long top_level() const { return static_cast<long long>(entries.size()) - 1; }
    long long m(long long k) const;
    long long n(long long k) const; // k >= 1
    long long r(long long k) const; // k >= 1

    void validate() const;
    // Appends `steps` new entries via the schedule, advancing the cursor.
    void extend(long long steps);
    // Extends until m_top >= bound.
    void extend_until_m_at_least(long long bound);

    std::string to_json() const;
    static TypeSpec from_json(const std::string& text);
};

// cursor -> (r, j) in the diagonal enumeration
std::pair<long long, long long> diagonal_pair(long long cursor);

} // namespace schemes
