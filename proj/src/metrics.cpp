#include "schemes/metrics.hpp"

#include <algorithm>

#include "schemes/errors.hpp"
#include "schemes/ordinal.hpp"

namespace schemes {

MetricContext::MetricContext(SchemePrefix prefix) : prefix_(std::move(prefix)) {
    points_ = prefix_.domain;
    for (long long i = 0; i < (long long)points_.size(); ++i)
        index_[points_[i]] = i;
    top_ = prefix_.top_level();
    const long long n = (long long)points_.size();

    closures_.assign(top_ + 1, std::vector<std::optional<Block>>(n));
    xi_.assign(top_ + 1, std::vector<std::optional<long long>>(n));
    rho_.assign(n, std::vector<long long>(n, -1));
    for (long long i = 0; i < n; ++i) rho_[i][i] = 0;

    for (long long k = 0; k <= top_; ++k) {
        for (const Block& f : prefix_.level(k)) {
            // closures and position cardinalities: prefixes of f
            for (size_t pos = 0; pos < f.size(); ++pos) {
                long long i = require_index(f[pos]);
                Block cl(f.begin(), f.begin() + (long long)pos + 1);
                auto& slot = closures_[k][i];
                if (slot) {
                    if (*slot != cl)
                        throw SchemeError("closure of " + to_string(f[pos]) +
                                          " at level " + std::to_string(k) +
                                          " differs across containing blocks");
                } else {
                    slot = std::move(cl);
                }
            }
            // rho: first level at which a pair shares a block
            for (size_t ai = 0; ai < f.size(); ++ai)
                for (size_t bi = ai + 1; bi < f.size(); ++bi) {
                    long long i = require_index(f[ai]);
                    long long j = require_index(f[bi]);
                    if (rho_[i][j] < 0) rho_[i][j] = rho_[j][i] = k;
                }
            // xi: root membership / piece index in the decomposition
            if (k >= 1) {
                DecompositionView dv = canonical_decomposition(f, k, prefix_.spec);
                for (const Ord& a : f) {
                    long long i = require_index(a);
                    long long val;
                    if (block_contains(dv.root, a)) {
                        val = -1;
                    } else {
                        val = -1;
                        for (size_t pi = 0; pi < dv.pieces.size(); ++pi)
                            if (block_contains(dv.pieces[pi], a)) { val = (long long)pi; break; }
                        if (val < 0)
                            throw SchemeError("decomposition pieces miss an element");
                    }
                    auto& slot = xi_[k][i];
                    if (slot) {
                        if (*slot != val)
                            throw SchemeError("piece index of " + to_string(a) +
                                              " at level " + std::to_string(k) +
                                              " differs across containing blocks");
                    } else {
                        slot = val;
                    }
                }
            }
        }
    }
}

long long MetricContext::index_of(Ord a) const {
    auto it = index_.find(a);
    return it == index_.end() ? -1 : it->second;
}

long long MetricContext::require_index(Ord a) const {
    long long i = index_of(a);
    if (i < 0)
        throw ValidationError("point " + to_string(a) + " is outside the scheme domain");
    return i;
}

long long MetricContext::rho(Ord a, Ord b) const {
    long long v = rho_[require_index(a)][require_index(b)];
    if (v < 0)
        throw HorizonError("no represented level holds both " + to_string(a) +
                           " and " + to_string(b));
    return v;
}

long long MetricContext::rho_max(const Block& a) const {
    if (a.empty())
        throw ValidationError("rho_max needs a nonempty set");
    long long best = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            best = std::max(best, rho(a[i], a[j]));
    return best;
}

const Block& MetricContext::closure(Ord a, long long k) const {
    long long i = require_index(a);
    if (k < 0 || k > top_)
        throw HorizonError("closure level " + std::to_string(k) +
                           " is beyond the stored prefix");
    const auto& slot = closures_[k][i];
    if (!slot)
        throw HorizonError("no level-" + std::to_string(k) + " block covers " +
                           to_string(a));
    return *slot;
}

Block MetricContext::closure_strict(Ord a, long long k) const {
    Block cl = closure(a, k);
    cl.pop_back();
    return cl;
}

long long MetricContext::k_card(Ord a, long long k) const {
    return (long long)closure(a, k).size() - 1;
}

std::optional<long long> MetricContext::delta(Ord a, Ord b) const {
    long long ia = require_index(a);
    long long ib = require_index(b);
    if (a == b) return std::nullopt;
    // Coverage is downward closed in k, so scan the jointly covered levels.
    // A split seen there is final: closures never change as prefixes grow.
    for (long long k = 1; k <= top_; ++k) {
        if (!closures_[k][ia] || !closures_[k][ib]) break;
        if ((long long)closures_[k][ia]->size() != (long long)closures_[k][ib]->size()) return k;
    }
    if (rho_[ia][ib] >= 0)
        throw SchemeError("no cardinality split at or below rho(" + to_string(a) + "," +
                          to_string(b) + ")");
    throw HorizonError("split level of " + to_string(a) + "," + to_string(b) +
                       " is not decidable in this prefix");
}

long long MetricContext::xi(Ord a, long long k) const {
    long long i = require_index(a);
    if (k < 0)
        throw ValidationError("negative level");
    if (k == 0) return 0;
    if (k > top_) {
        // Levels whose blocks cannot fit in the domain carry index 0.
        if (k <= prefix_.spec.top_level() &&
            prefix_.spec.m(k) > (long long)points_.size())
            return 0;
        throw HorizonError("level " + std::to_string(k) +
                           " is beyond the stored prefix");
    }
    const auto& slot = xi_[k][i];
    if (!slot) {
        if (prefix_.spec.m(k) > (long long)points_.size()) return 0;
        throw HorizonError("no level-" + std::to_string(k) + " block covers " +
                           to_string(a));
    }
    return *slot;
}

} // namespace schemes
