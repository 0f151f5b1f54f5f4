#include "schemes/scheme.hpp"

#include "schemes/delta_system.hpp"
#include "schemes/errors.hpp"

#include <algorithm>
#include <set>

namespace schemes {

const std::vector<Block>& SchemePrefix::level(long long k) const {
    if (k < 0 || k >= static_cast<long long>(levels.size()))
        throw HorizonError("no stored level " + std::to_string(k));
    return levels[static_cast<size_t>(k)];
}

bool SchemePrefix::has_block(long long k, const Block& b) const {
    const auto& lv = level(k);
    return std::binary_search(lv.begin(), lv.end(), b);
}

DecompositionView canonical_decomposition(const Block& F, long long k, const TypeSpec& spec) {
    if (k < 1) throw ValidationError("level-0 blocks have no decomposition");
    const long long mk = spec.m(k), mprev = spec.m(k - 1), nk = spec.n(k), rk = spec.r(k);
    if (static_cast<long long>(F.size()) != mk)
        throw ValidationError("block size " + std::to_string(F.size()) + " does not match m_" +
                              std::to_string(k));
    DecompositionView view;
    view.root.assign(F.begin(), F.begin() + rk);
    const long long stride = mprev - rk;
    for (long long i = 0; i < nk; ++i) {
        Block piece = view.root;
        const long long a = rk + i * stride;
        piece.insert(piece.end(), F.begin() + a, F.begin() + a + stride);
        view.pieces.push_back(std::move(piece));
    }
    return view;
}

SchemePrefix unique_finite_scheme(const Block& X, const TypeSpec& spec) {
    spec.validate();
    if (!std::is_sorted(X.begin(), X.end()) || std::adjacent_find(X.begin(), X.end()) != X.end())
        throw ValidationError("domain must be strictly sorted");
    long long K = -1;
    for (long long k = 0; k <= spec.top_level(); ++k)
        if (spec.m(k) == static_cast<long long>(X.size())) K = k;
    if (K < 0)
        throw ValidationError("domain size " + std::to_string(X.size()) +
                              " is not a represented block size");

    SchemePrefix s;
    s.spec = spec;
    s.domain = X;
    s.levels.assign(static_cast<size_t>(K + 1), {});
    s.levels[static_cast<size_t>(K)] = {X};
    for (long long k = K; k >= 1; --k) {
        std::set<Block> next;
        for (const auto& F : s.levels[static_cast<size_t>(k)]) {
            auto view = canonical_decomposition(F, k, spec);
            for (auto& p : view.pieces) next.insert(std::move(p));
        }
        s.levels[static_cast<size_t>(k - 1)].assign(next.begin(), next.end());
    }
    // base sanity: level 0 must be the singletons of X
    if (s.levels[0].size() != X.size())
        throw ValidationError("internal: level 0 is not the singleton family");
    return s;
}

SchemePrefix omega_scheme_prefix(const TypeSpec& spec, long long K) {
    if (K < 0 || K > spec.top_level())
        throw HorizonError("type does not represent level " + std::to_string(K));
    Block X;
    for (long long i = 0; i < spec.m(K); ++i) X.push_back(Ord{0, i});
    auto s = unique_finite_scheme(X, spec);
    s.omega = true;
    return s;
}

SchemePrefix restrict_to(const SchemePrefix& s, const Ord& gamma) {
    SchemePrefix out;
    out.spec = s.spec;
    out.domain = below(s.domain, gamma);
    out.levels.resize(s.levels.size());
    for (size_t k = 0; k < s.levels.size(); ++k)
        for (const auto& b : s.levels[k])
            if (b.back() < gamma) out.levels[k].push_back(b);
    while (out.levels.size() > 1 && out.levels.back().empty()) out.levels.pop_back();
    return out;
}

std::vector<Block> blocks_containing(const SchemePrefix& s, long long k, const Block& points) {
    for (const auto& p : points)
        if (!block_contains(s.domain, p))
            throw HorizonError("point " + to_string(p) + " is outside the stored domain");
    std::vector<Block> out;
    for (const auto& b : s.level(k))
        if (is_subset(points, b)) out.push_back(b);
    return out;
}

namespace {

// search for n_k stored level-(k-1) blocks that reassemble F as a
// root-tail-tail system with root size r_k
bool reassembles(const Block& F, const std::vector<Block>& lower, long long nk, long long rk) {
    std::vector<Block> inside;
    for (const auto& g : lower)
        if (is_subset(g, F)) inside.push_back(g);
    const long long cnt = static_cast<long long>(inside.size());
    if (cnt < nk) return false;
    std::vector<size_t> idx(static_cast<size_t>(nk));
    // enumerate nk-subsets of inside in lexicographic index order
    for (long long i = 0; i < nk; ++i) idx[static_cast<size_t>(i)] = static_cast<size_t>(i);
    while (true) {
        std::vector<Block> cand;
        for (auto i : idx) cand.push_back(inside[i]);
        auto rep = check_root_tail_tail(cand);
        if (rep.ok && static_cast<long long>(rep.root.size()) == rk) {
            Block u;
            for (const auto& c : cand) u = unite(u, c);
            if (u == F) return true;
        }
        // next combination
        long long pos = nk - 1;
        while (pos >= 0 &&
               idx[static_cast<size_t>(pos)] == static_cast<size_t>(cnt - nk + pos))
            --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (long long j = pos + 1; j < nk; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    return false;
}

} // namespace

SchemeCheckReport is_scheme(const std::vector<std::vector<Block>>& levels, const TypeSpec& spec,
                            const Block& domain) {
    SchemeCheckReport rep;
    if (levels.empty()) {
        rep.fail("no levels");
        return rep;
    }
    if (static_cast<long long>(levels.size()) - 1 > spec.top_level()) {
        rep.fail("family has more levels than the type represents");
        return rep;
    }
    for (size_t k = 0; k < levels.size(); ++k) {
        for (const auto& b : levels[k]) {
            if (!std::is_sorted(b.begin(), b.end()) ||
                std::adjacent_find(b.begin(), b.end()) != b.end()) {
                rep.fail("level " + std::to_string(k) + " block " + to_string(b) +
                         " is not strictly sorted");
                continue;
            }
            if (static_cast<long long>(b.size()) != spec.m(static_cast<long long>(k)))
                rep.fail("size axiom: level " + std::to_string(k) + " block " + to_string(b) +
                         " has size " + std::to_string(b.size()) + ", expected m_" +
                         std::to_string(k));
            if (!is_subset(b, domain))
                rep.fail("level " + std::to_string(k) + " block " + to_string(b) +
                         " leaves the domain");
        }
    }
    // base level: exactly the singletons
    {
        std::set<Block> base(levels[0].begin(), levels[0].end());
        if (base.size() != domain.size()) {
            rep.fail("level 0 is not the full singleton family");
        } else {
            for (const auto& x : domain)
                if (!base.count(Block{x})) {
                    rep.fail("level 0 is missing {" + to_string(x) + "}");
                    break;
                }
        }
    }
    // property (i)
    for (size_t k = 0; k < levels.size(); ++k) {
        for (size_t i = 0; i < levels[k].size(); ++i)
            for (size_t j = i + 1; j < levels[k].size(); ++j) {
                const Block& F = levels[k][i];
                const Block& G = levels[k][j];
                const Block I = intersect(F, G);
                if (!is_initial_segment(I, F) || !is_initial_segment(I, G)) {
                    rep.fail("property (i): level " + std::to_string(k) + " blocks " +
                             to_string(F) + " and " + to_string(G) +
                             " do not meet in a common initial segment");
                }
            }
    }
    // property (ii), against stored lower level
    for (size_t k = 1; k < levels.size(); ++k) {
        const long long kk = static_cast<long long>(k);
        for (const auto& F : levels[k]) {
            if (static_cast<long long>(F.size()) != spec.m(kk)) continue; // size failure reported
            if (!reassembles(F, levels[k - 1], spec.n(kk), spec.r(kk)))
                rep.fail("property (ii): level " + std::to_string(k) + " block " + to_string(F) +
                         " is not a root-tail-tail union of n_" + std::to_string(k) +
                         " stored level-" + std::to_string(k - 1) + " blocks with root size r_" +
                         std::to_string(k));
        }
    }
    // cofinality: every pair in some block; all subsets at small domains
    auto covered = [&](const Block& a) {
        for (const auto& lv : levels)
            for (const auto& b : lv)
                if (is_subset(a, b)) return true;
        return false;
    };
    for (size_t i = 0; i < domain.size(); ++i)
        for (size_t j = i + 1; j < domain.size(); ++j)
            if (!covered(Block{domain[i], domain[j]}))
                rep.fail("cofinality: pair {" + to_string(domain[i]) + "," +
                         to_string(domain[j]) + "} lies in no block");
    if (domain.size() <= 8) {
        const size_t n = domain.size();
        for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
            Block a;
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) a.push_back(domain[i]);
            if (!covered(a)) {
                rep.fail("cofinality: subset " + to_string(a) + " lies in no block");
                break;
            }
        }
    }
    return rep;
}

OmegaGround::OmegaGround(TypeSpec spec, long long K) : prefix_(omega_scheme_prefix(spec, K)) {}

void OmegaGround::ensure_beyond(long long bound) {
    if (prefix_.spec.m(prefix_.top_level()) > bound) return;
    TypeSpec grown = prefix_.spec;
    grown.extend_until_m_at_least(bound + 1);
    prefix_ = omega_scheme_prefix(grown, grown.top_level());
}

long long OmegaGround::level_of_size(long long size) const {
    for (long long k = 0; k <= prefix_.spec.top_level(); ++k)
        if (prefix_.spec.m(k) == size) return k;
    return -1;
}

bool OmegaGround::is_omega_block(const Block& b) {
    if (b.empty()) return false;
    for (const auto& x : b)
        if (!x.is_finite()) throw ValidationError("omega-scheme blocks have finite elements");
    ensure_beyond(b.back().fin);
    const long long k = level_of_size(static_cast<long long>(b.size()));
    if (k < 0) return false;
    return prefix_.has_block(k, b);
}

} // namespace schemes
