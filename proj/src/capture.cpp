#include "schemes/capture.hpp"

#include <algorithm>

#include "schemes/errors.hpp"

namespace schemes {

namespace {

DeltaSystemResult build_witness(const std::vector<Block>& family, bool strict) {
    DeltaSystemResult out;
    if (strict && family.size() < 2) {
        out.violation = "family has fewer than 2 sets";
        return out;
    }
    for (size_t i = 1; i < family.size(); ++i)
        if (family[i].size() != family[0].size()) {
            out.violation = "sets differ in size";
            return out;
        }
    RootTailTailReport rep = check_root_tail_tail(family);
    if (!rep.ok) {
        out.violation = rep.violation;
        return out;
    }
    DeltaSystemWitness w;
    w.sets = family;
    w.root = rep.root;
    w.r = (long long)rep.root.size();
    out.witness = std::move(w);
    return out;
}

// next n-combination of {0..total-1} in lexicographic order
bool next_combination(std::vector<long long>& idx, long long total) {
    long long n = (long long)idx.size();
    for (long long i = n - 1; i >= 0; --i) {
        if (idx[i] < total - (n - i)) {
            ++idx[i];
            for (long long j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::string StarSet::label() const {
    if (rho && delta) return "rho,delta";
    if (rho) return "rho";
    if (delta) return "delta";
    return "";
}

DeltaSystemResult delta_system_root(const std::vector<Block>& family) {
    return build_witness(family, true);
}

DeltaSystemResult witness_any_size(const std::vector<Block>& family) {
    return build_witness(family, false);
}

CaptureOutcome is_captured(const MetricContext& ctx, const DeltaSystemWitness& d, long long l,
                           StarSet star) {
    CaptureOutcome out;
    if (d.sets.empty()) {
        out.clause = "shape";
        out.reason = "empty family";
        return out;
    }
    if (l < 1 || l > ctx.prefix().spec.top_level())
        throw HorizonError("capture level " + std::to_string(l) + " is not represented");
    const long long n = d.size();
    const long long width = d.width();

    // (I) root positions sit below every decomposition at l, tail position a
    // of member i lands in piece i
    for (long long a = 0; a < d.r; ++a) {
        if (ctx.xi(d.root[a], l) != -1) {
            out.clause = "I";
            out.reason = "root element " + to_string(d.root[a]) + " has piece index " +
                         std::to_string(ctx.xi(d.root[a], l)) + " at level " + std::to_string(l);
            return out;
        }
    }
    for (long long i = 0; i < n; ++i)
        for (long long a = d.r; a < width; ++a) {
            long long got = ctx.xi(d.sets[i][a], l);
            if (got != i) {
                out.clause = "I";
                out.reason = "element " + to_string(d.sets[i][a]) + " of member " +
                             std::to_string(i) + " has piece index " + std::to_string(got) +
                             " at level " + std::to_string(l);
                return out;
            }
        }

    // (II) pairwise tail values
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            for (long long a = d.r; a < width; ++a) {
                const Ord& x = d.sets[i][a];
                const Ord& y = d.sets[j][a];
                if (star.rho && ctx.rho(x, y) != l) {
                    out.clause = "II:rho";
                    out.reason = "rho(" + to_string(x) + "," + to_string(y) + ") = " +
                                 std::to_string(ctx.rho(x, y)) + " != " + std::to_string(l);
                    return out;
                }
                if (star.delta) {
                    auto dv = ctx.delta(x, y);
                    if (!dv || *dv != l) {
                        out.clause = "II:delta";
                        out.reason = "delta(" + to_string(x) + "," + to_string(y) + ") != " +
                                     std::to_string(l);
                        return out;
                    }
                }
            }

    CaptureReport rep;
    rep.witness = d;
    rep.level = l;
    rep.star = star;
    rep.full = (n == ctx.prefix().spec.n(l));
    out.report = std::move(rep);
    return out;
}

std::vector<CaptureReport> search_captured(const MetricContext& ctx, const std::vector<Block>& s,
                                           long long n, StarSet star, long long level_lo,
                                           long long level_hi) {
    std::vector<CaptureReport> out;
    if (n < 1 || n > (long long)s.size()) return out;

    std::vector<long long> idx(n);
    for (long long i = 0; i < n; ++i) idx[i] = i;
    do {
        std::vector<Block> family;
        family.reserve(n);
        for (long long i : idx) family.push_back(s[i]);
        DeltaSystemResult w = witness_any_size(family);
        if (!w.ok()) continue;
        for (long long l = level_lo; l <= level_hi; ++l) {
            CaptureOutcome o = is_captured(ctx, *w.witness, l, star);
            if (!o.ok()) continue;
            if (w.witness->r == 0)
                for (long long i = 0; i < n; ++i)
                    for (const Ord& e : w.witness->sets[i])
                        if (ctx.xi(e, l) != i)
                            throw SchemeError("disjoint captured family with a stray piece index");
            out.push_back(*o.report);
        }
    } while (next_combination(idx, (long long)s.size()));
    return out;
}

RefinementReport refine_to_uniform_system(const std::vector<Block>& s, const MetricContext& ctx) {
    RefinementReport best;
    best.reason = "no subfamily of size >= 2 qualifies";

    const long long total = (long long)s.size();
    for (long long size = total; size >= 2; --size) {
        std::vector<long long> idx(size);
        for (long long i = 0; i < size; ++i) idx[i] = i;
        do {
            // members in block order (= tail order for a root-tail-tail
            // family), indices carried along
            std::vector<long long> order = idx;
            std::sort(order.begin(), order.end(),
                      [&](long long a, long long b) { return s[a] < s[b]; });
            std::vector<Block> family;
            for (long long i : order) family.push_back(s[i]);
            if (std::any_of(family.begin(), family.end(),
                            [](const Block& b) { return b.empty(); }))
                continue;
            DeltaSystemResult w = delta_system_root(family);
            if (!w.ok()) continue;

            long long k = ctx.rho_max(family[0]);
            bool uniform = true;
            for (const Block& m : family)
                if (ctx.rho_max(m) != k) {
                    uniform = false;
                    break;
                }
            if (!uniform) continue;

            std::vector<Ord> alphas;
            std::vector<Block> closures;
            bool covered = true;
            for (const Block& m : family) {
                Ord a = m.back();
                alphas.push_back(a);
                try {
                    closures.push_back(ctx.closure(a, k));
                } catch (const HorizonError&) {
                    covered = false;
                    break;
                }
            }
            if (!covered) continue;

            DeltaSystemResult c = delta_system_root(closures);
            if (!c.ok()) continue;
            const Block& rprime = c.witness->root;
            bool meets = true;
            for (const Block& m : family)
                if (intersect(rprime, m) != w.witness->root) {
                    meets = false;
                    break;
                }
            if (!meets) continue;

            best.ok = true;
            best.reason.clear();
            best.indices = order;
            best.family = family;
            best.root = w.witness->root;
            best.k = k;
            best.alphas = alphas;
            best.closures = closures;
            best.closure_root = rprime;
            return best;
        } while (next_combination(idx, total));
    }
    return best;
}

} // namespace schemes
