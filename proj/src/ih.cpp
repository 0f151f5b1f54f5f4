#include "schemes/ih.hpp"

#include <algorithm>

#include "schemes/capture.hpp"
#include "schemes/errors.hpp"

namespace schemes {

const Block& CSequencePrefix::at(const Ord& delta) const {
    auto it = entries.find(delta);
    if (it == entries.end())
        throw HorizonError("no listed ladder entry at " + to_string(delta));
    return it->second;
}

void CSequencePrefix::validate() const {
    for (const auto& [delta, set] : entries) {
        if (!is_limit_code(delta))
            throw ValidationError("ladder entries are indexed by limit codes, got " +
                                  to_string(delta));
        for (size_t i = 0; i < set.size(); ++i) {
            if (i > 0 && !(set[i - 1] < set[i]))
                throw ValidationError("ladder entry at " + to_string(delta) +
                                      " is not strictly increasing");
            if (!(set[i] < delta))
                throw ValidationError("ladder entry at " + to_string(delta) +
                                      " reaches its own index");
        }
    }
}

bool lim_n(const CSequencePrefix& c, long long n, const Ord& delta) {
    if (n < 0) throw ValidationError("negative rank");
    if (!is_limit_code(delta)) return false;
    if (n == 0) return true;
    for (const Ord& xi : c.at(delta))
        if (!lim_n(c, n - 1, xi)) return false;
    return true;
}

Block c_n(const CSequencePrefix& c, long long n, const Ord& delta) {
    if (n < 0) throw ValidationError("negative rank");
    if (n == 0) return c.at(delta);
    Block out;
    for (const Ord& xi : c.at(delta)) out = unite(out, c_n(c, n - 1, xi));
    return out;
}

namespace {

// size-j index subsets of {0..n-1} in lexicographic order
std::vector<std::vector<long long>> index_combinations(long long n, long long j) {
    std::vector<std::vector<long long>> out;
    if (j < 0 || j > n) return out;
    std::vector<long long> idx(j);
    for (long long i = 0; i < j; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        if (j == 0) break;
        long long i = j - 1;
        while (i >= 0 && idx[i] == n - j + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (long long t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
}

Block pick(const Block& pool, const std::vector<long long>& idx) {
    Block out;
    out.reserve(idx.size());
    for (long long i : idx) out.push_back(pool[i]);
    return out;
}

long long condition_level(ForcingGround& g, const Block& p) {
    auto chk = is_condition(g, p);
    if (!chk.ok) throw ValidationError("not a condition: " + chk.reason);
    return chk.k;
}

} // namespace

Block good_tuple_root(const MetricContext& ctx, const CSequencePrefix& c, const GoodTuple& t) {
    if (t.n < 0 || t.k < 0) throw ValidationError("tuple indices must be non-negative");
    if (!is_limit_code(t.delta))
        throw ValidationError("tuple needs a limit code, got " + to_string(t.delta));
    if (!lim_n(c, t.n, t.delta))
        throw ValidationError(to_string(t.delta) + " does not have rank " + std::to_string(t.n));
    for (const Ord& a : t.a)
        if (a < t.delta)
            throw ValidationError("tuple set reaches below " + to_string(t.delta));
    Block pool = c_n(c, t.n, t.delta);
    if (pool.size() < 2)
        throw HorizonError("need at least two iterated-ladder members to determine the root");
    std::vector<Block> members;
    members.reserve(pool.size());
    for (const Ord& xi : pool) members.push_back(ctx.closure(xi, t.k));
    Block root = intersect(members[0], members[1]);
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (intersect(members[i], members[j]) != root)
                throw ValidationError("closures do not share a common pairwise root");
    std::vector<Block> tails;
    for (const Block& m : members) {
        Block tail = diff(m, root);
        if (tail.empty())
            throw ValidationError("a closure member collapses into the root");
        if (!root.empty() && !(root.back() < tail.front()))
            throw ValidationError("root elements interleave a closure tail");
        tails.push_back(std::move(tail));
    }
    for (size_t i = 0; i + 1 < tails.size(); ++i)
        if (!(tails[i].back() < tails[i + 1].front()))
            throw ValidationError("closure tails are not increasing");
    return root;
}

bool accepts(const MetricContext& ctx, const CSequencePrefix& c, long long l, const Block& f,
             const GoodTuple& t, const Block& d) {
    const TypeSpec& spec = ctx.prefix().spec;
    if (l < 1) throw ValidationError("acceptance levels start at 1");
    if (l > spec.top_level())
        throw HorizonError("level " + std::to_string(l) + " beyond the stored type");
    if (!(spec.n(l) > t.n)) return false; // arity guard, before any ladder lookup
    if ((long long)d.size() != t.n) return false;
    if (t.n > 0 && !is_subset(d, c_n(c, t.n, t.delta))) return false;
    if ((long long)f.size() != spec.m(l))
        throw ValidationError("block size does not match the level");
    DecompositionView dv = canonical_decomposition(f, l, spec);
    if (!is_subset(t.a, diff(dv.pieces[t.n], dv.root))) return false;
    if (t.n > 0) {
        Block r = good_tuple_root(ctx, c, t);
        for (long long i = 0; i < t.n; ++i) {
            const Block& cl = ctx.closure(d[i], t.k);
            if (!is_subset(cl, dv.pieces[i])) return false;
            if (intersect(cl, dv.root) != r) return false;
        }
    }
    return true;
}

bool is_delta_captured_set(const MetricContext& ctx, const Block& d, long long l) {
    if (d.empty()) return true;
    std::vector<Block> family;
    family.reserve(d.size());
    for (const Ord& x : d) family.push_back(Block{x});
    auto sys = witness_any_size(family);
    if (!sys.ok()) return false;
    StarSet star;
    star.delta = true;
    return is_captured(ctx, *sys.witness, l, star).ok();
}

bool is_adequate(const MetricContext& ctx, const Block& d, long long l, const Ord& alpha) {
    if (!is_delta_captured_set(ctx, d, l)) return false;
    for (const Ord& x : d) {
        auto dl = ctx.delta(alpha, x);
        if (dl && *dl < l) return false;
    }
    return true;
}

namespace {

AdequacyScan jmax_scan(const MetricContext& ctx, const Block& pool, long long l,
                       const std::function<bool(const Block&)>& adequate) {
    if (l < 1) throw ValidationError("selection levels start at 1");
    const TypeSpec& spec = ctx.prefix().spec;
    if (l > spec.top_level())
        throw HorizonError("level " + std::to_string(l) + " beyond the stored type");
    long long cap = std::min(spec.n(l), (long long)pool.size());
    for (long long j = cap; j >= 1; --j)
        for (const auto& idx : index_combinations((long long)pool.size(), j)) {
            Block d = pick(pool, idx);
            if (adequate(d)) return {j, false, d};
        }
    return {0, true, {}};
}

} // namespace

AdequacyScan j_max_for_alpha(const MetricContext& ctx, const Block& c_delta, const Ord& alpha,
                             long long l) {
    return jmax_scan(ctx, c_delta, l,
                     [&](const Block& d) { return is_adequate(ctx, d, l, alpha); });
}

AdequacyScan j_max_for_target(const MetricContext& ctx, const Block& c_delta,
                              long long target_card, long long l) {
    return jmax_scan(ctx, c_delta, l, [&](const Block& d) {
        for (const Ord& x : d)
            if (ctx.k_card(x, l - 1) != target_card) return false;
        return is_delta_captured_set(ctx, d, l);
    });
}

Ord unbounded_closure_search(const MetricContext& ctx, long long k, const Block& target,
                             const Ord& lo, const Ord& hi) {
    for (const Ord& a : ctx.domain()) {
        if (!(lo < a && a < hi)) continue;
        if (ctx.closure_strict(a, k) == target) return a;
    }
    throw HorizonError("no stored point between " + to_string(lo) + " and " + to_string(hi) +
                       " has the requested strict closure");
}

IhRhoResult ih_rho_extension_step(ForcingGround& g, const MetricContext& ctx,
                                  const CSequencePrefix& c, const Block& p, const GoodTuple& t,
                                  long long k_prime) {
    const Ord gamma = g.gamma();
    const TypeSpec& spec = ctx.prefix().spec;
    if (k_prime < 0) throw ValidationError("negative scan bound");
    if (gamma < t.delta) throw ValidationError("tuple index above the forcing limit");
    Ord past_limit{gamma.limit + 1, 0};
    for (const Ord& a : t.a)
        if (!(a < past_limit))
            throw ValidationError("tuple set reaches past the fresh tail");
    long long k_p = condition_level(g, p);
    good_tuple_root(ctx, c, t); // validates the tuple against the ladder data

    // A selection already accepted by p itself ends the step.
    if (!p.empty() && k_p >= 1 && k_p > k_prime) {
        Block pool = t.n > 0 ? c_n(c, t.n, t.delta) : Block{};
        for (const auto& idx : index_combinations((long long)pool.size(), t.n)) {
            Block d = pick(pool, idx);
            if (accepts(ctx, c, k_p, p, t, d))
                return {p, k_p, p, d, {}, std::nullopt, std::nullopt, std::nullopt,
                        std::nullopt, true};
        }
    }

    // Normal form: the tuple set inside p, level at least k_prime, something
    // below the tuple index.
    auto normal = [&](ForcingGround& gg, const Block& q) {
        auto chk = is_condition(gg, q);
        if (!chk.ok) return false;
        return is_subset(t.a, q) && chk.k >= k_prime && !below(q, t.delta).empty();
    };
    Block pw = normal(g, p) ? p : least_strengthening(g, p, normal);
    long long k_pw = condition_level(g, pw);
    long long k_eff = std::max(k_prime, k_pw);

    Block ground_part = below(pw, gamma);
    std::optional<Ord> delta_prime, nu, alpha, beta;
    GoodTuple inner;
    Block inner_pool;

    if (t.delta == gamma) {
        if (t.n == 0)
            throw ValidationError("arity-zero tuples at the forcing limit have no delegated "
                                  "instance");
        Block r_outer = good_tuple_root(ctx, c, t);
        // ladder member past the ground part of pw
        for (const Ord& x : c.at(gamma))
            if (ground_part.empty() || ground_part.back() < x) {
                delta_prime = x;
                break;
            }
        if (!delta_prime)
            throw HorizonError("no listed ladder member clears the condition at " +
                               to_string(gamma));
        // iterated member whose closure tail clears delta_prime
        for (const Ord& x : c_n(c, t.n, gamma)) {
            Block tail = diff(ctx.closure(x, t.k), r_outer);
            if (!tail.empty() && *delta_prime < tail.front()) {
                nu = x;
                break;
            }
        }
        if (!nu)
            throw HorizonError("no iterated-ladder member clears " + to_string(*delta_prime));
        alpha = unbounded_closure_search(ctx, k_prime, ground_part, *nu, gamma);
        Block a_prime = unite(diff(ctx.closure(*nu, t.k), r_outer), Block{*alpha});
        inner = GoodTuple{t.n - 1, *delta_prime, t.k, a_prime};
        Block r_inner = good_tuple_root(ctx, c, inner);
        if (r_inner != r_outer)
            throw SchemeError("delegated and original closure roots disagree");
        inner_pool = inner.n > 0 ? c_n(c, inner.n, inner.delta) : Block{};
    } else {
        // tuple index below the limit: bridge with one fresh closure point
        Block a_ground = below(t.a, gamma);
        Ord lo = a_ground.empty() ? t.delta : std::max(a_ground.back(), t.delta);
        alpha = unbounded_closure_search(ctx, k_prime, ground_part, lo, gamma);
        Block a_prime = unite(a_ground, Block{*alpha});
        inner = GoodTuple{t.n, t.delta, t.k, a_prime};
        inner_pool = inner.n > 0 ? c_n(c, inner.n, inner.delta) : Block{};
    }

    for (long long l = k_eff + 1; l <= g.prefix().top_level(); ++l) {
        if (!(spec.n(l) > t.n)) continue;
        // copy: membership checks on a growable ground may reallocate levels
        std::vector<Block> row = g.prefix().level(l);
        for (const Block& f : row) {
            for (const auto& idx : index_combinations((long long)inner_pool.size(), inner.n)) {
                Block d_inner = pick(inner_pool, idx);
                if (!accepts(ctx, c, l, f, inner, d_inner)) continue;
                Block q, d_prime;
                if (t.delta == gamma) {
                    DecompositionView dv = canonical_decomposition(f, l, spec);
                    std::optional<Ord> b;
                    for (const Ord& x : diff(dv.pieces[t.n], dv.root))
                        if (ctx.closure_strict(x, k_prime) == ground_part) {
                            b = x;
                            break;
                        }
                    if (!b) continue; // no homogeneity match in this block
                    beta = b;
                    q = cut_block(f, *b, gamma);
                    d_prime = unite(d_inner, Block{*nu});
                } else {
                    q = cut_block(f, *alpha, gamma);
                    d_prime = d_inner;
                }
                if (!is_condition(g, q).ok) continue;
                if (!leq(g, q, pw) || !leq(g, q, p)) continue;
                if (!accepts(ctx, c, l, q, t, d_prime)) continue;
                return {q,  l,  f,    d_prime, inner.a, delta_prime,
                        nu, alpha, beta, false};
            }
        }
    }
    throw HorizonError("no stored block accepts the delegated instance");
}

IhDeltaResult ih_delta_extension_step(ForcingGround& g, const MetricContext& ctx,
                                      const CSequencePrefix& c, const Block& p, const Ord& delta,
                                      const Ord& alpha, long long k) {
    const Ord gamma = g.gamma();
    const TypeSpec& spec = ctx.prefix().spec;
    if (k < 0) throw ValidationError("negative scan bound");
    if (!is_limit_code(delta))
        throw ValidationError("needs a limit code, got " + to_string(delta));
    if (gamma < delta) throw ValidationError("index above the forcing limit");
    if (alpha < delta) throw ValidationError("point below its index");
    if (!(alpha < Ord{gamma.limit + 1, 0}))
        throw ValidationError("point past the fresh tail");
    long long k_p = condition_level(g, p);

    if (alpha < gamma) {
        // the ground already carries every instance at a stored point
        IhDeltaResult out;
        out.outcome = IhDeltaResult::Outcome::Delegated;
        out.q = p;
        return out;
    }

    // A level of p that already pins the instance ends the step.
    if (block_contains(p, alpha) && k_p >= 1) {
        MetricContext vctx(unique_finite_scheme(p, spec));
        for (long long l = std::max(1LL, k + 1); l <= k_p; ++l) {
            long long card = (long long)below(vctx.closure(alpha, l - 1), delta).size();
            if (spec.r(l) != card) continue;
            auto scan = j_max_for_target(ctx, c.at(delta), vctx.k_card(alpha, l - 1), l);
            if (vctx.xi(alpha, l) != scan.j) continue;
            IhDeltaResult out;
            out.q = p;
            out.l = l;
            out.j = scan.j;
            out.vacuous = scan.vacuous;
            out.witness = scan.witness;
            out.target_card = vctx.k_card(alpha, l - 1);
            out.already = true;
            return out;
        }
    }

    // Normal form: alpha inside p, level at least k.
    auto normal = [&](ForcingGround& gg, const Block& q) {
        auto chk = is_condition(gg, q);
        if (!chk.ok) return false;
        return block_contains(q, alpha) && chk.k >= k;
    };
    Block pw = normal(g, p) ? p : least_strengthening(g, p, normal);

    if (delta == gamma) {
        // climb to a condition whose next root size counts its ground part
        auto rooted = [&](ForcingGround& gg, const Block& q) {
            auto chk = is_condition(gg, q);
            if (!chk.ok) return false;
            long long l = chk.k + 1;
            if (l < 1 || l > spec.top_level()) return false;
            return spec.r(l) == (long long)below(q, gamma).size();
        };
        Block qp = rooted(g, pw) ? pw : least_strengthening(g, pw, rooted);
        long long l = condition_level(g, qp) + 1;
        if (l > g.prefix().top_level())
            throw HorizonError("the next level is beyond the stored family");
        long long target = (long long)below(qp, alpha).size();
        auto scan = j_max_for_target(ctx, c.at(gamma), target, l);
        if (scan.j == spec.n(l)) {
            IhDeltaResult out;
            out.outcome = IhDeltaResult::Outcome::FullCapture;
            out.q = qp;
            out.l = l;
            out.j = scan.j;
            out.witness = scan.witness;
            out.target_card = target;
            return out;
        }
        Block ground_part = below(qp, gamma);
        Block block;
        for (const Block& f : g.prefix().level(l))
            if (is_initial_segment(ground_part, f)) {
                block = f; // copy: later membership checks may grow the ground
                break;
            }
        if (block.empty())
            throw HorizonError("no stored block grows out of the condition's ground part");
        DecompositionView dv = canonical_decomposition(block, l, spec);
        Ord alpha_j = diff(dv.pieces[scan.j], dv.root).front();
        Block q = cut_block(block, alpha_j, gamma);
        MetricContext vctx(unique_finite_scheme(q, spec));
        bool ok = is_condition(g, q).ok && leq(g, q, qp) && leq(g, q, p) &&
                  vctx.xi(alpha, l) == scan.j && vctx.k_card(alpha, l - 1) == target &&
                  spec.r(l) == (long long)below(vctx.closure(alpha, l - 1), delta).size();
        if (!ok) throw SchemeError("the pinned facts failed verification");
        IhDeltaResult out;
        out.q = q;
        out.l = l;
        out.j = scan.j;
        out.vacuous = scan.vacuous;
        out.witness = scan.witness;
        out.g_block = block;
        out.alpha_j = alpha_j;
        out.target_card = target;
        return out;
    }

    // index below the limit: work through the reduction of a condition that
    // meets the window [delta, gamma)
    auto meets_window = [&](ForcingGround& gg, const Block& q) {
        auto chk = is_condition(gg, q);
        if (!chk.ok) return false;
        if (!block_contains(q, alpha) || chk.k < k) return false;
        return !at_or_above(below(q, gamma), delta).empty();
    };
    Block qw = meets_window(g, pw) ? pw : least_strengthening(g, pw, meets_window);
    long long k_qw = condition_level(g, qw);
    Block f_red = red(qw, gamma);
    Ord alpha_proxy = f_red[below(qw, alpha).size()];
    Ord beta = f_red[below(qw, gamma).size()];

    for (long long l = std::max(k_qw, k) + 1; l <= g.prefix().top_level(); ++l) {
        if (spec.r(l) != (long long)below(ctx.closure(alpha_proxy, l - 1), delta).size())
            continue;
        auto scan = j_max_for_alpha(ctx, c.at(delta), alpha_proxy, l);
        bool full = scan.j == spec.n(l);
        if (!full && ctx.xi(alpha_proxy, l) != scan.j) continue;
        if (full) {
            IhDeltaResult out;
            out.outcome = IhDeltaResult::Outcome::FullCapture;
            out.q = qw;
            out.l = l;
            out.j = scan.j;
            out.witness = scan.witness;
            out.alpha_proxy = alpha_proxy;
            return out;
        }
        // copy: membership checks on a growable ground may reallocate levels
        std::vector<Block> row = g.prefix().level(l);
        for (const Block& f : row) {
            if (!block_contains(f, alpha_proxy)) continue;
            DecompositionView dv = canonical_decomposition(f, l, spec);
            if (below(f, delta) != dv.root) continue;
            Block q = cut_block(f, beta, gamma);
            if (!is_condition(g, q).ok) continue;
            if (!leq(g, q, qw) || !leq(g, q, p)) continue;
            MetricContext vctx(unique_finite_scheme(q, spec));
            bool ok = vctx.xi(alpha, l) == scan.j &&
                      spec.r(l) ==
                          (long long)below(vctx.closure(alpha, l - 1), delta).size();
            for (long long i = 1; ok && i <= l; ++i)
                ok = vctx.k_card(alpha, i) == ctx.k_card(alpha_proxy, i);
            if (!ok) throw SchemeError("the pinned facts failed verification");
            IhDeltaResult out;
            out.q = q;
            out.l = l;
            out.j = scan.j;
            out.vacuous = scan.vacuous;
            out.witness = scan.witness;
            out.g_block = f;
            out.alpha_proxy = alpha_proxy;
            out.beta = beta;
            return out;
        }
    }
    throw HorizonError("no stored level realises the capture count for the proxy");
}

} // namespace schemes
