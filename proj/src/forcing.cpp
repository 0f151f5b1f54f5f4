#include "schemes/forcing.hpp"

#include "schemes/errors.hpp"

#include <algorithm>
#include <set>

namespace schemes {

namespace {

bool strictly_sorted(const Block& b) {
    for (size_t i = 1; i < b.size(); ++i)
        if (!(b[i - 1] < b[i])) return false;
    return true;
}

} // namespace

ForcingGround::ForcingGround(OmegaGround& g) : omega_(&g), gamma_(omega(1)) {}

ForcingGround::ForcingGround(SchemePrefix fixed, Ord gamma)
    : fixed_(std::move(fixed)), gamma_(gamma) {
    if (gamma_.fin != 0 || gamma_.limit < 1)
        throw ValidationError("forcing ground: " + to_string(gamma_) + " is not a limit");
    for (const auto& e : fixed_.domain)
        if (!(e < gamma_))
            throw ValidationError("forcing ground: domain point " + to_string(e) +
                                  " at or above " + to_string(gamma_));
}

const SchemePrefix& ForcingGround::prefix() const {
    return omega_ ? omega_->prefix() : fixed_;
}

bool ForcingGround::grow_one() {
    if (!omega_) return false;
    omega_->ensure_beyond(spec().m(prefix().top_level()));
    return true;
}

void ForcingGround::ensure_covers(const Block& b) {
    if (!omega_) return;
    long long mx = -1;
    for (const auto& e : b)
        if (e.is_finite() && e.fin > mx) mx = e.fin;
    if (mx >= 0) omega_->ensure_beyond(mx);
}

long long ForcingGround::level_of_size(long long size) {
    if (size <= 0) return -1;
    if (omega_) {
        omega_->ensure_beyond(size - 1);
        return omega_->level_of_size(size);
    }
    for (long long k = 0; k <= fixed_.top_level(); ++k) {
        long long mk = fixed_.spec.m(k);
        if (mk == size) return k;
        if (mk > size) return -1;
    }
    throw HorizonError("block size " + std::to_string(size) + " lies beyond the stored prefix");
}

bool ForcingGround::has_level_block(long long k, const Block& f) {
    if (k < 0) return false;
    if (omega_) {
        for (const auto& e : f)
            if (!e.is_finite()) return false;
        ensure_covers(f);
        while (prefix().top_level() < k) {
            if (k > 64) throw ValidationError("level out of range");
            grow_one();
        }
        return prefix().has_block(k, f);
    }
    if (k > fixed_.top_level()) throw HorizonError("level beyond the stored prefix");
    for (const auto& e : f) {
        if (e >= gamma_) return false;
        if (!block_contains(fixed_.domain, e))
            throw HorizonError("membership of " + to_string(f) +
                               " is not decidable from the stored domain");
    }
    return fixed_.has_block(k, f);
}

bool ForcingGround::some_block_starts_with(long long k, const Block& i) {
    if (k < 0 || i.empty()) return false;
    if (omega_) {
        for (const auto& e : i)
            if (!e.is_finite()) return false;
        // If any level-k block starts with i, the collapse of its upper part
        // onto the next codes after max(i) is one too, so a witness already
        // lives below max(i) + m_k and the bounded scan is conclusive.
        while (prefix().top_level() < k) {
            if (k > 64) throw ValidationError("level out of range");
            grow_one();
        }
        omega_->ensure_beyond(i.back().fin + spec().m(k));
        for (const auto& f : prefix().level(k))
            if (is_initial_segment(i, f)) return true;
        return false;
    }
    if (k > fixed_.top_level()) throw HorizonError("level beyond the stored prefix");
    for (const auto& f : fixed_.level(k))
        if (is_initial_segment(i, f)) return true;
    for (const auto& e : i) {
        if (e >= gamma_) return false;
        if (!block_contains(fixed_.domain, e))
            throw HorizonError("prefix query on " + to_string(i) +
                               " is not decidable from the stored domain");
    }
    return false;
}

Block red(const Block& p, const Ord& delta) {
    Block lower = below(p, delta);
    long long t = static_cast<long long>(p.size()) - static_cast<long long>(lower.size());
    Block out = lower;
    if (lower.empty()) {
        for (long long j = 0; j < t; ++j) out.push_back(Ord{0, j});
        return out;
    }
    for (long long j = 1; j <= t; ++j) out.push_back(lower.back().plus(j));
    return out;
}

Block cut_block(const Block& f, const Ord& alpha, const Ord& gamma) {
    Block out = below(f, alpha);
    long long t = static_cast<long long>(f.size()) - static_cast<long long>(out.size());
    for (long long j = 0; j < t; ++j) out.push_back(gamma.plus(j));
    if (!strictly_sorted(out))
        throw ValidationError("cut of " + to_string(f) + " at " + to_string(alpha) +
                              " over " + to_string(gamma) + " is not a block");
    return out;
}

Ord alpha_p(const Block& p, const Ord& gamma) {
    Block lower = below(p, gamma);
    if (lower.empty())
        throw ValidationError("alpha_p: " + to_string(p) + " has no points below " +
                              to_string(gamma));
    return lower.back();
}

ConditionProbe probe_condition(ForcingGround& g, const Block& p) {
    ConditionProbe pr;
    if (p.empty()) {
        pr.direct = pr.reduced = true;
        return pr;
    }
    if (!strictly_sorted(p)) throw ValidationError("condition candidates must be sorted blocks");
    const Ord& gamma = g.gamma();
    for (const auto& e : p)
        if (e >= gamma && e.limit != gamma.limit)
            throw ValidationError("point " + to_string(e) + " is beyond the fresh tail of " +
                                  to_string(gamma));

    pr.k = g.level_of_size(static_cast<long long>(p.size()));
    bool size_ok = pr.k >= 0;

    Block lower = below(p, gamma);
    bool glue_ok = true;
    if (size_ok && !lower.empty()) glue_ok = g.some_block_starts_with(pr.k, lower);

    Block tail = at_or_above(p, gamma);
    bool tail_ok = true;
    for (size_t j = 0; j < tail.size(); ++j)
        if (tail[j] != gamma.plus(static_cast<long long>(j))) {
            tail_ok = false;
            break;
        }

    if (!size_ok)
        pr.reason = "(I) |p| = " + std::to_string(p.size()) + " is not a block size";
    else if (!glue_ok)
        pr.reason = "(II) " + to_string(lower) + " starts no stored level-" +
                    std::to_string(pr.k) + " block";
    else if (!tail_ok)
        pr.reason = "(III) tail of " + to_string(p) + " is not an initial segment";

    pr.direct = size_ok && glue_ok && tail_ok;
    pr.reduced = size_ok && g.has_level_block(pr.k, red(p, gamma));
    return pr;
}

ConditionCheck is_condition(ForcingGround& g, const Block& p) {
    ConditionCheck out;
    ConditionProbe pr = probe_condition(g, p);
    if (p.empty()) {
        out.ok = true;
        return out;
    }
    // The reduction characterization presumes the tail shape, so a malformed
    // tail is rejected before the two probes are compared.
    if (pr.reason.rfind("(III)", 0) == 0) {
        out.reason = pr.reason;
        return out;
    }
    if (pr.direct != pr.reduced)
        throw SchemeError("membership characterization mismatch on " + to_string(p) +
                          ": direct=" + (pr.direct ? "yes" : "no") +
                          " reduced=" + (pr.reduced ? "yes" : "no"));
    out.ok = pr.direct;
    out.k = pr.direct ? pr.k : -1;
    out.reason = pr.reason;
    return out;
}

bool leq(ForcingGround& g, const Block& p, const Block& q) {
    if (q.empty()) return true;
    if (p.empty()) return false;
    if (!is_subset(q, p)) return false;
    long long kp = g.level_of_size(static_cast<long long>(p.size()));
    if (kp < 0) throw ValidationError("leq: |p| = " + std::to_string(p.size()) +
                                      " is not a block size");
    const TypeSpec& spec = g.spec();
    long long kq = -1;
    for (long long k = 0; k <= kp; ++k)
        if (spec.m(k) == static_cast<long long>(q.size())) {
            kq = k;
            break;
        }
    if (kq < 0) return false;
    return unique_finite_scheme(p, spec).has_block(kq, q);
}

Block least_strengthening(ForcingGround& g, const Block& p,
                          const std::function<bool(ForcingGround&, const Block&)>& pred) {
    for (long long pass = 0;; ++pass) {
        long long top = g.prefix().top_level();
        for (long long l = 0; l <= top; ++l) {
            // level vectors may reallocate if a nested call grows the family,
            // so index instead of holding iterators
            for (size_t bi = 0; bi < g.prefix().level(l).size(); ++bi) {
                Block G = g.prefix().level(l)[bi];
                for (size_t pos = 0; pos <= G.size(); ++pos) {
                    Ord alpha = pos < G.size() ? G[pos] : G.back().next();
                    Block q = cut_block(G, alpha, g.gamma());
                    if (q == p) continue;
                    if (!leq(g, q, p)) continue;
                    if (!pred(g, q)) continue;
                    return q;
                }
            }
        }
        if (pass >= 8 || !g.grow_one())
            throw HorizonError("no stored block strengthens " + to_string(p) +
                               " into the requested dense set");
    }
}

DenseSetSpec cofinal_dense(const Ord& beta) {
    DenseSetSpec d;
    d.id = "cofinal(" + to_string(beta) + ")";
    auto pred = [beta](ForcingGround&, const Block& p) { return block_contains(p, beta); };
    d.pred = pred;
    d.extend = [pred](ForcingGround& g, const Block& p) {
        if (pred(g, p)) return p;
        return least_strengthening(g, p, pred);
    };
    return d;
}

DenseSetSpec ih1_dense(const Block& a, const Ord& alpha) {
    DenseSetSpec d;
    Block want = sorted_unique(a);
    d.id = "ih1(" + to_string(want) + "," + to_string(alpha) + ")";
    auto pred = [want, alpha](ForcingGround& g, const Block& p) {
        if (p.empty()) return false;
        if (g.level_of_size(static_cast<long long>(p.size())) < 0) return false;
        SchemePrefix fp = unique_finite_scheme(p, g.spec());
        for (long long k = 1; k <= fp.top_level(); ++k)
            for (const auto& f : fp.level(k)) {
                DecompositionView dv = canonical_decomposition(f, k, fp.spec);
                if (dv.root == below(f, alpha) && is_subset(want, dv.pieces[0])) return true;
            }
        return false;
    };
    d.pred = pred;
    d.extend = [pred](ForcingGround& g, const Block& p) {
        if (pred(g, p)) return p;
        return least_strengthening(g, p, pred);
    };
    return d;
}

Chain run_filter(ForcingGround& g, const Block& start, const std::vector<DenseSetSpec>& schedule) {
    if (!is_condition(g, start).ok)
        throw ValidationError("run_filter: start " + to_string(start) + " is not a condition");
    Chain ch;
    ch.conditions.push_back(start);
    Block cur = start;
    for (const auto& ds : schedule) {
        if (ds.pred(g, cur)) continue;
        Block q = ds.extend(g, cur);
        if (!is_condition(g, q).ok)
            throw SchemeError("extender for " + ds.id + " produced a non-condition " +
                              to_string(q));
        if (!ds.pred(g, q))
            throw SchemeError("extender for " + ds.id + " left its own set");
        if (!leq(g, q, cur))
            throw SchemeError("extender for " + ds.id + " does not strengthen " + to_string(cur));
        cur = q;
        ch.conditions.push_back(cur);
    }
    for (const auto& ds : schedule) {
        if (!ds.pred(g, cur))
            throw SchemeError("dense goal " + ds.id + " lost by a later extension");
        ch.met.push_back(ds.id);
    }
    return ch;
}

ExtensionResult extend_to_next_limit(ForcingGround& g, long long horizon,
                                     const std::vector<DenseSetSpec>& extras) {
    std::vector<DenseSetSpec> schedule;
    size_t ei = 0;
    for (long long i = 0; i < horizon; ++i) {
        schedule.push_back(cofinal_dense(g.gamma().plus(i)));
        if (ei < extras.size()) schedule.push_back(extras[ei++]);
    }
    while (ei < extras.size()) schedule.push_back(extras[ei++]);

    ExtensionResult res;
    res.chain = run_filter(g, Block{}, schedule);
    res.final_points = res.chain.conditions.back();

    res.view.spec = g.spec();
    res.view.omega = false;
    if (res.final_points.empty()) {
        res.combined = g.prefix();
        res.combined.omega = false;
        return res;
    }
    res.view = unique_finite_scheme(res.final_points, g.spec());

    const SchemePrefix& ground = g.prefix();
    res.combined.spec = g.spec();
    res.combined.omega = false;
    res.combined.domain = unite(ground.domain, res.final_points);
    long long top = std::max(ground.top_level(), res.view.top_level());
    for (long long k = 0; k <= top; ++k) {
        std::set<Block> merged;
        if (k <= ground.top_level())
            merged.insert(ground.level(k).begin(), ground.level(k).end());
        if (k <= res.view.top_level())
            merged.insert(res.view.level(k).begin(), res.view.level(k).end());
        res.combined.levels.emplace_back(merged.begin(), merged.end());
    }
    return res;
}

} // namespace schemes
