#include "schemes/ad.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "schemes/errors.hpp"

namespace schemes {

// ---------------------------------------------------------------------------
// Graded symbol space
// ---------------------------------------------------------------------------

std::string to_string(const Symbol& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.entries.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.entries[i]);
    }
    out += ")@" + std::to_string(s.level);
    return out;
}

GradedSet slice_level(const GradedSet& s, long long level) {
    GradedSet out;
    for (const Symbol& x : s)
        if (x.level == level) out.insert(x);
    return out;
}

GradedSet graded_unite(const GradedSet& a, const GradedSet& b) {
    GradedSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

GradedSet graded_intersect(const GradedSet& a, const GradedSet& b) {
    GradedSet out;
    for (const Symbol& x : a)
        if (b.count(x)) out.insert(x);
    return out;
}

GradedSet graded_diff(const GradedSet& a, const GradedSet& b) {
    GradedSet out;
    for (const Symbol& x : a)
        if (!b.count(x)) out.insert(x);
    return out;
}

GradedSet graded_symdiff(const GradedSet& a, const GradedSet& b) {
    GradedSet out = graded_diff(a, b);
    for (const Symbol& x : b)
        if (!a.count(x)) out.insert(x);
    return out;
}

bool graded_subset(const GradedSet& a, const GradedSet& b) {
    for (const Symbol& x : a)
        if (!b.count(x)) return false;
    return true;
}

namespace {
constexpr long long kSliceCap = 1000000;
} // namespace

long long symbol_space_size(const TypeSpec& spec, long long k) {
    if (k < 1)
        throw ValidationError("symbol levels start at 1");
    if (k > spec.top_level())
        throw HorizonError("level " + std::to_string(k) + " is beyond the stored type");
    const long long m = spec.m(k - 1);
    const long long n = spec.n(k);
    if (m > kSliceCap)
        throw HorizonError("level-" + std::to_string(k) + " slice is too large to enumerate");
    long long size = 1;
    for (long long i = 0; i < n; ++i) {
        size *= m;
        if (size > kSliceCap)
            throw HorizonError("level-" + std::to_string(k) +
                               " slice is too large to enumerate");
    }
    return size;
}

std::vector<Symbol> symbol_space(const TypeSpec& spec, long long k) {
    const long long total = symbol_space_size(spec, k);
    const long long m = spec.m(k - 1);
    const long long n = spec.n(k);
    std::vector<Symbol> out;
    out.reserve((size_t)total);
    std::vector<long long> entries((size_t)n, 0);
    for (long long count = 0; count < total; ++count) {
        out.push_back(Symbol{k, entries});
        // lexicographic successor: bump the last coordinate, carry leftwards
        for (long long pos = n - 1; pos >= 0; --pos) {
            if (++entries[(size_t)pos] < m) break;
            entries[(size_t)pos] = 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The graded almost-disjoint blocks attached to each point
// ---------------------------------------------------------------------------

ADPiece ad_piece(const MetricContext& ctx, const Ord& alpha, long long k) {
    if (k < 1)
        throw ValidationError("symbol levels start at 1");
    if (k > ctx.prefix().top_level())
        throw HorizonError("level " + std::to_string(k) + " is beyond the stored prefix");
    ADPiece out;
    out.alpha = alpha;
    out.level = k;
    const long long pos = ctx.xi(alpha, k);
    if (pos < 0) return out; // root points carry an empty block at this level
    const long long target = ctx.k_card(alpha, k - 1);
    for (Symbol& s : symbol_space(ctx.prefix().spec, k))
        if (s.entries[(size_t)pos] == target) out.members.insert(std::move(s));
    return out;
}

GradedSet ad_prefix(const MetricContext& ctx, const Ord& alpha, long long k_max) {
    GradedSet out;
    for (long long k = 1; k <= k_max; ++k) {
        ADPiece p = ad_piece(ctx, alpha, k);
        out.insert(p.members.begin(), p.members.end());
    }
    return out;
}

GradingReport ad_intersection_bound(const MetricContext& ctx, const Ord& alpha, const Ord& beta,
                                    long long horizon) {
    if (alpha == beta)
        throw ValidationError("the disjointness bound compares distinct points");
    if (horizon > ctx.prefix().top_level())
        throw HorizonError("horizon " + std::to_string(horizon) +
                           " is beyond the stored prefix");
    GradingReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.horizon = horizon;
    rep.rho = ctx.rho(alpha, beta);
    rep.ok = true;
    for (long long k = rep.rho + 1; k <= horizon; ++k) {
        rep.checked.push_back(k);
        ADPiece a = ad_piece(ctx, alpha, k);
        ADPiece b = ad_piece(ctx, beta, k);
        if (!graded_intersect(a.members, b.members).empty()) rep.ok = false;
    }
    return rep;
}

Symbol capture_intersection_witness(const MetricContext& ctx, const CaptureReport& report) {
    const std::vector<Block>& sets = report.witness.sets;
    const long long l = report.level;
    if (l < 1)
        throw ValidationError("witness levels start at 1");
    if (l > ctx.prefix().top_level())
        throw HorizonError("level " + std::to_string(l) + " is beyond the stored prefix");
    if (sets.empty())
        throw ValidationError("an empty family has no shared symbol");
    const long long n = (long long)sets.size();
    const long long width = ctx.prefix().spec.n(l);
    if (n > width)
        throw ValidationError("family is wider than the branching at its level");
    for (size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty())
            throw ValidationError("family members must be nonempty");
        for (size_t j = i + 1; j < sets.size(); ++j)
            if (!intersect(sets[i], sets[j]).empty())
                throw ValidationError("family members are not pairwise disjoint");
    }
    std::vector<Ord> selectors;
    for (long long i = 0; i < n; ++i) {
        const Block& s = sets[(size_t)i];
        const Ord& sel = s[(size_t)std::min<long long>(i, (long long)s.size() - 1)];
        if (ctx.xi(sel, l) != i)
            throw ValidationError("selector of member " + std::to_string(i) +
                                  " sits in the wrong piece at the witness level");
        selectors.push_back(sel);
    }
    Symbol sigma;
    sigma.level = l;
    sigma.entries.assign((size_t)width, 0);
    for (long long i = 0; i < n; ++i)
        sigma.entries[(size_t)i] = ctx.k_card(selectors[(size_t)i], l - 1);
    for (const Ord& sel : selectors) {
        ADPiece p = ad_piece(ctx, sel, l);
        if (!p.members.count(sigma))
            throw SchemeError("constructed symbol missed the block of " + to_string(sel));
    }
    return sigma;
}

// ---------------------------------------------------------------------------
// Finite partial orders
// ---------------------------------------------------------------------------

FinitePoset FinitePoset::from_edges(std::vector<std::string> ids,
                                    const std::vector<std::pair<std::string, std::string>>& lt) {
    FinitePoset p;
    p.elements = std::move(ids);
    const long long n = p.size();
    {
        std::set<std::string> seen;
        for (const std::string& id : p.elements)
            if (!seen.insert(id).second)
                throw ValidationError("duplicate element id: " + id);
    }
    p.less.assign((size_t)n, std::vector<bool>((size_t)n, false));
    for (const auto& [a, b] : lt) {
        long long i = p.index_of(a);
        long long j = p.index_of(b);
        if (i == j)
            throw ValidationError("order contains a cycle through " + a);
        p.less[(size_t)i][(size_t)j] = true;
    }
    for (long long k = 0; k < n; ++k)
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j)
                if (p.less[(size_t)i][(size_t)k] && p.less[(size_t)k][(size_t)j])
                    p.less[(size_t)i][(size_t)j] = true;
    for (long long i = 0; i < n; ++i)
        if (p.less[(size_t)i][(size_t)i])
            throw ValidationError("order contains a cycle through " + p.elements[(size_t)i]);
    return p;
}

FinitePoset FinitePoset::from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        std::vector<std::string> ids = j.at("elements").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> lt;
        if (j.contains("lt"))
            for (const auto& e : j.at("lt"))
                lt.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        return from_edges(std::move(ids), lt);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad order description: ") + e.what());
    }
}

std::string FinitePoset::to_json() const {
    nlohmann::ordered_json j;
    j["elements"] = elements;
    j["lt"] = nlohmann::ordered_json::array();
    for (long long i = 0; i < size(); ++i)
        for (long long k = 0; k < size(); ++k)
            if (less[(size_t)i][(size_t)k])
                j["lt"].push_back({elements[(size_t)i], elements[(size_t)k]});
    return j.dump();
}

long long FinitePoset::index_of(const std::string& id) const {
    for (long long i = 0; i < size(); ++i)
        if (elements[(size_t)i] == id) return i;
    throw ValidationError("unknown element id: " + id);
}

std::vector<long long> FinitePoset::down_set(long long i) const {
    std::vector<long long> out;
    for (long long z = 0; z < size(); ++z)
        if (less[(size_t)z][(size_t)i]) out.push_back(z);
    return out;
}

std::vector<long long> FinitePoset::predecessors(long long i) const {
    std::vector<long long> out;
    for (long long z = 0; z < size(); ++z) {
        if (!less[(size_t)z][(size_t)i]) continue;
        bool covered = true;
        for (long long w = 0; w < size(); ++w)
            if (less[(size_t)z][(size_t)w] && less[(size_t)w][(size_t)i]) {
                covered = false;
                break;
            }
        if (covered) out.push_back(z);
    }
    return out;
}

std::optional<long long> FinitePoset::inf(long long i, long long j) const {
    std::vector<long long> lower;
    for (long long z = 0; z < size(); ++z)
        if (leq(z, i) && leq(z, j)) lower.push_back(z);
    for (long long cand : lower) {
        bool top = true;
        for (long long w : lower)
            if (!leq(w, cand)) {
                top = false;
                break;
            }
        if (top) return cand;
    }
    return std::nullopt;
}

bool FinitePoset::incompatible(long long i, long long j) const {
    for (long long z = 0; z < size(); ++z)
        if (leq(z, i) && leq(z, j)) return false;
    return true;
}

FinitePoset well_founded_cofinal(const FinitePoset& p) {
    std::vector<long long> kept;
    for (long long b = 0; b < p.size(); ++b) {
        bool dominated = false;
        for (long long a = 0; a < b; ++a)
            if (p.leq(b, a)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(b);
    }
    FinitePoset out;
    for (long long i : kept) out.elements.push_back(p.elements[(size_t)i]);
    out.less.assign(kept.size(), std::vector<bool>(kept.size(), false));
    for (size_t a = 0; a < kept.size(); ++a)
        for (size_t b = 0; b < kept.size(); ++b)
            out.less[a][b] = p.less[(size_t)kept[a]][(size_t)kept[b]];
    for (long long y = 0; y < p.size(); ++y) {
        bool reached = false;
        for (long long k : kept)
            if (p.leq(y, k)) {
                reached = true;
                break;
            }
        if (!reached)
            throw SchemeError("greedy selection lost " + p.elements[(size_t)y] +
                              " from the cofinal part");
    }
    return out;
}

std::vector<long long> monotone_bijection(const FinitePoset& p) {
    const long long n = p.size();
    std::vector<long long> rank((size_t)n, -1);
    for (long long next = 0; next < n; ++next) {
        long long best = -1;
        for (long long i = 0; i < n; ++i) {
            if (rank[(size_t)i] >= 0) continue;
            bool ready = true;
            for (long long z = 0; z < n; ++z)
                if (p.less[(size_t)z][(size_t)i] && rank[(size_t)z] < 0) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            if (best < 0 || p.elements[(size_t)i] < p.elements[(size_t)best]) best = i;
        }
        if (best < 0)
            throw SchemeError("no enumerable element left; the order is not acyclic");
        rank[(size_t)best] = next;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Representation of a finite order inside the graded blocks
// ---------------------------------------------------------------------------

namespace {

void require_labeling(const FinitePoset& p, const std::vector<long long>& phi, long long x) {
    if ((long long)phi.size() != p.size())
        throw ValidationError("labeling size does not match the order");
    if (x < 0 || x >= p.size())
        throw ValidationError("element index out of range");
}

} // namespace

std::vector<long long> m_set(const MetricContext& ctx, const FinitePoset& p,
                             const std::vector<long long>& phi, long long x, long long k) {
    require_labeling(p, phi, x);
    const Block& cl = ctx.closure(Ord(phi[(size_t)x]), k);
    std::vector<long long> out;
    for (long long z = 0; z < p.size(); ++z)
        if (p.leq(z, x) && block_contains(cl, Ord(phi[(size_t)z]))) out.push_back(z);
    return out;
}

GradedSet t_piece(const MetricContext& ctx, const FinitePoset& p,
                  const std::vector<long long>& phi, long long x, long long k) {
    GradedSet out;
    for (long long z : m_set(ctx, p, phi, x, k)) {
        ADPiece piece = ad_piece(ctx, Ord(phi[(size_t)z]), k + 1);
        out.insert(piece.members.begin(), piece.members.end());
    }
    return out;
}

BoundedTailJudgment judge_tail_equality(const GradedSet& lhs, const GradedSet& rhs,
                                        long long tail_level, long long horizon,
                                        std::string clause, std::string pair) {
    BoundedTailJudgment j;
    j.clause = std::move(clause);
    j.pair = std::move(pair);
    j.tail_level = tail_level;
    j.horizon = horizon;
    j.agree = true;
    for (long long lev = std::max<long long>(tail_level, 1); lev <= horizon; ++lev)
        if (slice_level(lhs, lev) != slice_level(rhs, lev)) {
            j.agree = false;
            j.first_disagreement = lev;
            break;
        }
    return j;
}

std::string BoundedTailJudgment::to_json() const {
    nlohmann::ordered_json j;
    j["clause"] = clause;
    j["pair"] = pair;
    j["tail_level"] = tail_level;
    j["horizon"] = horizon;
    j["agree"] = agree;
    j["first_disagreement"] = first_disagreement;
    return j.dump();
}

RepresentationPrefix build_representation(const MetricContext& ctx, const FinitePoset& p,
                                          long long levels) {
    if (levels < 1)
        throw ValidationError("a representation needs at least one symbol level");
    if (levels > ctx.prefix().top_level())
        throw HorizonError("representation depth " + std::to_string(levels) +
                           " is beyond the stored prefix");
    RepresentationPrefix rep;
    rep.poset = p;
    rep.phi = monotone_bijection(p);
    rep.levels = levels;
    for (long long code : rep.phi)
        if (!ctx.in_domain(Ord(code)))
            throw HorizonError("the order is too large for the stored ground");
    for (long long x = 0; x < p.size(); ++x) {
        GradedSet t;
        for (long long k = 0; k < levels; ++k) {
            GradedSet piece = t_piece(ctx, p, rep.phi, x, k);
            t.insert(piece.begin(), piece.end());
        }
        rep.t_sets.push_back(std::move(t));
        rep.a_sets.push_back(ad_prefix(ctx, Ord(rep.phi[(size_t)x]), levels));
    }
    return rep;
}

std::vector<BoundedTailJudgment> representation_check(const MetricContext& ctx,
                                                      const FinitePoset& p, long long levels) {
    RepresentationPrefix rep = build_representation(ctx, p, levels);
    const long long n = p.size();
    auto img = [&](long long x) { return Ord(rep.phi[(size_t)x]); };
    auto name = [&](long long x) { return p.elements[(size_t)x]; };
    std::vector<BoundedTailJudgment> out;

    // (a) the block prefix lies inside the tree set, with no exceptions
    for (long long x = 0; x < n; ++x)
        out.push_back(judge_tail_equality(graded_intersect(rep.a_sets[(size_t)x],
                                                           rep.t_sets[(size_t)x]),
                                          rep.a_sets[(size_t)x], 1, levels, "(a)", name(x)));

    // (b) blocks of points not below x avoid x's tree set above the tail
    for (long long x = 0; x < n; ++x)
        for (long long y = 0; y < n; ++y) {
            if (x == y || p.leq(y, x)) continue;
            const long long tail = ctx.rho(img(x), img(y)) + 2;
            out.push_back(judge_tail_equality(graded_intersect(rep.a_sets[(size_t)y],
                                                               rep.t_sets[(size_t)x]),
                                              GradedSet{}, tail, levels, "(b)",
                                              name(x) + "," + name(y)));
        }

    // (c) tree sets of a pair with a meet intersect in the meet's tree set
    for (long long x = 0; x < n; ++x)
        for (long long y = x + 1; y < n; ++y) {
            std::optional<long long> m = p.inf(x, y);
            if (!m) continue;
            const long long tail = ctx.rho_max(Block{img(x), img(y), img(*m)}) + 2;
            out.push_back(judge_tail_equality(graded_intersect(rep.t_sets[(size_t)x],
                                                               rep.t_sets[(size_t)y]),
                                              rep.t_sets[(size_t)*m], tail, levels, "(c)",
                                              name(x) + "," + name(y)));
        }

    // (d) what the covers' tree sets fail to reach is exactly the block prefix
    for (long long x = 0; x < n; ++x) {
        std::vector<long long> preds = p.predecessors(x);
        Block rel{img(x)};
        GradedSet covered;
        for (long long z : preds) {
            rel.push_back(img(z));
            covered = graded_unite(covered, rep.t_sets[(size_t)z]);
        }
        const long long tail = ctx.rho_max(rel) + 2;
        out.push_back(judge_tail_equality(graded_diff(rep.t_sets[(size_t)x], covered),
                                          rep.a_sets[(size_t)x], tail, levels, "(d)", name(x)));
    }

    // (e) tree sets of incompatible pairs are disjoint above the tail
    for (long long x = 0; x < n; ++x)
        for (long long y = x + 1; y < n; ++y) {
            if (!p.incompatible(x, y)) continue;
            const long long tail = ctx.rho(img(x), img(y)) + 2;
            out.push_back(judge_tail_equality(graded_intersect(rep.t_sets[(size_t)x],
                                                               rep.t_sets[(size_t)y]),
                                              GradedSet{}, tail, levels, "(e)",
                                              name(x) + "," + name(y)));
        }
    return out;
}

bool all_agree(const std::vector<BoundedTailJudgment>& js) {
    for (const BoundedTailJudgment& j : js)
        if (!j.agree) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Coherent assignments over a finite meet-closed family
// ---------------------------------------------------------------------------

CoherentCheck coherent_check(const CoherentFamily& fam, const std::vector<GradedSet>& g) {
    if (g.size() != fam.sets.size())
        throw ValidationError("assignment size does not match the family");
    CoherentCheck out;
    const long long n = (long long)fam.sets.size();
    for (long long i = 0; i < n; ++i)
        out.judgments.push_back(judge_tail_equality(
            graded_intersect(g[(size_t)i], fam.sets[(size_t)i]), g[(size_t)i], 1, fam.horizon,
            "(1)", fam.labels[(size_t)i]));
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            if (i == j || !fam.below[(size_t)i][(size_t)j]) continue;
            out.judgments.push_back(judge_tail_equality(
                graded_intersect(g[(size_t)j], fam.sets[(size_t)i]), g[(size_t)i],
                fam.tail[(size_t)i][(size_t)j], fam.horizon, "(2)",
                fam.labels[(size_t)i] + "," + fam.labels[(size_t)j]));
        }
    out.ok = all_agree(out.judgments);
    return out;
}

std::vector<GradedSet> coherent_product(const std::vector<GradedSet>& f,
                                        const std::vector<GradedSet>& g) {
    if (f.size() != g.size())
        throw ValidationError("assignments have different lengths");
    std::vector<GradedSet> out;
    for (size_t i = 0; i < f.size(); ++i) out.push_back(graded_symdiff(f[i], g[i]));
    return out;
}

TrivialityResult triviality_search(const CoherentFamily& fam, const std::vector<GradedSet>& g,
                                   long long mask_cap) {
    if (g.size() != fam.sets.size())
        throw ValidationError("assignment size does not match the family");
    const long long n = (long long)fam.sets.size();
    std::vector<const GradedSet*> gens;
    for (const GradedSet& s : fam.sets) gens.push_back(&s);
    for (const GradedSet& s : g) gens.push_back(&s);
    std::vector<long long> member_tail((size_t)n, 1);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j)
            member_tail[(size_t)i] =
                std::max(member_tail[(size_t)i], fam.tail[(size_t)i][(size_t)j]);
    unsigned long long total = (gens.size() >= 63) ? ~0ull : (1ull << gens.size());
    unsigned long long limit =
        std::min(total, mask_cap < 0 ? 0ull : (unsigned long long)mask_cap);
    TrivialityResult res;
    for (unsigned long long mask = 0; mask < limit; ++mask) {
        GradedSet c;
        for (size_t b = 0; b < gens.size(); ++b)
            if (mask >> b & 1) c = graded_unite(c, *gens[b]);
        bool all = true;
        for (long long i = 0; i < n && all; ++i)
            all = judge_tail_equality(graded_intersect(c, fam.sets[(size_t)i]), g[(size_t)i],
                                      member_tail[(size_t)i], fam.horizon, "", "")
                      .agree;
        if (all) {
            res.trivial = true;
            res.mask = mask;
            res.c = std::move(c);
            return res;
        }
    }
    res.capped = limit < total;
    return res;
}

// ---------------------------------------------------------------------------
// The two-copy construction and the recursive assignment builder
// ---------------------------------------------------------------------------

DoubledRepresentation build_doubled(const MetricContext& ctx, const FinitePoset& base,
                                    long long levels) {
    const long long n = base.size();
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (!base.inf(i, j))
                throw ValidationError("pair " + base.elements[(size_t)i] + "," +
                                      base.elements[(size_t)j] + " has no meet");
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const std::string& id : base.elements) {
        ids.push_back(id + "#0");
        ids.push_back(id + "#1");
    }
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j)
            if (base.lt(i, j)) {
                edges.emplace_back(base.elements[(size_t)i] + "#0",
                                   base.elements[(size_t)j] + "#0");
                edges.emplace_back(base.elements[(size_t)i] + "#1",
                                   base.elements[(size_t)j] + "#1");
            }
    DoubledRepresentation d;
    d.base = base;
    d.rep = build_representation(ctx, FinitePoset::from_edges(std::move(ids), edges), levels);
    for (long long i = 0; i < n; ++i) {
        d.zero_of.push_back(2 * i);
        d.one_of.push_back(2 * i + 1);
    }
    auto img = [&](long long doubled_index) { return Ord(d.rep.phi[(size_t)doubled_index]); };
    for (long long i = 0; i < n; ++i)
        d.copy_tail.push_back(ctx.rho(img(d.zero_of[(size_t)i]), img(d.one_of[(size_t)i])) + 1);
    CoherentFamily fam;
    fam.labels = base.elements;
    fam.horizon = levels;
    for (long long i = 0; i < n; ++i)
        fam.sets.push_back(graded_unite(d.rep.t_sets[(size_t)d.zero_of[(size_t)i]],
                                        d.rep.t_sets[(size_t)d.one_of[(size_t)i]]));
    fam.below.assign((size_t)n, std::vector<bool>((size_t)n, false));
    fam.meet.assign((size_t)n, std::vector<long long>((size_t)n, 0));
    fam.tail.assign((size_t)n, std::vector<long long>((size_t)n, 1));
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            fam.below[(size_t)i][(size_t)j] = base.leq(i, j);
            const long long m = (i == j) ? i : *base.inf(i, j);
            fam.meet[(size_t)i][(size_t)j] = m;
            if (i != j)
                fam.tail[(size_t)i][(size_t)j] =
                    ctx.rho_max(Block{img(d.zero_of[(size_t)i]), img(d.zero_of[(size_t)j]),
                                      img(d.zero_of[(size_t)m]), img(d.one_of[(size_t)i]),
                                      img(d.one_of[(size_t)j]), img(d.one_of[(size_t)m])}) +
                    2;
        }
    d.family = std::move(fam);
    std::vector<long long> rank = monotone_bijection(base);
    d.process_order.assign((size_t)n, 0);
    for (long long i = 0; i < n; ++i) d.process_order[(size_t)rank[(size_t)i]] = i;
    return d;
}

GsStepReport g_s_step(const DoubledRepresentation& d, const std::vector<bool>& s, long long y,
                      const std::vector<GradedSet>& partial) {
    const long long n = d.base.size();
    if (y < 0 || y >= n)
        throw ValidationError("element index out of range");
    if ((long long)s.size() != n)
        throw ValidationError("selection size does not match the base order");
    if ((long long)partial.size() != n)
        throw ValidationError("partial assignment size does not match the base order");
    const CoherentFamily& fam = d.family;
    const GradedSet& ty = fam.sets[(size_t)y];
    const std::vector<long long> down = d.base.down_set(y);
    if (down.size() >= 63)
        throw HorizonError("too many lower elements to search separators");

    GsStepReport rep;
    rep.y = y;
    bool found = false;
    for (unsigned long long mask = 0; mask < (1ull << down.size()) && !found; ++mask) {
        GradedSet c;
        for (size_t b = 0; b < down.size(); ++b)
            if (mask >> b & 1) c = graded_unite(c, partial[(size_t)down[b]]);
        c = graded_intersect(c, ty);
        bool all = true;
        for (long long x : down)
            if (!judge_tail_equality(graded_intersect(c, fam.sets[(size_t)x]),
                                     partial[(size_t)x], fam.tail[(size_t)x][(size_t)y],
                                     fam.horizon, "", "")
                     .agree) {
                all = false;
                break;
            }
        if (all) {
            rep.separator_mask = mask;
            rep.separator = std::move(c);
            found = true;
        }
    }
    if (!found)
        throw SchemeError("no separator over the stored levels at " +
                          d.base.elements[(size_t)y]);

    const GradedSet& a0 = d.rep.a_sets[(size_t)d.zero_of[(size_t)y]];
    const GradedSet& a1 = d.rep.a_sets[(size_t)d.one_of[(size_t)y]];
    rep.value = s[(size_t)y] ? graded_diff(graded_unite(rep.separator, a0), a1)
                             : graded_unite(graded_unite(rep.separator, a0), a1);

    const std::string& label = d.base.elements[(size_t)y];
    if (s[(size_t)y])
        rep.checks.push_back(judge_tail_equality(graded_intersect(a1, rep.value), GradedSet{},
                                                 1, fam.horizon, "(A)", label));
    else
        rep.checks.push_back(judge_tail_equality(graded_intersect(a1, rep.value), a1, 1,
                                                 fam.horizon, "(B)", label));
    rep.checks.push_back(judge_tail_equality(graded_intersect(a0, rep.value), a0,
                                             d.copy_tail[(size_t)y], fam.horizon, "(base)",
                                             label));
    for (long long x : down)
        rep.checks.push_back(judge_tail_equality(
            graded_intersect(rep.value, fam.sets[(size_t)x]), partial[(size_t)x],
            fam.tail[(size_t)x][(size_t)y], fam.horizon, "(2)",
            d.base.elements[(size_t)x] + "," + label));
    rep.ok = all_agree(rep.checks);
    return rep;
}

std::vector<GradedSet> build_g_assignment(const DoubledRepresentation& d,
                                          const std::vector<bool>& s,
                                          std::vector<GsStepReport>* reports) {
    if ((long long)s.size() != d.base.size())
        throw ValidationError("selection size does not match the base order");
    std::vector<GradedSet> g((size_t)d.base.size());
    for (long long y : d.process_order) {
        GsStepReport rep = g_s_step(d, s, y, g);
        g[(size_t)y] = rep.value;
        if (reports) reports->push_back(std::move(rep));
    }
    return g;
}

} // namespace schemes
