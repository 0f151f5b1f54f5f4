#include "schemes/entangled.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "schemes/capture.hpp"
#include "schemes/errors.hpp"

namespace schemes {

int lex_compare(const std::vector<long long>& f, const std::vector<long long>& g) {
    if (f.size() != g.size())
        throw ValidationError("lexicographic comparison needs equal lengths");
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] < g[i]) return -1;
        if (f[i] > g[i]) return 1;
    }
    return 0;
}

RealizationType realization(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.size() != b.size())
        throw ValidationError("realization needs equal-length tuples");
    RealizationType out;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i])
            throw ValidationError("tie at coordinate " + std::to_string(i));
        out.t += a[i] < b[i] ? '<' : '>';
    }
    return out;
}

RealizationType realization_lex(const std::vector<std::vector<long long>>& a,
                                const std::vector<std::vector<long long>>& b) {
    if (a.size() != b.size())
        throw ValidationError("realization needs equal-length tuples");
    RealizationType out;
    for (size_t i = 0; i < a.size(); ++i) {
        const int c = lex_compare(a[i], b[i]);
        if (c == 0)
            throw ValidationError("tie at coordinate " + std::to_string(i));
        out.t += c < 0 ? '<' : '>';
    }
    return out;
}

std::vector<long long> order_pattern(const std::vector<long long>& values) {
    std::vector<long long> h(values.size());
    std::iota(h.begin(), h.end(), 0);
    std::sort(h.begin(), h.end(),
              [&](long long i, long long j) { return values[(size_t)i] < values[(size_t)j]; });
    for (size_t i = 1; i < h.size(); ++i)
        if (values[(size_t)h[i - 1]] == values[(size_t)h[i]])
            throw ValidationError("tied values admit no unique pattern");
    return h;
}

std::vector<long long> subset_code(const TypeSpec& spec, long long k, long long i) {
    if (k < 0)
        throw ValidationError("negative level");
    if (k + 1 > spec.top_level())
        throw HorizonError("subset codes at level " + std::to_string(k) +
                           " need the branching one level up");
    if (i < 0 || i >= spec.n(k + 1))
        throw ValidationError("code index " + std::to_string(i) +
                              " is outside the branching range");
    std::vector<long long> out;
    if (i == 0) return out; // by convention the unindexed case is empty
    const long long m = spec.m(k);
    if (m > 30)
        throw HorizonError("subset codes over " + std::to_string(m) +
                           " points are too large to enumerate");
    const long long bits = (i - 1) % (1LL << m);
    for (long long b = 0; b < m; ++b)
        if (bits >> b & 1) out.push_back(b);
    return out;
}

std::string EntangledVector::to_json() const {
    nlohmann::ordered_json j;
    j["alpha"] = to_string(alpha);
    j["f"] = values;
    return j.dump();
}

EntangledVector entangled_f(const MetricContext& ctx, const Ord& alpha, long long K) {
    if (K < 0)
        throw ValidationError("negative horizon");
    EntangledVector out;
    out.alpha = alpha;
    out.values.push_back(0);
    for (long long k = 1; k <= K; ++k) {
        const long long xi = ctx.xi(alpha, k);
        if (xi <= 0) {
            // roots carry 0; piece 0 gives +/-0 = 0 either way
            out.values.push_back(0);
            continue;
        }
        const std::vector<long long> code = subset_code(ctx.prefix().spec, k - 1, xi);
        const long long card = ctx.k_card(alpha, k - 1);
        const bool inside = std::find(code.begin(), code.end(), card) != code.end();
        out.values.push_back(inside ? xi : -xi);
    }
    return out;
}

RealizationOutcome captured_realization_check(const MetricContext& ctx,
                                              const std::vector<Block>& family, long long level,
                                              const RealizationType& t) {
    const TypeSpec& spec = ctx.prefix().spec;
    if (level < 1)
        throw ValidationError("capture levels start at 1");
    if (level > ctx.prefix().top_level())
        throw HorizonError("level " + std::to_string(level) + " is beyond the stored prefix");
    if ((long long)family.size() != spec.n(level))
        throw ValidationError("the family must have one member per piece at its level");
    const size_t arity = t.t.size();
    for (const Block& c : family)
        if (c.size() != arity)
            throw ValidationError("tuple arity differs from the pattern length");
    for (char ch : t.t)
        if (ch != '<' && ch != '>')
            throw ValidationError("patterns use only '<' and '>'");

    if (arity > 0) { // width-0 tuples leave nothing to capture or verify
        DeltaSystemResult shape = witness_any_size(family);
        if (!shape.ok())
            throw ValidationError("family is not in system position: " + shape.violation);
        if (!shape.witness->root.empty())
            throw ValidationError("family members are not pairwise disjoint");
        CaptureOutcome cap = is_captured(ctx, *shape.witness, level, StarSet{false, true});
        if (!cap.ok())
            throw ValidationError("family is not captured at its level: " + cap.reason);
    }

    // the subset the pattern carves out of the base tuple, one level down
    std::set<long long> wanted;
    for (size_t j = 0; j < arity; ++j)
        if (t.t[j] == '<') wanted.insert(ctx.k_card(family[0][j], level - 1));
    std::vector<long long> target(wanted.begin(), wanted.end());

    RealizationOutcome out;
    for (long long i = 1; i < spec.n(level); ++i)
        if (subset_code(spec, level - 1, i) == target) {
            out.index = i;
            break;
        }
    if (out.index < 0) {
        out.reason = "no subset code matches the pattern; the branching at level " +
                     std::to_string(level) + " is too small";
        return out;
    }

    std::vector<std::vector<long long>> base, other;
    for (size_t j = 0; j < arity; ++j) {
        base.push_back(entangled_f(ctx, family[0][j], level).values);
        other.push_back(entangled_f(ctx, family[(size_t)out.index][j], level).values);
    }
    if (arity > 0) out.observed = realization_lex(base, other);
    if (out.observed.t != t.t) {
        out.reason = "realization mismatch: expected " + t.t + ", observed " + out.observed.t;
        return out;
    }
    out.ok = true;
    return out;
}

} // namespace schemes
