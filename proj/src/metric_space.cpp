#include "schemes/metric_space.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "schemes/errors.hpp"

namespace schemes {

std::string rational_to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_string(const std::string& text) {
    try {
        const size_t slash = text.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(text));
        const long long p = std::stoll(text.substr(0, slash));
        const long long q = std::stoll(text.substr(slash + 1));
        if (q == 0) throw ValidationError("zero denominator in \"" + text + "\"");
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw ValidationError("not a rational: \"" + text + "\"");
    }
}

// ---------------------------------------------------------------------------
// Finite rational metric spaces
// ---------------------------------------------------------------------------

FiniteMetric FiniteMetric::from_matrix(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw ValidationError("distance matrix is not square");
    for (size_t i = 0; i < n; ++i) {
        if (m[i][i] != Rational(0)) throw ValidationError("nonzero diagonal distance");
        for (size_t j = 0; j < n; ++j) {
            if (m[i][j] != m[j][i]) throw ValidationError("asymmetric distance matrix");
            if (i != j && m[i][j] <= Rational(0))
                throw ValidationError("distances between distinct points must be positive");
        }
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (m[i][k] > m[i][j] + m[j][k])
                    throw ValidationError("triangle inequality fails at (" + std::to_string(i) +
                                          "," + std::to_string(j) + "," + std::to_string(k) +
                                          ")");
    FiniteMetric out;
    out.dist = std::move(m);
    return out;
}

FiniteMetric FiniteMetric::discrete(long long n) {
    if (n < 1) throw ValidationError("a space needs at least one point");
    std::vector<std::vector<Rational>> m((size_t)n, std::vector<Rational>((size_t)n, Rational(1)));
    for (long long i = 0; i < n; ++i) m[(size_t)i][(size_t)i] = Rational(0);
    FiniteMetric out;
    out.dist = std::move(m);
    return out;
}

FiniteMetric FiniteMetric::from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        std::vector<std::vector<Rational>> m;
        for (const auto& row : j.at("matrix")) {
            std::vector<Rational> r;
            for (const auto& cell : row) r.push_back(rational_from_string(cell.get<std::string>()));
            m.push_back(std::move(r));
        }
        return from_matrix(std::move(m));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad metric description: ") + e.what());
    }
}

std::string FiniteMetric::to_json() const {
    nlohmann::ordered_json j;
    j["matrix"] = nlohmann::ordered_json::array();
    for (const auto& row : dist) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const Rational& cell : row) r.push_back(rational_to_string(cell));
        j["matrix"].push_back(std::move(r));
    }
    return j.dump();
}

Rational FiniteMetric::diam() const {
    Rational best(0);
    for (size_t i = 0; i < dist.size(); ++i)
        for (size_t j = i + 1; j < dist.size(); ++j) best = std::max(best, dist[i][j]);
    return best;
}

Rational FiniteMetric::mindist() const {
    Rational best(1);
    bool seen = false;
    for (size_t i = 0; i < dist.size(); ++i)
        for (size_t j = i + 1; j < dist.size(); ++j)
            if (!seen || dist[i][j] < best) {
                best = dist[i][j];
                seen = true;
            }
    return best;
}

LevelMetrics LevelMetrics::discrete_for(const TypeSpec& spec, long long k_max) {
    if (k_max > spec.top_level())
        throw HorizonError("no branching data at level " + std::to_string(k_max));
    LevelMetrics out;
    for (long long k = 1; k <= k_max; ++k)
        out.by_level.emplace(k, FiniteMetric::discrete(spec.n(k)));
    return out;
}

LevelMetrics LevelMetrics::from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        LevelMetrics out;
        for (const auto& entry : j) {
            const long long k = entry.at("k").get<long long>();
            if (out.by_level.count(k))
                throw ValidationError("level " + std::to_string(k) + " appears twice");
            out.by_level.emplace(k, FiniteMetric::from_json(entry.dump()));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad level metrics: ") + e.what());
    }
}

std::string LevelMetrics::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [k, metric] : by_level) {
        nlohmann::ordered_json entry = nlohmann::ordered_json::parse(metric.to_json());
        nlohmann::ordered_json keyed;
        keyed["k"] = k;
        keyed["matrix"] = entry["matrix"];
        arr.push_back(std::move(keyed));
    }
    return arr.dump();
}

namespace {

const FiniteMetric& level_space(const LevelMetrics& lm, long long k) {
    auto it = lm.by_level.find(k);
    if (it == lm.by_level.end())
        throw ValidationError("no metric supplied for level " + std::to_string(k));
    return it->second;
}

} // namespace

Rational scale_factor(const LevelMetrics& lm, long long k) {
    Rational s(1);
    for (long long i = 1; i < k; ++i) s *= level_space(lm, i).mindist();
    return s;
}

Rational scheme_metric(const MetricContext& ctx, const LevelMetrics& lm, const Ord& alpha,
                       const Ord& beta) {
    if (alpha == beta) return Rational(0);
    const long long split = *ctx.delta(alpha, beta);
    const FiniteMetric& d = level_space(lm, split);
    if (d.size() != ctx.prefix().spec.n(split))
        throw ValidationError("level-" + std::to_string(split) +
                              " metric has the wrong number of points");
    if (d.diam() != Rational(1))
        throw ValidationError("level-" + std::to_string(split) + " metric must have diameter 1");
    const long long xa = ctx.xi(alpha, split);
    const long long xb = ctx.xi(beta, split);
    if (xa < 0 || xb < 0)
        throw SchemeError("split level places a point in a root");
    return scale_factor(lm, split) * d.dist[(size_t)xa][(size_t)xb];
}

// ---------------------------------------------------------------------------
// Monotone suborders and the search for spaces without them
// ---------------------------------------------------------------------------

MonotoneVerdict is_c_monotone(const FiniteMetric& space, const Rational& c) {
    if (c <= Rational(0)) throw ValidationError("the constant must be positive");
    const long long n = space.size();
    std::vector<long long> perm((size_t)n);
    std::iota(perm.begin(), perm.end(), 0);
    MonotoneVerdict v;
    do {
        ++v.orders_checked;
        bool good = true;
        for (long long a = 0; a < n && good; ++a)
            for (long long b = a + 1; b < n && good; ++b)
                for (long long z = b + 1; z < n && good; ++z) {
                    const Rational near = space.dist[(size_t)perm[(size_t)a]][(size_t)perm[(size_t)b]];
                    const Rational far = space.dist[(size_t)perm[(size_t)a]][(size_t)perm[(size_t)z]];
                    if (near > c * far) good = false;
                }
        if (good) {
            v.monotone = true;
            v.order = perm;
            return v;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return v;
}

MetricSearchResult finite_metric_search(long long n, long long size_bound,
                                        const std::vector<Rational>& grid) {
    if (n < 1) throw ValidationError("the target constant needs a positive index");
    if (grid.empty()) throw ValidationError("the distance grid is empty");
    for (const Rational& g : grid)
        if (g <= Rational(0)) throw ValidationError("grid distances must be positive");
    const Rational c(1, n);
    MetricSearchResult res;
    for (long long size = 3; size <= size_bound; ++size) {
        const long long cells = size * (size - 1) / 2;
        std::vector<size_t> pick((size_t)cells, 0);
        while (true) {
            std::vector<std::vector<Rational>> m((size_t)size,
                                                 std::vector<Rational>((size_t)size, Rational(0)));
            long long cell = 0;
            for (long long i = 0; i < size; ++i)
                for (long long j = i + 1; j < size; ++j) {
                    m[(size_t)i][(size_t)j] = m[(size_t)j][(size_t)i] = grid[pick[(size_t)cell]];
                    ++cell;
                }
            bool valid = true;
            for (long long i = 0; i < size && valid; ++i)
                for (long long j = 0; j < size && valid; ++j)
                    for (long long k = 0; k < size && valid; ++k)
                        if (m[(size_t)i][(size_t)k] > m[(size_t)i][(size_t)j] + m[(size_t)j][(size_t)k])
                            valid = false;
            if (valid) {
                FiniteMetric cand;
                cand.dist = std::move(m);
                if (!is_c_monotone(cand, c).monotone) {
                    // re-verify from scratch before returning
                    FiniteMetric checked = FiniteMetric::from_matrix(cand.dist);
                    if (is_c_monotone(checked, c).monotone)
                        throw SchemeError("refutation did not survive re-verification");
                    res.found = true;
                    res.size = size;
                    res.space = std::move(checked);
                    return res;
                }
            }
            // next assignment: last cell varies fastest
            long long pos = cells - 1;
            while (pos >= 0 && ++pick[(size_t)pos] == grid.size()) {
                pick[(size_t)pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Captured families as isometric copies of a level space
// ---------------------------------------------------------------------------

IsometryReport isometry_check(const MetricContext& ctx, const LevelMetrics& lm,
                              const CaptureReport& report) {
    IsometryReport out;
    out.level = report.level;
    const FiniteMetric& d = level_space(lm, report.level);
    const Rational s = scale_factor(lm, report.level);
    const std::vector<Block>& sets = report.witness.sets;
    out.ok = true;
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            for (size_t a = (size_t)report.witness.r; a < sets[i].size(); ++a) {
                ++out.pairs_checked;
                const Rational actual = scheme_metric(ctx, lm, sets[i][a], sets[j][a]);
                const Rational expect = s * d.dist[i][j];
                if (actual != expect) {
                    out.ok = false;
                    if (out.reason.empty())
                        out.reason = "members " + std::to_string(i) + "," + std::to_string(j) +
                                     " at position " + std::to_string(a) + ": distance " +
                                     rational_to_string(actual) + ", level metric " +
                                     rational_to_string(expect);
                }
            }
    return out;
}

} // namespace schemes
