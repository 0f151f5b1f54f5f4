#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "schemes/errors.hpp"
#include "schemes/scheme.hpp"
#include "schemes/verify.hpp"

using namespace schemes;
using namespace schemes::test;

namespace {

Block b(std::initializer_list<long long> xs) {
    Block out;
    for (long long x : xs) out.push_back(Ord{0, x});
    return out;
}

long long block_count(const SchemePrefix& s) {
    long long n = 0;
    for (const auto& lv : s.levels) n += (long long)lv.size();
    return n;
}

} // namespace

TEST_CASE("the 10-point family has the frozen shape") {
    SchemePrefix s = f10();
    REQUIRE(s.top_level() == 4);
    CHECK(s.domain == iota(10));
    CHECK(s.level(0).size() == 10);
    CHECK(s.level(1).size() == 9);
    CHECK(s.level(2).size() == 4);
    CHECK(s.level(3).size() == 2);
    CHECK(s.level(4).size() == 1);
    CHECK(block_count(s) == 26);

    for (long long i = 1; i <= 9; ++i) CHECK(s.has_block(1, b({0, i})));
    CHECK(s.has_block(2, b({0, 1, 2, 3})));
    CHECK(s.has_block(2, b({0, 1, 4, 5})));
    CHECK(s.has_block(2, b({0, 1, 6, 7})));
    CHECK(s.has_block(2, b({0, 1, 8, 9})));
    CHECK(s.has_block(3, b({0, 1, 2, 3, 4, 5})));
    CHECK(s.has_block(3, b({0, 1, 6, 7, 8, 9})));
    CHECK(s.has_block(4, b({0, 1, 2, 3, 4, 5, 6, 7, 8, 9})));
    CHECK_FALSE(s.has_block(1, b({1, 2})));
    CHECK_THROWS_AS(s.level(5), HorizonError);
}

TEST_CASE("the five-way fixture family") {
    SchemePrefix s = f6e();
    REQUIRE(s.top_level() == 2);
    CHECK(s.level(2).size() == 1);
    CHECK(s.level(1).size() == 5);
    for (long long i = 1; i <= 5; ++i) CHECK(s.has_block(1, b({0, i})));
}

TEST_CASE("decomposition roots and pieces") {
    TypeSpec spec = t4();

    DecompositionView d2 = canonical_decomposition(b({0, 1, 2, 3}), 2, spec);
    CHECK(d2.root == b({0}));
    REQUIRE(d2.pieces.size() == 3);
    CHECK(d2.pieces[0] == b({0, 1}));
    CHECK(d2.pieces[1] == b({0, 2}));
    CHECK(d2.pieces[2] == b({0, 3}));

    DecompositionView d4 = canonical_decomposition(b({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}), 4, spec);
    CHECK(d4.root == b({0, 1}));
    REQUIRE(d4.pieces.size() == 2);
    CHECK(d4.pieces[0] == b({0, 1, 2, 3, 4, 5}));
    CHECK(d4.pieces[1] == b({0, 1, 6, 7, 8, 9}));

    DecompositionView da = canonical_decomposition(b({0, 1, 4, 5}), 2, spec);
    CHECK(da.pieces[1] == b({0, 4}));
    CHECK(da.pieces[2] == b({0, 5}));

    CHECK_THROWS_AS(canonical_decomposition(b({0, 1}), 0, spec), ValidationError);
    CHECK_THROWS_AS(canonical_decomposition(b({0, 1, 2}), 2, spec), ValidationError);
}

TEST_CASE("piece 0 is always the size-m prefix, so levels nest") {
    for (SchemePrefix s : {f10(), f26(), f6e()}) {
        for (long long k = 1; k <= s.top_level(); ++k)
            for (const Block& f : s.level(k)) {
                DecompositionView d = canonical_decomposition(f, k, s.spec);
                Block prefix(f.begin(), f.begin() + s.spec.m(k - 1));
                CHECK(d.pieces[0] == prefix);
                for (const Block& p : d.pieces) {
                    CHECK(is_initial_segment(d.root, p));
                    CHECK(s.has_block(k - 1, p));
                }
            }
        // increasing union: the family over m_k is the restriction of the
        // family over m_K
        for (long long k = 1; k < s.top_level(); ++k) {
            SchemePrefix small = omega_scheme_prefix(s.spec, k);
            SchemePrefix cut = restrict_to(s, Ord{0, s.spec.m(k)});
            CHECK(cut.levels == small.levels);
        }
    }
}

TEST_CASE("schemes over general ordinal domains are order-isomorphic copies") {
    TypeSpec spec = t4();
    Block x = {Ord{0, 0}, Ord{0, 1}, Ord{1, 0}, Ord{1, 1}};
    SchemePrefix s = unique_finite_scheme(x, spec);
    CHECK(s.top_level() == 2);
    DecompositionView d = canonical_decomposition(x, 2, spec);
    CHECK(d.pieces[1] == Block{Ord{0, 0}, Ord{1, 0}});

    // relabel the 10-point domain by an arbitrary strictly increasing map
    SchemePrefix base = f10();
    Block image;
    for (long long i = 0; i < 10; ++i)
        image.push_back(i < 5 ? Ord{0, 3 * i + 1} : Ord{2 + (i - 5), i});
    SchemePrefix moved = unique_finite_scheme(image, spec);
    for (long long k = 0; k <= 4; ++k) {
        REQUIRE(moved.level(k).size() == base.level(k).size());
        for (size_t bi = 0; bi < base.level(k).size(); ++bi) {
            Block mapped;
            for (const Ord& e : base.level(k)[bi]) mapped.push_back(image[e.fin]);
            CHECK(moved.has_block(k, mapped));
        }
    }
}

TEST_CASE("bad domains are rejected") {
    TypeSpec spec = t4();
    CHECK_THROWS_AS(unique_finite_scheme(b({0, 1, 2, 3, 4}), spec), ValidationError);
    CHECK_THROWS_AS(unique_finite_scheme(Block{Ord{0, 1}, Ord{0, 1}}, spec), ValidationError);
    CHECK_THROWS_AS(omega_scheme_prefix(spec, 9), HorizonError);
}

TEST_CASE("restriction keeps exactly the blocks below the bound") {
    SchemePrefix s = f10();
    SchemePrefix r = restrict_to(s, Ord{0, 7});
    CHECK(r.domain == iota(7));
    CHECK(r.top_level() == 3);
    CHECK(r.level(3).size() == 1);
    CHECK(r.level(2).size() == 2); // {0,1,2,3} and {0,1,4,5}
    CHECK(r.level(1).size() == 6);
    for (const auto& lv : r.levels)
        for (const Block& f : lv) CHECK(f.back() < Ord{0, 7});
}

TEST_CASE("block lookup by contained points") {
    SchemePrefix s = f10();
    auto hits = blocks_containing(s, 2, b({2}));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == b({0, 1, 2, 3}));
    CHECK(blocks_containing(s, 1, {}).size() == 9);
    CHECK(blocks_containing(s, 3, b({2, 6})).empty());
    CHECK_THROWS_AS(blocks_containing(s, 1, b({12})), HorizonError);
}

TEST_CASE("axiom checker accepts the canonical families") {
    for (SchemePrefix s : {f10(), f26(), f6e()}) {
        SchemeCheckReport rep = is_scheme(s.levels, s.spec, s.domain);
        CHECK(rep.ok);
        CHECK(rep.violations.empty());
        CHECK(verify_scheme_axioms(s).ok);
    }
}

TEST_CASE("axiom checker pins down each corruption") {
    SchemePrefix s = f10();

    SUBCASE("missing singleton") {
        auto lv = s.levels;
        lv[0].erase(lv[0].begin() + 3);
        CHECK_FALSE(is_scheme(lv, s.spec, s.domain).ok);
    }
    SUBCASE("overlap that is not an initial segment") {
        auto lv = s.levels;
        lv[2][0] = b({0, 2, 4, 6});
        CHECK_FALSE(is_scheme(lv, s.spec, s.domain).ok);
    }
    SUBCASE("missing piece breaks reassembly") {
        auto lv = s.levels;
        auto& pairs = lv[1];
        pairs.erase(std::find(pairs.begin(), pairs.end(), b({0, 5})));
        CHECK_FALSE(is_scheme(lv, s.spec, s.domain).ok);
    }
    SUBCASE("uncovered pair") {
        auto lv = s.levels;
        lv.pop_back(); // drop the top block: {2,6} is now in no block
        CHECK_FALSE(is_scheme(lv, s.spec, s.domain).ok);
    }
}

TEST_CASE("exhaustive search confirms the family over 4 points is unique") {
    TypeSpec spec = t4();
    Block x = iota(4);
    SchemePrefix canon = unique_finite_scheme(x, spec);

    std::vector<Block> allPairs;
    for (long long i = 0; i < 4; ++i)
        for (long long j = i + 1; j < 4; ++j) allPairs.push_back(b({i, j}));

    long long valid = 0;
    for (unsigned mask = 0; mask < (1u << allPairs.size()); ++mask) {
        std::vector<std::vector<Block>> lv(3);
        for (long long i = 0; i < 4; ++i) lv[0].push_back(b({i}));
        for (size_t t = 0; t < allPairs.size(); ++t)
            if (mask & (1u << t)) lv[1].push_back(allPairs[t]);
        lv[2].push_back(x);
        if (is_scheme(lv, spec, x).ok) {
            ++valid;
            CHECK(lv == canon.levels);
        }
    }
    CHECK(valid == 1);
}

TEST_CASE("exhaustive search confirms the five-way family over 6 points is unique") {
    TypeSpec spec = te();
    Block x = iota(6);
    SchemePrefix canon = unique_finite_scheme(x, spec);

    std::vector<Block> allPairs;
    for (long long i = 0; i < 6; ++i)
        for (long long j = i + 1; j < 6; ++j) allPairs.push_back(b({i, j}));

    long long valid = 0;
    for (unsigned mask = 0; mask < (1u << allPairs.size()); ++mask) {
        std::vector<std::vector<Block>> lv(3);
        for (long long i = 0; i < 6; ++i) lv[0].push_back(b({i}));
        for (size_t t = 0; t < allPairs.size(); ++t)
            if (mask & (1u << t)) lv[1].push_back(allPairs[t]);
        lv[2].push_back(x);
        if (is_scheme(lv, spec, x).ok) {
            ++valid;
            CHECK(lv == canon.levels);
        }
    }
    CHECK(valid == 1);
}

TEST_CASE("omega prefixes grow on demand and answer membership") {
    OmegaGround g(t4(), 4);
    CHECK(g.prefix().omega);
    CHECK(g.level_of_size(6) == 3);
    CHECK(g.level_of_size(7) == -1);

    CHECK(g.is_omega_block(b({0, 1})));
    CHECK_FALSE(g.is_omega_block(b({1, 2})));
    CHECK(g.is_omega_block(b({0, 1, 8, 9})));

    // needs one growth step: the next level splits {0..19} into two copies
    CHECK_FALSE(g.is_omega_block(b({0, 10})));
    CHECK(g.is_omega_block(b({10, 15})));
    CHECK(g.is_omega_block(b({10, 11, 12, 13, 14, 15})));
    CHECK(g.prefix().spec.top_level() >= 5);

    CHECK_THROWS_AS(g.is_omega_block(Block{Ord{1, 0}}), ValidationError);
}
