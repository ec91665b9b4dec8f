#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "extnfs/relproc.hpp"
#include "extnfs/rng.hpp"
#include "toy_setup.hpp"

using namespace extnfs;

namespace {

Relation make_rel(std::array<long long, 4> e, std::vector<std::pair<int, uint64_t>> side0,
                  std::vector<std::pair<int, uint64_t>> side1 = {}) {
    Relation r;
    r.e = e;
    for (auto [exp, q] : side0) {
        PrimeIdeal id;
        id.side = 0;
        id.q = q;
        id.kind = IdealKind::deg1;
        id.degree = 1;
        id.r = 1;
        id.R = 2;
        r.fac[0].push_back({id, exp});
    }
    for (auto [exp, q] : side1) {
        PrimeIdeal id;
        id.side = 1;
        id.q = q;
        id.kind = IdealKind::deg1;
        id.degree = 1;
        id.r = 1;
        id.R = 2;
        r.fac[1].push_back({id, exp});
    }
    return r;
}

}  // namespace

TEST_CASE("canonical_key worked examples at p=5") {
    Int p(5);
    IntPoly h({1, -1, 1});
    // (1,1,1,0): (1+y)/1 = 1+y
    DupKey k1 = canonical_key({1, 1, 1, 0}, p, h);
    CHECK_FALSE(k1.infinity);
    CHECK(k1.k0 == 1);
    CHECK(k1.k1 == 1);
    // (4,2,0,1): (4+2y)/y = 1+y since y^-1 = 1-y mod (5, y^2-y+1)
    DupKey k2 = canonical_key({4, 2, 0, 1}, p, h);
    CHECK(k1 == k2);
    // zero numerator -> key 0; zero denominator -> infinity
    DupKey kz = canonical_key({0, 0, 1, 0}, p, h);
    CHECK_FALSE(kz.infinity);
    CHECK(kz.k0 == 0);
    CHECK(kz.k1 == 0);
    DupKey ki = canonical_key({1, 0, 0, 0}, p, h);
    CHECK(ki.infinity);
    CHECK_THROWS(canonical_key({0, 0, 5, 0}, p, h));
}

TEST_CASE("key invariance under scaling and sign") {
    const PolySetup& setup = test::toy_setup();
    const Int& p = setup.params.p;
    Rng rng(1212);
    for (int iter = 0; iter < 100; iter++) {
        std::array<long long, 4> e;
        for (auto& x : e) x = rng.range(-1000, 1000);
        if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
        DupKey base = canonical_key(e, p, setup.h);

        // global sign flip
        std::array<long long, 4> neg{-e[0], -e[1], -e[2], -e[3]};
        CHECK(canonical_key(neg, p, setup.h) == base);

        // scaling mod p: lambda * e with small lambda (stays in range)
        long long lambda = (long long)(1 + rng.below(1000));
        std::array<long long, 4> scaled;
        bool ok = true;
        for (int i = 0; i < 4; i++) {
            scaled[(size_t)i] = e[(size_t)i] * lambda % mpz_get_si(p.get_mpz_t());
            if (std::abs(scaled[(size_t)i]) > (1ll << 62) / 2) ok = false;
        }
        if (ok) CHECK(canonical_key(scaled, p, setup.h) == base);
    }
}

TEST_CASE("remove_duplicates collision and idempotence") {
    const Int p(5);
    IntPoly h({1, -1, 1});
    std::vector<Relation> rels;
    rels.push_back(make_rel({1, 1, 1, 0}, {{1, 3}}));
    rels.push_back(make_rel({4, 2, 0, 1}, {{1, 7}}));  // same key as above
    rels.push_back(make_rel({1, 1, 1, 0}, {{1, 3}}));  // exact duplicate
    rels.push_back(make_rel({1, 0, 1, 0}, {{1, 11}}));
    auto out = remove_duplicates(rels, p, h);
    REQUIRE(out.size() == 2);
    CHECK(out[0].e == std::array<long long, 4>{1, 1, 1, 0});  // first occurrence kept
    CHECK(out[1].e == std::array<long long, 4>{1, 0, 1, 0});
    auto out2 = remove_duplicates(out, p, h);
    CHECK(out2.size() == out.size());
}

TEST_CASE("purge semantics") {
    // {r1:{A}, r2:{A,B}, r3:{B}} -> unchanged
    std::vector<Relation> rels;
    rels.push_back(make_rel({1, 0, 0, 0}, {{1, 3}}));
    rels.push_back(make_rel({2, 1, 0, 0}, {{1, 3}, {1, 5}}));
    rels.push_back(make_rel({3, 0, 1, 0}, {{1, 5}}));
    auto res = purge(rels, -10, 100);
    CHECK(res.kept.size() == 3);

    // {r1:{A,B}, r2:{B}} -> cascade removes both
    std::vector<Relation> rels2;
    rels2.push_back(make_rel({1, 0, 0, 0}, {{1, 3}, {1, 5}}));
    rels2.push_back(make_rel({2, 1, 0, 0}, {{1, 5}}));
    auto res2 = purge(rels2, -10, 100);
    CHECK(res2.kept.empty());

    // insufficient excess reported
    CHECK_THROWS_WITH_AS(purge(rels2, 3, 100), doctest::Contains("insufficient"),
                         std::runtime_error);
}

TEST_CASE("merge eliminates weight-2 columns with matching valuations") {
    std::vector<Relation> rels;
    // A appears in r0 and r1 with equal exponent; B distinct
    rels.push_back(make_rel({1, 0, 0, 0}, {{1, 3}, {1, 5}}));
    rels.push_back(make_rel({2, 1, 0, 0}, {{1, 3}, {1, 7}}));
    rels.push_back(make_rel({3, 0, 1, 0}, {{2, 5}, {1, 7}}));
    auto res = merge(rels, 2);
    /* q=3 merges r0 into r1, then q=7 merges the combination into r2,
     * leaving a single row over the single surviving column q=5 */
    CHECK(res.rows.size() == 1);
    CHECK(res.columns == 1);
    CHECK(res.rows[0].members.size() == 3);

    // with merging disabled (weight limit 1) nothing changes
    auto keep = merge(rels, 1);
    CHECK(keep.rows.size() == 3);
    CHECK(keep.columns == 3);
}
