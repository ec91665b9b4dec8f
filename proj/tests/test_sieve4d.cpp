#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "extnfs/arith.hpp"
#include "extnfs/rng.hpp"
#include "extnfs/sieve4d.hpp"
#include "toy_setup.hpp"

using namespace extnfs;

TEST_CASE("subspace_intersects_box examples") {
    Orthotope box{{2, 2, 2, 2}};
    CHECK(subspace_intersects_box({0, 0, 0, 1}, {0, 0, 0, 0}, box));
    CHECK_FALSE(subspace_intersects_box({0, 0, 0, 1}, {0, 0, 0, 5}, box));
    CHECK_THROWS(subspace_intersects_box({0, 0, 0, 0}, {0, 0, 0, 0}, box));
}

TEST_CASE("subspace_intersects_box agrees with exhaustive point-sign scan") {
    Rng rng(2024);
    int checked = 0;
    for (int iter = 0; iter < 10000; iter++) {
        std::array<long long, 4> N, V;
        for (int i = 0; i < 4; i++) {
            N[(size_t)i] = rng.range(-20, 20);
            V[(size_t)i] = rng.range(-10, 10);
        }
        if (N == std::array<long long, 4>{0, 0, 0, 0}) continue;
        long long B = 1 + (long long)rng.below(8);
        Orthotope box{{B, B, B, B}};

        // brute force: hyperplane meets the corner hull iff the signed
        // values of N.(P - V) over all integer box points change sign or hit 0
        bool pos = false, neg = false, zero = false;
        for (long long x = -B; x < B; x++)
            for (long long y = -B; y < B; y++)
                for (long long z = -B; z < B; z++)
                    for (long long t = -B; t < B; t++) {
                        long long s = N[0] * (x - V[0]) + N[1] * (y - V[1]) + N[2] * (z - V[2]) +
                                      N[3] * (t - V[3]);
                        if (s > 0) pos = true;
                        else if (s < 0) neg = true;
                        else zero = true;
                    }
        bool expect = zero || (pos && neg);
        CHECK(subspace_intersects_box(N, V, box) == expect);
        checked++;
    }
    CHECK(checked > 9000);
}

TEST_CASE("ilp_start_point examples") {
    Orthotope box{{4, 4, 4, 4}};
    std::array<long long, 4> e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
    auto [a1, b1] = ilp_start_point(e1, e2, {0, 0, 0, 0}, box);
    CHECK(a1 == 3);
    CHECK(b1 == 3);
    auto [a2, b2] = ilp_start_point(e1, e2, {-5, 0, 0, 0}, box);
    CHECK(a2 == 8);
    CHECK(b2 == 3);
}

TEST_CASE("ilp_start_point agrees with exhaustive (a,b) scan") {
    Rng rng(515);
    for (int iter = 0; iter < 10000; iter++) {
        std::array<long long, 4> u, v, R;
        for (int i = 0; i < 4; i++) {
            u[(size_t)i] = rng.range(-20, 20);
            v[(size_t)i] = rng.range(-20, 20);
            R[(size_t)i] = rng.range(-20, 20);
        }
        // u, v must be independent directions for a plane
        bool degenerate = true;
        for (int i = 0; i < 4 && degenerate; i++)
            for (int j = i + 1; j < 4; j++)
                if (u[(size_t)i] * v[(size_t)j] - u[(size_t)j] * v[(size_t)i] != 0) {
                    degenerate = false;
                    break;
                }
        if (degenerate) continue;
        long long B = 1 + (long long)rng.below(8);
        Orthotope box{{B, B, B, B}};

        long long best_b = -1000000, best_a = -1000000;
        for (long long b = -200; b <= 200; b++)
            for (long long a = -200; a <= 200; a++) {
                std::array<long long, 4> x;
                bool in = true;
                for (int i = 0; i < 4; i++) {
                    x[(size_t)i] = R[(size_t)i] + a * u[(size_t)i] + b * v[(size_t)i];
                    if (x[(size_t)i] < -B || x[(size_t)i] >= B) in = false;
                }
                if (in && (b > best_b || (b == best_b && a > best_a))) {
                    best_b = b;
                    best_a = a;
                }
            }
        if (best_b == -1000000) {
            CHECK_THROWS(ilp_start_point(u, v, R, box));
        } else {
            auto [a, b] = ilp_start_point(u, v, R, box);
            CHECK(b == best_b);
            CHECK(a == best_a);
            std::array<long long, 4> x;
            for (int i = 0; i < 4; i++)
                x[(size_t)i] = R[(size_t)i] + a * u[(size_t)i] + b * v[(size_t)i];
            CHECK(box.contains(x));
        }
    }
}

TEST_CASE("enumerate_box counts on scaled identity") {
    Orthotope box{{2, 2, 2, 2}};
    CHECK(enumerate_box_points(Basis4::identity(), box).size() == 256);

    Basis4 two;
    for (int i = 0; i < 4; i++) two.at(i, i) = 2;
    CHECK(enumerate_box_points(two, box).size() == 16);
}

TEST_CASE("enumerate_box equals brute-force lattice scan") {
    auto setup = test::toy_setup();
    Rng rng(77);
    int done = 0;
    std::vector<uint64_t> primes = primes_up_to(10000);
    IdealClassifier cls(setup);
    size_t pidx = 25;  // start past the tiny primes
    while (done < 200) {
        pidx = (pidx + 1 + rng.below(7)) % primes.size();
        uint64_t q = primes[pidx];
        const auto& c = cls.classify(0, q);
        if (c.status != QStatus::ok) continue;
        const PrimeIdeal* deg1 = nullptr;
        for (const auto& id : c.ideals)
            if (id.kind == IdealKind::deg1) deg1 = &id;
        if (!deg1) continue;

        long long B = (done % 3 == 0) ? 4 : (done % 3 == 1 ? 8 : 16);
        Orthotope box{{B, B, B, B}};
        SpecialQ sq = build_special_q_lattice(*deg1, setup);
        CHECK(abs(sq.raw_basis.det()) == Int((unsigned long)q));
        CHECK(abs(sq.reduced_basis.det()) == Int((unsigned long)q));

        auto pts = enumerate_box_points(sq.reduced_basis, box);
        std::set<std::array<long long, 4>> got(pts.begin(), pts.end());
        CHECK(got.size() == pts.size());  // duplicate-free

        // brute force: all box points satisfying the degree-1 congruence
        std::set<std::array<long long, 4>> expect;
        for (long long a = -B; a < B; a++)
            for (long long b = -B; b < B; b++)
                for (long long cc = -B; cc < B; cc++)
                    for (long long d = -B; d < B; d++) {
                        auto md = [&](long long x) {
                            return (uint64_t)(((x % (long long)q) + (long long)q) % (long long)q);
                        };
                        uint64_t lhs = addmod_u64(md(a), mulmod_u64(md(b), deg1->r, q), q);
                        uint64_t rhs = addmod_u64(md(cc), mulmod_u64(md(d), deg1->r, q), q);
                        if (addmod_u64(lhs, mulmod_u64(rhs, deg1->R, q), q) == 0)
                            expect.insert({a, b, cc, d});
                    }
        CHECK(got == expect);
        done++;
    }
    CHECK(done == 200);
}

TEST_CASE("special-q raw bases match the published matrices") {
    auto setup = test::toy_setup();
    PrimeIdeal id;
    id.side = 0;
    id.q = 11;
    id.kind = IdealKind::deg1;
    id.degree = 1;
    id.r = 3;
    id.R = 5;
    SpecialQ sq = build_special_q_lattice(id, setup);
    Basis4 expect;
    expect.at(0, 0) = 11;
    expect.at(0, 1) = -3;
    expect.at(1, 1) = 1;
    expect.at(0, 2) = -5;
    expect.at(2, 2) = 1;
    expect.at(1, 3) = -5;
    expect.at(3, 3) = 1;
    CHECK(sq.raw_basis == expect);

    PrimeIdeal inert;
    inert.side = 0;
    inert.q = 7;
    inert.kind = IdealKind::deg4;
    inert.degree = 4;
    SpecialQ sq4 = build_special_q_lattice(inert, setup);
    Basis4 seven;
    for (int i = 0; i < 4; i++) seven.at(i, i) = 7;
    CHECK(sq4.raw_basis == seven);
    IdealClassifier cls(setup);
    CHECK_THROWS(sieve_special_q(setup, cls, sq4, SieveParams{}));
}

TEST_CASE("relation text format round trip") {
    Relation r;
    r.e = {-3, 1, 0, 2};
    PrimeIdeal d1;
    d1.side = 0;
    d1.q = 0x1f;
    d1.kind = IdealKind::deg1;
    d1.degree = 1;
    d1.r = 0xa;
    d1.R = 0x17;
    PrimeIdeal t1;
    t1.side = 1;
    t1.q = 0x3;
    t1.kind = IdealKind::deg2_t1;
    t1.degree = 2;
    t1.r = 0x2;
    PrimeIdeal t2;
    t2.side = 1;
    t2.q = 0x5;
    t2.kind = IdealKind::deg2_t2;
    t2.degree = 2;
    t2.a0 = 0x4;
    t2.a1 = 0x1;
    r.fac[0].push_back({d1, 2});
    r.fac[1].push_back({t1, 1});
    r.fac[1].push_back({t2, 3});
    std::string s = r.str();
    CHECK(s == "-3,1,0,2:1f.a.17^2:3.t1.2^1,5.t2.4.1^3");
    Relation back = Relation::parse(s);
    CHECK(back.e == r.e);
    REQUIRE(back.fac[0].size() == 1);
    REQUIRE(back.fac[1].size() == 2);
    CHECK(back.fac[0][0].ideal.q == 0x1f);
    CHECK(back.fac[0][0].exp == 2);
    CHECK(back.fac[1][1].ideal.a0 == 4);
}

TEST_CASE("sign_normalize") {
    std::array<long long, 4> e{0, -2, 3, -1};
    sign_normalize(e);
    CHECK(e == std::array<long long, 4>{0, 2, -3, 1});
    sign_normalize(e);
    CHECK(e == std::array<long long, 4>{0, 2, -3, 1});
}
