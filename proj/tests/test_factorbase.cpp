#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "extnfs/arith.hpp"
#include "extnfs/factorbase.hpp"
#include "extnfs/modpoly.hpp"
#include "extnfs/norms.hpp"
#include "extnfs/rng.hpp"
#include "extnfs/smooth.hpp"
#include "toy_setup.hpp"

using namespace extnfs;

namespace {

// independent per-prime oracle: count degree-1 pairs by direct root scans
// and recheck the defining congruences
void check_deg1_entries(const PolySetup& setup, int side, uint64_t q,
                        const std::vector<PrimeIdeal>& ideals) {
    const RelPoly& F = setup.side_rel(side);
    auto hroots = roots_mod(setup.h, q);
    std::set<std::pair<uint64_t, uint64_t>> expect;
    for (uint64_t r : hroots) {
        // specialize F at y = r by brute force evaluation over x
        for (uint64_t R = 0; R < q; R++) {
            Int val(0);
            for (int i = F.degree(); i >= 0; i--) {
                Int ci = F.coeff(i)[0] + F.coeff(i)[1] * Int((unsigned long)r);
                val = val * Int((unsigned long)R) + ci;
            }
            if (mpz_fdiv_ui(val.get_mpz_t(), q) == 0) expect.insert({r, R});
        }
    }
    std::set<std::pair<uint64_t, uint64_t>> got;
    for (const auto& id : ideals)
        if (id.kind == IdealKind::deg1) {
            got.insert({id.r, id.R});
            // spec invariant: h(r) = 0 and f_side(R) = 0 mod q
            CHECK(mpz_fdiv_ui(setup.h.eval(Int((unsigned long)id.r)).get_mpz_t(), q) == 0);
            CHECK(mpz_fdiv_ui(setup.side_abs(side).eval(Int((unsigned long)id.R)).get_mpz_t(), q) ==
                  0);
        }
    CHECK(got == expect);
}

}  // namespace

TEST_CASE("factor base matches brute-force classification") {
    const PolySetup& setup = test::toy_setup();
    IdealClassifier cls(setup);
    for (int side = 0; side < 2; side++) {
        FactorBase fb = build_factor_base(setup, side, 200);
        for (uint64_t q : primes_up_to(200)) {
            const auto& c = cls.classify(side, q);
            auto [first, last] = fb.range(q);
            std::vector<PrimeIdeal> here(fb.ideals.begin() + (long)first,
                                         fb.ideals.begin() + (long)last);
            if (c.status != QStatus::ok) {
                CHECK(here.empty());
                continue;
            }
            CHECK(here.size() == c.ideals.size());
            check_deg1_entries(setup, side, q, here);
        }
    }
}

TEST_CASE("factor base determinism and ordering") {
    const PolySetup& setup = test::toy_setup();
    FactorBase a = build_factor_base(setup, 0, 500);
    FactorBase b = build_factor_base(setup, 0, 500);
    REQUIRE(a.ideals.size() == b.ideals.size());
    for (size_t i = 0; i < a.ideals.size(); i++) {
        CHECK(a.ideals[i] == b.ideals[i]);
        CHECK(a.ideals[i].index == i);
        if (i > 0) CHECK(a.ideals[i - 1] < a.ideals[i]);
    }
    CHECK_THROWS(build_factor_base(setup, 0, 1));
}

TEST_CASE("ideal_valuation basics") {
    const PolySetup& setup = test::toy_setup();
    IdealClassifier cls(setup);

    // a lattice point of any deg1 ideal has valuation >= 1 there
    FactorBase fb = build_factor_base(setup, 0, 2000);
    int tested = 0;
    for (const auto& id : fb.ideals) {
        if (id.kind != IdealKind::deg1 || id.q < 50) continue;
        std::array<long long, 4> e{-(long long)id.R, 0, 1, 0};  // a + c R = 0 mod q
        int v = ideal_valuation(setup, id, e);
        CHECK(v >= 1);
        Int n = norm_side(setup, 0, e);
        CHECK(mpz_fdiv_ui(n.get_mpz_t(), id.q) == 0);
        if (++tested >= 50) break;
    }
    CHECK(tested == 50);

    // the unit (1,0,0,0) has valuation 0 everywhere
    for (const auto& id : fb.ideals) {
        CHECK(ideal_valuation(setup, id, {1, 0, 0, 0}) == 0);
    }

    // non-coprime tuples are rejected
    PrimeIdeal any = fb.ideals.front();
    CHECK_THROWS(ideal_valuation(setup, any, {2, 2, 0, 0}));
    CHECK_THROWS(ideal_valuation(setup, any, {0, 0, 0, 0}));
}

TEST_CASE("full-norm accounting over random coprime tuples") {
    const PolySetup& setup = test::toy_setup();
    IdealClassifier cls(setup);
    Rng rng(20250810);
    auto primes = primes_up_to(97);

    int accounted = 0;
    for (int iter = 0; iter < 1000; iter++) {
        std::array<long long, 4> e;
        for (auto& x : e) x = rng.range(-40, 40);
        long long g = 0;
        for (auto x : e) g = gcd_i64(g, x);
        if (g != 1) continue;

        for (int side = 0; side < 2; side++) {
            Int n = norm_side(setup, side, e);
            REQUIRE(n != 0);
            for (uint64_t q : primes) {
                int vq = 0;
                Int m = n;
                while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
                    m /= (unsigned long)q;
                    vq++;
                }
                const auto& c = cls.classify(side, q);
                if (c.status != QStatus::ok) continue;  // skipped q excluded by design
                int total = 0;
                for (const auto& id : c.ideals) total += id.degree * ideal_valuation(setup, id, e);
                CHECK(total == vq);
                accounted++;
            }
        }
    }
    CHECK(accounted > 10000);
}

TEST_CASE("attribute_valuations reconciles and rejects") {
    const PolySetup& setup = test::toy_setup();
    IdealClassifier cls(setup);
    std::array<long long, 4> e{3, -1, 2, 5};
    for (int side = 0; side < 2; side++) {
        Int n = norm_side(setup, side, e);
        auto fac = smooth_factor(n, n + 1, ~0ull);
        REQUIRE(fac.accepted());
        for (auto& [p, v] : fac.factored->factors) {
            if (!p.fits_ulong_p()) continue;
            uint64_t q = mpz_get_ui(p.get_mpz_t());
            const auto& c = cls.classify(side, q);
            auto attr = attribute_valuations(cls, side, q, v, e);
            if (c.status == QStatus::ok) {
                REQUIRE(attr.has_value());
                int tot = 0;
                for (auto& [id, vv] : attr->vals) tot += id.degree * vv;
                CHECK(tot == v);
            } else {
                CHECK_FALSE(attr.has_value());
            }
        }
    }
}
