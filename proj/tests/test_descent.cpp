#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "extnfs/descent.hpp"
#include "extnfs/record.hpp"
#include "toy_setup.hpp"

using namespace extnfs;

TEST_CASE("verify_dlog on the published record values") {
    const RecordFixture& rec = record_fixture();
    TowerField F = rec.setup.field();
    TowerElement g = F.make(rec.generator[0], rec.generator[1], rec.generator[2], rec.generator[3]);
    TowerElement t = F.make(rec.target[0], rec.target[1], rec.target[2], rec.target[3]);

    CHECK(verify_dlog(g, t, rec.vlog_g, rec.vlog_t, rec.setup));
    // single-residue perturbation breaks the identity
    CHECK_FALSE(verify_dlog(g, t, rec.vlog_g, rec.vlog_t + 1, rec.setup));
    // symmetry: (g, g, v, v) holds for any v
    CHECK(verify_dlog(g, g, Int(123456789), Int(123456789), rec.setup));
    CHECK(verify_dlog(g, g, Int(1), Int(1), rec.setup));
}

TEST_CASE("intermediate_descent rejects factor-base primes") {
    const PolySetup& setup = test::toy_setup();
    IdealClassifier cls(setup);
    LogDatabase db;
    db.ell = mpz_get_ui(setup.params.ell.get_mpz_t());
    DescentParams params;
    params.fb_bound = 65536;

    PrimeIdeal small;
    small.side = 0;
    small.q = 1009;  // below the bound: the database is the right place
    small.kind = IdealKind::deg1;
    small.degree = 1;
    small.r = 1;
    small.R = 2;
    CHECK_THROWS_WITH_AS(intermediate_descent(small, setup, cls, db, params),
                         doctest::Contains("use database"), std::invalid_argument);
}

TEST_CASE("initial_split finds a smooth usable candidate on the toy tower") {
    const PolySetup& setup = test::toy_setup();
    IdealClassifier cls(setup);
    TowerField F = setup.field();
    LogDatabase db;  // empty: every prime must be degree-1 attributable
    db.ell = mpz_get_ui(setup.params.ell.get_mpz_t());

    DescentParams params;
    params.fb_bound = 65536;
    params.bl_bits = 34;
    params.split_shift_tries = 24;

    TowerElement g = F.make(5, 0, 1, 0);
    TowerElement t = F.make(271828, 182845, 904523, 536028);
    DescentTranscript transcript;
    SplitResult split = initial_split(t, g, setup, cls, db, params, &transcript);

    // the factorization is a real factorization of the side-0 norm
    Int n0 = norm_side(setup, 0, split.element);
    CHECK(split.norm_factors.value() == n0);
    for (const auto& [p, e] : split.norm_factors.factors) {
        CHECK(is_prime(p));
        CHECK(p <= (Int(1) << 34));
    }

    // the element's field image equals a subfield multiple of t * g^shift:
    // dividing out must land in the quadratic subfield (x-coords zero)
    TowerElement img = F.make(Int((long)split.element[0]), Int((long)split.element[1]),
                              Int((long)split.element[2]), Int((long)split.element[3]));
    TowerElement expect = t;
    for (long i = 0; i < split.shift; i++) expect = F.mul(expect, g);
    TowerElement ratio = F.mul(img, F.inv(expect));
    CHECK(ratio.c[2] == 0);
    CHECK(ratio.c[3] == 0);
    CHECK_FALSE(ratio.is_zero());

    CHECK_THROWS(initial_split(F.make(0, 0, 0, 0), g, setup, cls, db, params));
}
