#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "extnfs/arith.hpp"
#include "extnfs/linalg.hpp"
#include "extnfs/record.hpp"
#include "extnfs/rng.hpp"
#include "toy_setup.hpp"

using namespace extnfs;

TEST_CASE("unit_rank") {
    CHECK(unit_rank(IntPoly({1, 0, 1})) == 0);  // x^2+1: (0,1)
    CHECK_THROWS(unit_rank(IntPoly({1, 2, 1})));

    // the record's absolute polynomials: 1 map on side 0, 3 on side 1
    const RecordFixture& rec = record_fixture();
    CHECK(unit_rank(rec.setup.f) == 1);
    CHECK(unit_rank(rec.setup.g) == 3);
}

TEST_CASE("schirokauer maps: unit element, additivity, homogeneity") {
    const PolySetup& setup = test::toy_setup();
    const Int& ell = setup.params.ell;
    uint64_t l = mpz_get_ui(ell.get_mpz_t());

    for (int side = 0; side < 2; side++) {
        SchirokauerSpec spec = build_schirokauer_spec(setup, side, ell);
        INFO("side ", side, " rank ", spec.rank);

        // SM(1) = 0
        auto sm1 = schirokauer_map(setup, spec, {1, 0, 0, 0});
        for (auto x : sm1) CHECK(x == 0);

        /* additivity on products: elements are (a + b alpha) + (c + d alpha) X;
         * the product of two such elements is generally not of that shape, so
         * additivity is asserted through integer scalars and powers, which stay
         * representable: SM(m * e) = SM(m) + SM(e). */
        Rng rng(909);
        for (int iter = 0; iter < 100; iter++) {
            std::array<long long, 4> e;
            for (auto& x : e) x = rng.range(-50, 50);
            if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
            Int n = norm_side(setup, side, e);
            if (n == 0 || n % ell == 0) continue;
            long long m = (long long)(2 + rng.below(97));
            std::array<long long, 4> me{m * e[0], m * e[1], m * e[2], m * e[3]};
            std::array<long long, 4> ms{m, 0, 0, 0};

            auto sm_e = schirokauer_map(setup, spec, e);
            auto sm_m = schirokauer_map(setup, spec, ms);
            auto sm_me = schirokauer_map(setup, spec, me);
            for (size_t j = 0; j < sm_e.size(); j++)
                CHECK(sm_me[j] == addmod_u64(sm_e[j], sm_m[j], l));
        }

        // homogeneity on scalar powers: SM(m^k) = k SM(m)
        for (long long m : {2ll, 3ll, 5ll, 7ll}) {
            auto sm_m = schirokauer_map(setup, spec, {m, 0, 0, 0});
            long long mk = 1;
            for (int k = 1; k <= 10; k++) {
                mk *= m;
                if (mk > (1ll << 60)) break;
                auto sm_mk = schirokauer_map(setup, spec, {mk, 0, 0, 0});
                for (size_t j = 0; j < sm_m.size(); j++)
                    CHECK(sm_mk[j] == mulmod_u64((uint64_t)k, sm_m[j], l));
            }
        }

        // ell dividing the norm is rejected
        // (construct via the zero element guard instead: norm check throws)
    }
}

TEST_CASE("build_system matches a hand-built matrix") {
    const PolySetup& setup = test::toy_setup();
    const Int& ell = setup.params.ell;
    uint64_t l = mpz_get_ui(ell.get_mpz_t());
    SchirokauerSpec sm0 = build_schirokauer_spec(setup, 0, ell);
    SchirokauerSpec sm1 = build_schirokauer_spec(setup, 1, ell);

    // three tiny legitimate relations from the sieve region
    IdealClassifier cls(setup);
    std::vector<Relation> rels;
    Rng rng(31337);
    while (rels.size() < 3) {
        std::array<long long, 4> e;
        for (auto& x : e) x = rng.range(-30, 30);
        long long g = 0;
        for (auto x : e) g = gcd_i64(g, x);
        if (g != 1) continue;
        auto rel = assemble_relation(setup, cls, e, {65536, 65536}, 1u << 14);
        if (rel) rels.push_back(*rel);
    }
    std::vector<RelationSet> sets;
    for (uint32_t i = 0; i < 3; i++) sets.push_back(RelationSet{{{i, 1}}});

    SparseSystem sys = build_system(rels, sets, setup, sm0, sm1, l);
    CHECK(sys.nrows == 3);
    CHECK(sys.ncols == sys.col_ideals.size() + (size_t)sm0.rank + (size_t)sm1.rank);

    // row values match direct evaluation
    for (size_t i = 0; i < 3; i++) {
        std::map<uint32_t, uint64_t> row(sys.rows[i].begin(), sys.rows[i].end());
        auto smv0 = schirokauer_map(setup, sm0, rels[i].e);
        for (int j = 0; j < sm0.rank; j++) {
            auto it = row.find((uint32_t)sys.sm_col(0, j));
            uint64_t got = it == row.end() ? 0 : it->second;
            CHECK(got == smv0[(size_t)j] % l);
        }
    }
    CHECK_THROWS(build_system(rels, {}, setup, sm0, sm1, l));
}

TEST_CASE("wiedemann worked examples") {
    SparseSystem m;
    m.ell = 101;
    m.nrows = 1;
    m.ncols = 2;
    m.rows = {{{0, 1}, {1, 100}}};
    auto v = wiedemann_nullspace(m, 7);
    // v = (1,1) up to scalar
    CHECK(v[0] != 0);
    CHECK(v[0] == v[1]);

    SparseSystem id;
    id.ell = 101;
    id.nrows = 5;
    id.ncols = 5;
    id.rows.resize(5);
    for (uint32_t i = 0; i < 5; i++) id.rows[i] = {{i, 1}};
    CHECK_THROWS_AS(wiedemann_nullspace(id, 3), std::runtime_error);
}

TEST_CASE("wiedemann agrees with dense elimination on planted kernels") {
    Rng rng(4242);
    int done = 0;
    for (uint64_t ell : {101ull, 2147483647ull}) {
        for (int iter = 0; iter < 25; iter++) {
            size_t n = 5 + rng.below(60);       // columns
            size_t rows = n + rng.below(40);    // at least as many rows
            // plant x: last column = -(sum of some others) so that Mx = 0
            std::vector<uint64_t> x(n);
            for (auto& xi : x) xi = rng.below(ell);
            x[n - 1] = 1;  // ensure nonzero
            SparseSystem m;
            m.ell = ell;
            m.ncols = n;
            m.nrows = rows;
            m.rows.resize(rows);
            for (size_t i = 0; i < rows; i++) {
                // random sparse row, then fix the last entry so that <row, x> = 0
                std::map<uint32_t, uint64_t> row;
                int nnz = 2 + (int)rng.below(6);
                for (int k = 0; k < nnz; k++) {
                    uint32_t c = (uint32_t)rng.below(n - 1);
                    row[c] = rng.below(ell);
                }
                unsigned __int128 acc = 0;
                for (auto& [c, val] : row) acc += (unsigned __int128)val * x[c] % ell;
                // row[n-1] * x[n-1] = -acc  (x[n-1] = 1)
                row[(uint32_t)(n - 1)] = (uint64_t)((ell - (uint64_t)(acc % ell)) % ell);
                for (auto& [c, val] : row)
                    if (val) m.rows[i].push_back({c, val});
            }
            auto v = wiedemann_nullspace(m, 1000 + (uint64_t)iter);
            bool nonzero = false;
            for (auto vi : v)
                if (vi) nonzero = true;
            CHECK(nonzero);
            auto mv = m.apply(v);
            for (auto r : mv) CHECK(r == 0);

            // independent dense elimination oracle: kernel must exist
            std::vector<std::vector<uint64_t>> a(rows, std::vector<uint64_t>(n, 0));
            for (size_t i = 0; i < rows; i++)
                for (auto& [c, val] : m.rows[i]) a[i][c] = val;
            size_t rank = 0;
            for (size_t col = 0; col < n && rank < rows; col++) {
                size_t pivot = rank;
                while (pivot < rows && a[pivot][col] == 0) pivot++;
                if (pivot == rows) continue;
                std::swap(a[rank], a[pivot]);
                uint64_t inv = invmod_u64(a[rank][col], ell);
                for (size_t i = 0; i < rows; i++) {
                    if (i == rank || a[i][col] == 0) continue;
                    uint64_t f = mulmod_u64(a[i][col], inv, ell);
                    for (size_t j = 0; j < n; j++)
                        a[i][j] = submod_u64(a[i][j], mulmod_u64(f, a[rank][j], ell), ell);
                }
                rank++;
            }
            CHECK(rank < n);  // planted kernel implies rank deficiency
            done++;
        }
    }
    CHECK(done == 50);
}
