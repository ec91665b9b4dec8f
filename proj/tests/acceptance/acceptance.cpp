/* Acceptance suite: one pass/fail line per criterion. The end-to-end check
 * drives the bundled toy tower through every pipeline stage and compares
 * the computed logarithms with an independent Pollard-rho oracle in the
 * order-ell subgroup. */

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "extnfs/arith.hpp"
#include "extnfs/io.hpp"
#include "extnfs/linalg.hpp"
#include "extnfs/pipeline.hpp"
#include "extnfs/record.hpp"
#include "extnfs/relproc.hpp"
#include "extnfs/rng.hpp"
#include "extnfs/sieve4d.hpp"

using namespace extnfs;

namespace {

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Criterion> results;

void report(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, pass, detail});
    std::cout << (pass ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
}

/* Pollard rho in the subgroup of order ell generated by G: returns e with
 * G^e = T. Floyd cycle detection, deterministic restarts. */
uint64_t rho_dlog(const TowerField& F, const TowerElement& G, const TowerElement& T, uint64_t ell) {
    struct State {
        TowerElement x;
        uint64_t a, b;
    };
    auto step = [&](State& s) {
        uint64_t cls = mpz_fdiv_ui(s.x.c[0].get_mpz_t(), 3);
        if (cls == 0) {
            s.x = F.mul(s.x, G);
            s.a = addmod_u64(s.a, 1, ell);
        } else if (cls == 1) {
            s.x = F.mul(s.x, T);
            s.b = addmod_u64(s.b, 1, ell);
        } else {
            s.x = F.mul(s.x, s.x);
            s.a = mulmod_u64(s.a, 2, ell);
            s.b = mulmod_u64(s.b, 2, ell);
        }
    };
    Rng rng(0xfeedull);
    for (int attempt = 0; attempt < 12; attempt++) {
        uint64_t a0 = rng.below(ell), b0 = rng.below(ell);
        TowerElement x0 = F.mul(F.pow(G, Int((unsigned long)a0)), F.pow(T, Int((unsigned long)b0)));
        State slow{x0, a0, b0}, fast{x0, a0, b0};
        for (uint64_t i = 0; i < (1ull << 22); i++) {
            step(slow);
            step(fast);
            step(fast);
            if (slow.x == fast.x) {
                // a_s + e b_s = a_f + e b_f
                uint64_t db = submod_u64(slow.b, fast.b, ell);
                if (db == 0) break;  // degenerate, restart
                uint64_t da = submod_u64(fast.a, slow.a, ell);
                return mulmod_u64(da, invmod_u64(db, ell), ell);
            }
        }
    }
    throw std::runtime_error("rho oracle: no collision found");
}

void criterion_record() {
    auto t0 = std::chrono::steady_clock::now();
    SetupReport rep = verify_paper_record(record_fixture());
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << rep.checks.size() << " checks, " << dt << "s";
    report("1 paper-record verification (exact)", rep.all_pass() && dt < 10.0, os.str());
}

void criterion_e2e(const std::string& config_path) {
    PipelineConfig cfg = load_config(config_path);
    cfg.workdir = "acceptance-work";
    std::filesystem::remove_all(cfg.workdir);

    for (const auto& stage : stage_names()) {
        std::cout << "  [e2e] stage " << stage << "..." << std::endl;
        run_stage(stage, cfg);
    }

    // oracle comparison on the descent results
    PolySetup setup = parse_setup(read_file(cfg.workdir + "/setup.txt"));
    TowerField F = setup.field();
    uint64_t ell = mpz_get_ui(setup.params.ell.get_mpz_t());
    const Int& p = setup.params.p;
    Int C = (p * p * p * p - 1) / setup.params.ell;

    TowerElement g = F.one();
    int matches = 0, total = 0;
    std::istringstream is(read_file(cfg.workdir + "/descent.txt"));
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("# generator = ", 0) == 0) {
            std::istringstream cs(line.substr(14));
            std::string tok;
            std::array<Int, 4> c;
            int i = 0;
            while (std::getline(cs, tok, ',') && i < 4) c[(size_t)i++] = Int(tok);
            g = F.make(c[0], c[1], c[2], c[3]);
            continue;
        }
        if (line.rfind("dlog ", 0) != 0) continue;
        auto tpos = line.find("target=");
        auto lpos = line.find(" log=");
        std::istringstream cs(line.substr(tpos + 7, lpos - tpos - 7));
        std::string tok;
        std::array<Int, 4> c;
        int i = 0;
        while (std::getline(cs, tok, ',') && i < 4) c[(size_t)i++] = Int(tok);
        uint64_t log = std::stoull(line.substr(lpos + 5));
        TowerElement t = F.make(c[0], c[1], c[2], c[3]);

        TowerElement G = F.pow(g, C), T = F.pow(t, C);
        uint64_t oracle = rho_dlog(F, G, T, ell);
        total++;
        if (oracle == log) matches++;
    }
    std::ostringstream os;
    os << matches << "/" << total << " targets match the rho oracle";
    report("2 end-to-end toy DLP", total >= 5 && matches == total, os.str());
}

void criterion_enumeration() {
    PolySetup setup = parse_setup(read_file("acceptance-work/setup.txt"));
    IdealClassifier cls(setup);
    Rng rng(77);
    auto primes = primes_up_to(10000);
    int done = 0, good = 0;
    size_t pidx = 30;
    while (done < 200) {
        pidx = (pidx + 1 + rng.below(5)) % primes.size();
        uint64_t q = primes[pidx];
        if (q < 17) continue;
        const auto& c = cls.classify(0, q);
        if (c.status != QStatus::ok) continue;
        const PrimeIdeal* deg1 = nullptr;
        for (const auto& id : c.ideals)
            if (id.kind == IdealKind::deg1) deg1 = &id;
        if (!deg1) continue;
        long long B = done % 3 == 0 ? 4 : (done % 3 == 1 ? 8 : 16);
        Orthotope box{{B, B, B, B}};
        SpecialQ sq = build_special_q_lattice(*deg1, setup);
        auto pts = enumerate_box_points(sq.reduced_basis, box);
        std::set<std::array<long long, 4>> got(pts.begin(), pts.end());
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
        if (got == expect && got.size() == pts.size()) good++;
        done++;
    }
    report("3 enumeration oracle equivalence", good == 200, std::to_string(good) + "/200");
}

void criterion_algorithms() {
    Rng rng(2024);
    int ok1 = 0, n1 = 0;
    while (n1 < 10000) {
        std::array<long long, 4> N, V;
        for (int i = 0; i < 4; i++) {
            N[(size_t)i] = rng.range(-20, 20);
            V[(size_t)i] = rng.range(-10, 10);
        }
        if (N == std::array<long long, 4>{0, 0, 0, 0}) continue;
        long long B = 1 + (long long)rng.below(8);
        Orthotope box{{B, B, B, B}};
        bool pos = false, neg = false, zero = false;
        for (long long x = -B; x < B; x++)
            for (long long y = -B; y < B; y++)
                for (long long z = -B; z < B; z++)
                    for (long long t = -B; t < B; t++) {
                        long long s = N[0] * (x - V[0]) + N[1] * (y - V[1]) + N[2] * (z - V[2]) +
                                      N[3] * (t - V[3]);
                        (s > 0 ? pos : (s < 0 ? neg : zero)) = true;
                    }
        bool expect = zero || (pos && neg);
        if (subspace_intersects_box(N, V, box) == expect) ok1++;
        n1++;
    }

    Rng rng2(515);
    int ok2 = 0, n2 = 0;
    while (n2 < 10000) {
        std::array<long long, 4> u, v, R;
        for (int i = 0; i < 4; i++) {
            u[(size_t)i] = rng2.range(-20, 20);
            v[(size_t)i] = rng2.range(-20, 20);
            R[(size_t)i] = rng2.range(-20, 20);
        }
        bool indep = false;
        for (int i = 0; i < 4 && !indep; i++)
            for (int j = i + 1; j < 4; j++)
                if (u[(size_t)i] * v[(size_t)j] - u[(size_t)j] * v[(size_t)i] != 0) {
                    indep = true;
                    break;
                }
        if (!indep) continue;
        long long B = 1 + (long long)rng2.below(8);
        Orthotope box{{B, B, B, B}};
        long long best_b = -1000000, best_a = -1000000;
        for (long long b = -200; b <= 200; b++)
            for (long long a = -200; a <= 200; a++) {
                bool in = true;
                for (int i = 0; i < 4 && in; i++) {
                    long long x = R[(size_t)i] + a * u[(size_t)i] + b * v[(size_t)i];
                    if (x < -B || x >= B) in = false;
                }
                if (in && (b > best_b || (b == best_b && a > best_a))) {
                    best_b = b;
                    best_a = a;
                }
            }
        bool agree;
        if (best_b == -1000000) {
            try {
                ilp_start_point(u, v, R, box);
                agree = false;
            } catch (const std::runtime_error&) {
                agree = true;
            }
        } else {
            auto [a, b] = ilp_start_point(u, v, R, box);
            agree = (b == best_b && a == best_a);
        }
        if (agree) ok2++;
        n2++;
    }
    report("4 Algorithm 1 / Algorithm 2 oracles",
           ok1 == 10000 && ok2 == 10000,
           std::to_string(ok1) + "/10000 and " + std::to_string(ok2) + "/10000");
}

void criterion_coherence() {
    PolySetup setup = parse_setup(read_file("acceptance-work/setup.txt"));
    IdealClassifier cls(setup);
    int sq_done = 0;
    long checked = 0, good = 0;
    for (uint64_t q = 1031; sq_done < 20 && q < 100000; q++) {
        if (!is_prime_u64(q)) continue;
        const auto& c = cls.classify(0, q);
        if (c.status != QStatus::ok) continue;
        for (const auto& id : c.ideals) {
            if (id.kind != IdealKind::deg1) continue;
            SpecialQ sq = build_special_q_lattice(id, setup);
            Orthotope box{{24, 24, 24, 24}};
            long count = 0;
            enumerate_box(sq.reduced_basis, box,
                          [&](const std::array<long long, 4>&, const std::array<long long, 4>& x) {
                              if (count >= 1000) return;
                              if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) return;
                              count++;
                              checked++;
                              // q | N0 and the section-3.1 congruence
                              Int n0 = norm_side(setup, 0, x);
                              auto md = [&](long long v) {
                                  return (uint64_t)(((v % (long long)q) + (long long)q) %
                                                    (long long)q);
                              };
                              uint64_t lhs = addmod_u64(md(x[0]), mulmod_u64(md(x[1]), id.r, q), q);
                              uint64_t rhs = addmod_u64(md(x[2]), mulmod_u64(md(x[3]), id.r, q), q);
                              bool cong = addmod_u64(lhs, mulmod_u64(rhs, id.R, q), q) == 0;
                              if (cong && mpz_fdiv_ui(n0.get_mpz_t(), q) == 0) good++;
                          });
            sq_done++;
            if (sq_done >= 20) break;
        }
    }
    report("5 norm/lattice coherence", checked > 0 && checked == good,
           std::to_string(good) + "/" + std::to_string(checked));
}

void criterion_sm() {
    PolySetup setup = parse_setup(read_file("acceptance-work/setup.txt"));
    const Int& ell = setup.params.ell;
    uint64_t l = mpz_get_ui(ell.get_mpz_t());
    bool all = true;
    for (int side = 0; side < 2; side++) {
        SchirokauerSpec spec = build_schirokauer_spec(setup, side, ell);
        Rng rng(909 + (uint64_t)side);
        int pairs = 0;
        while (pairs < 100) {
            std::array<long long, 4> e;
            for (auto& x : e) x = rng.range(-40, 40);
            if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
            Int n = norm_side(setup, side, e);
            if (n == 0 || n % ell == 0) continue;
            long long m = (long long)(2 + rng.below(500));
            std::array<long long, 4> me{m * e[0], m * e[1], m * e[2], m * e[3]};
            auto sm_e = schirokauer_map(setup, spec, e);
            auto sm_m = schirokauer_map(setup, spec, {m, 0, 0, 0});
            auto sm_me = schirokauer_map(setup, spec, me);
            for (size_t j = 0; j < sm_e.size(); j++)
                if (sm_me[j] != addmod_u64(sm_e[j], sm_m[j], l)) all = false;
            pairs++;
        }
        // homogeneity via scalar powers
        for (long long base : {2ll, 3ll}) {
            auto sm1 = schirokauer_map(setup, spec, {base, 0, 0, 0});
            long long mk = 1;
            for (int k = 1; k <= 10; k++) {
                mk *= base;
                if (mk > (1ll << 60)) break;
                auto smk = schirokauer_map(setup, spec, {mk, 0, 0, 0});
                for (size_t j = 0; j < sm1.size(); j++)
                    if (smk[j] != mulmod_u64((uint64_t)k, sm1[j], l)) all = false;
            }
        }
    }
    const RecordFixture& rec = record_fixture();
    bool ranks = unit_rank(rec.setup.f) == 1 && unit_rank(rec.setup.g) == 3;
    report("6 Schirokauer map properties", all && ranks,
           std::string("additivity/homogeneity exact, record ranks ") +
               std::to_string(unit_rank(rec.setup.f)) + " and " +
               std::to_string(unit_rank(rec.setup.g)));
}

void criterion_wiedemann() {
    Rng rng(4242);
    int good = 0, total = 0;
    for (uint64_t ell : {101ull, 2147483647ull}) {
        for (int iter = 0; iter < 25; iter++) {
            size_t n = 5 + rng.below(150);
            size_t rows = n + rng.below(50);
            std::vector<uint64_t> x(n);
            for (auto& xi : x) xi = rng.below(ell);
            x[n - 1] = 1;
            SparseSystem m;
            m.ell = ell;
            m.ncols = n;
            m.nrows = rows;
            m.rows.resize(rows);
            for (size_t i = 0; i < rows; i++) {
                std::map<uint32_t, uint64_t> row;
                int nnz = 2 + (int)rng.below(6);
                for (int k = 0; k < nnz; k++) row[(uint32_t)rng.below(n - 1)] = rng.below(ell);
                unsigned __int128 acc = 0;
                for (auto& [c2, val] : row) acc += (unsigned __int128)val * x[c2] % ell;
                row[(uint32_t)(n - 1)] = (uint64_t)((ell - (uint64_t)(acc % ell)) % ell);
                for (auto& [c2, val] : row)
                    if (val) m.rows[i].push_back({c2, val});
            }
            total++;
            try {
                auto v = wiedemann_nullspace(m, 1000 + (uint64_t)iter);
                bool nonzero = false;
                for (auto vi : v)
                    if (vi) nonzero = true;
                auto mv = m.apply(v);
                bool zero = true;
                for (auto r : mv)
                    if (r) zero = false;
                // dense elimination confirms the rank deficiency
                std::vector<std::vector<uint64_t>> a(rows, std::vector<uint64_t>(n, 0));
                for (size_t i = 0; i < rows; i++)
                    for (auto& [c2, val] : m.rows[i]) a[i][c2] = val;
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
                if (nonzero && zero && rank < n) good++;
            } catch (const std::exception&) {
            }
        }
    }
    report("7 linear algebra oracle", good == 50, std::to_string(good) + "/50");
}

void criterion_dedup() {
    PolySetup setup = parse_setup(read_file("acceptance-work/setup.txt"));
    const Int& p = setup.params.p;
    Rng rng(1212);
    bool all = true;
    int done = 0;
    while (done < 100) {
        std::array<long long, 4> e;
        for (auto& x : e) x = rng.range(-500, 500);
        if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
        DupKey base = canonical_key(e, p, setup.h);
        std::array<long long, 4> neg{-e[0], -e[1], -e[2], -e[3]};
        if (!(canonical_key(neg, p, setup.h) == base)) all = false;
        long long lambda = (long long)(1 + rng.below(1000));
        std::array<long long, 4> scaled;
        for (int i = 0; i < 4; i++)
            scaled[(size_t)i] = e[(size_t)i] * lambda % mpz_get_si(p.get_mpz_t());
        if (!(canonical_key(scaled, p, setup.h) == base)) all = false;
        done++;
    }

    // the worked p=5 collision
    IntPoly h5({1, -1, 1});
    bool collide = canonical_key({1, 1, 1, 0}, Int(5), h5) == canonical_key({4, 2, 0, 1}, Int(5), h5);

    // dedup idempotence on the pipeline's unique set
    auto unique = parse_relations(read_file("acceptance-work/rels.unique.txt"));
    auto twice = remove_duplicates(unique, p, setup.h);
    bool idem = twice.size() == unique.size();

    report("8 duplicate-removal semantics", all && collide && idem,
           std::string("invariance 100/100, p=5 collision ") + (collide ? "ok" : "bad") +
               ", idempotent " + (idem ? "yes" : "no"));
}

void criterion_record_scale_note() {
    std::cout << "NOTE 9 record-scale quantities (52,663 core-hours sieving, 58.8M->6.6M dedup,\n"
                 "       1,093,016-row matrix, 29 reconstruction passes) are documentation-only\n"
                 "       and substituted by criteria 2-8 at desk scale." << std::endl;
    const char* heavy = std::getenv("EXTNFS_HEAVY_FB");
    if (heavy && std::string(heavy) == "1") {
        // degree-1 count at bound 2^26 for the record polynomials, both sides
        const RecordFixture& rec = record_fixture();
        IdealClassifier cls(rec.setup);
        uint64_t count = 0;
        for (uint64_t q : primes_up_to(1ull << 26)) {
            for (int side = 0; side < 2; side++) {
                const auto& c = cls.classify(side, q);
                if (c.status != QStatus::ok) continue;
                for (const auto& id : c.ideals)
                    if (id.kind == IdealKind::deg1) count++;
            }
        }
        double rel = std::abs((double)count - 7913047.0) / 7913047.0;
        std::ostringstream os;
        os << count << " vs 7,913,047 (" << rel * 100 << "%)";
        report("9h optional heavy degree-1 census", rel <= 0.01, os.str());
    } else {
        std::cout << "       (heavy degree-1 census at 2^26 skipped; set EXTNFS_HEAVY_FB=1)"
                  << std::endl;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::string config = argc > 1 ? argv[1] : "data/toy/toy.cfg";
    try {
        criterion_record();
        criterion_e2e(config);
        criterion_enumeration();
        criterion_algorithms();
        criterion_coherence();
        criterion_sm();
        criterion_wiedemann();
        criterion_dedup();
        criterion_record_scale_note();
    } catch (const std::exception& ex) {
        std::cout << "FAIL (exception): " << ex.what() << std::endl;
        return 2;
    }
    bool all = true;
    for (const auto& c : results) all = all && c.pass;
    std::cout << (all ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return all ? 0 : 1;
}
