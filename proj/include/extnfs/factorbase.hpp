#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "extnfs/polyselect.hpp"

namespace extnfs {

enum class IdealKind : uint8_t { deg1, deg2_t1, deg2_t2, deg4 };

/* A factor-base entry. deg1 carries (r, R) with h(r) = 0 and the side
 * polynomial vanishing at R mod q. deg2_t1 carries the h-root r whose
 * specialization has no roots; its degree field is 2 when the non-split
 * part above r is a single quadratic and 4 when it is two conjugate
 * quadratics or an irreducible quartic (the two cases are
 * indistinguishable by the elements we factor, and always divide with
 * equal valuations). deg2_t2 carries (a0, a1) with (x + a1*alpha + a0)
 * dividing the side polynomial mod (q, h). deg4 is the inert census entry
 * on side 0; it never divides a coprime element. */
struct PrimeIdeal {
    int side = 0;
    uint64_t q = 0;
    IdealKind kind = IdealKind::deg1;
    int degree = 1;
    uint64_t r = 0;
    uint64_t R = 0;
    uint64_t a0 = 0, a1 = 0;
    uint32_t index = 0;  // position in the side-local ordering

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.side == b.side && a.q == b.q && a.kind == b.kind && a.r == b.r && a.R == b.R &&
               a.a0 == b.a0 && a.a1 == b.a1;
    }
    friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.side != b.side) return a.side < b.side;
        if (a.q != b.q) return a.q < b.q;
        if (a.kind != b.kind) return (int)a.kind < (int)b.kind;
        if (a.r != b.r) return a.r < b.r;
        if (a.R != b.R) return a.R < b.R;
        if (a.a0 != b.a0) return a.a0 < b.a0;
        return a.a1 < b.a1;
    }
    std::string str() const;
};

enum class QStatus : uint8_t {
    ok,
    projective,  // q divides the leading coefficient somewhere above q
    ramified,    // repeated factors in a specialization (or h) mod q
    unexpected   // factor degrees outside {1,2,4}
};

struct QClassification {
    QStatus status = QStatus::ok;
    std::vector<PrimeIdeal> ideals;  // empty unless status == ok
};

/* Classifies the prime ideals above q on one side; memoized. The same
 * classification backs factor-base construction, relation assembly and
 * descent, so they cannot disagree. */
class IdealClassifier {
  public:
    explicit IdealClassifier(const PolySetup& setup) : setup_(setup) {}
    const QClassification& classify(int side, uint64_t q) const;
    const PolySetup& setup() const { return setup_; }

  private:
    const PolySetup& setup_;
    mutable std::map<std::pair<int, uint64_t>, QClassification> cache_[2];
};

struct FactorBase {
    int side = 0;
    uint64_t bound = 0;
    std::vector<PrimeIdeal> ideals;                    // ordered, index = position
    std::vector<std::pair<uint64_t, QStatus>> skipped;  // projective/ramified q

    // entries above q, [first, last) into ideals
    std::pair<size_t, size_t> range(uint64_t q) const;
    std::optional<uint32_t> find(const PrimeIdeal& key) const;
};

FactorBase build_factor_base(const PolySetup& setup, int side, uint64_t bound);

/* Exact valuation of the (coprime) element at the ideal, by Hensel-lifted
 * congruences in the q-adic completion. Throws on non-coprime tuples. */
int ideal_valuation(const PolySetup& setup, const PrimeIdeal& ideal,
                    const std::array<long long, 4>& e);

/* Splits v_q(|N_side(e)|) = total over the ideals above q, weighted by
 * entry degree. Returns nullopt when q is skipped (projective/ramified) or
 * the accounting does not reconcile; such elements are not usable as
 * relations. */
struct QValuations {
    std::vector<std::pair<PrimeIdeal, int>> vals;  // ideal, exponent >= 1
};
std::optional<QValuations> attribute_valuations(const IdealClassifier& cls, int side, uint64_t q,
                                                int vq_norm, const std::array<long long, 4>& e);

}  // namespace extnfs
