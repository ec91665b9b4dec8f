#include "extnfs/record.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "extnfs/smooth.hpp"

#ifndef EXTNFS_DATA_DIR
#define EXTNFS_DATA_DIR "data"
#endif

namespace extnfs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

RecordFixture load_record_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open record fixture: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::runtime_error("record fixture missing key " + k);
        return it->second;
    };

    RecordFixture fix;
    fix.setup.params.p = Int(need("p"));
    fix.setup.params.ell = Int(need("ell"));
    fix.setup.params.cofactor = Int(need("cofactor"));
    {
        std::vector<Int> hc;
        for (auto& tok : split(need("h"), ',')) hc.emplace_back(trim(tok));
        fix.setup.h = IntPoly(hc);
    }
    fix.setup.s = Int(need("s"));
    {
        auto tt = split(need("t"), ',');
        fix.setup.t = {Int(trim(tt.at(0))), Int(trim(tt.at(1)))};
    }
    fix.setup.u = Int(need("u"));
    fix.setup.v = Int(need("v"));
    fix.setup.f0 = conjugation_f0(fix.setup.t, fix.setup.u, fix.setup.v);
    fix.setup.g0 = conjugation_g0(fix.setup.t, fix.setup.s, fix.setup.h);
    fix.setup.f = absolute_poly(fix.setup.f0, fix.setup.h);
    fix.setup.g = absolute_poly(fix.setup.g0, fix.setup.h);

    auto parse_elem = [&](const std::string& s) {
        auto parts = split(s, ',');
        if (parts.size() != 4) throw std::runtime_error("record fixture: element needs 4 coords");
        return std::array<Int, 4>{Int(trim(parts[0])), Int(trim(parts[1])), Int(trim(parts[2])),
                                  Int(trim(parts[3]))};
    };
    fix.generator = parse_elem(need("generator"));
    fix.target = parse_elem(need("target"));
    fix.vlog_g = Int(need("vlog_g"));
    fix.vlog_t = Int(need("vlog_t"));
    for (auto& tok : split(need("split_factors"), ',')) {
        std::string t2 = trim(tok);
        int exp = 1;
        auto caret = t2.find('^');
        if (caret != std::string::npos) {
            exp = std::stoi(t2.substr(caret + 1));
            t2 = t2.substr(0, caret);
        }
        fix.split_factors.emplace_back(Int(t2), exp);
    }
    fix.split_largest_bits = std::stoi(need("split_largest_bits"));
    return fix;
}

const RecordFixture& record_fixture() {
    static const RecordFixture fix =
        load_record_fixture(std::string(EXTNFS_DATA_DIR) + "/record_fp4_512.txt");
    return fix;
}

SetupReport verify_paper_record(const RecordFixture& fix) {
    SetupReport rep = verify_setup(fix.setup);
    auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
        rep.checks.push_back({name, ok, detail});
    };

    // every initial-split factor prime, largest below 2^68
    bool all_prime = true;
    Int largest(1);
    for (const auto& [p, e] : fix.split_factors) {
        if (!is_prime(p)) all_prime = false;
        if (p > largest) largest = p;
    }
    add("split_factors_prime", all_prime);
    add("split_largest_below_2e68", largest < (Int(1) << 68),
        std::to_string(mpz_sizeinbase(largest.get_mpz_t(), 2)) + " bits");

    // verification identity in F_{p^4}
    bool identity = false;
    std::string detail;
    try {
        TowerField F = fix.setup.field();
        TowerElement g = F.make(fix.generator[0], fix.generator[1], fix.generator[2], fix.generator[3]);
        TowerElement t = F.make(fix.target[0], fix.target[1], fix.target[2], fix.target[3]);
        const Int& p = fix.setup.params.p;
        Int order = p * p * p * p - 1;
        if (order % fix.setup.params.ell != 0) {
            detail = "ell does not divide p^4 - 1";
        } else {
            Int C = order / fix.setup.params.ell;
            TowerElement lhs = F.pow(g, C * fix.vlog_t);
            TowerElement rhs = F.pow(t, C * fix.vlog_g);
            identity = (lhs == rhs) && !lhs.is_zero();
            detail = "g^(C vlog_t) == t^(C vlog_g)";
        }
    } catch (const std::exception& ex) {
        detail = ex.what();
    }
    add("verification_identity", identity, detail);
    return rep;
}

}  // namespace extnfs
