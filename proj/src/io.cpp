#include "extnfs/io.hpp"

#include <cstdio>
#include <map>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace extnfs {

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing artifact: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

uint64_t hash_file(const std::string& path) {
    std::string data = read_file(path);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r')
            cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
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

std::string int_list(const std::vector<Int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); i++) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out;
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    for (auto& tok : split_on(s, ',')) out.emplace_back(tok);
    return out;
}

}  // namespace

std::string serialize_setup(const PolySetup& s) {
    std::ostringstream os;
    os << "p = " << s.params.p.get_str() << "\n";
    os << "ell = " << s.params.ell.get_str() << "\n";
    os << "cofactor = " << s.params.cofactor.get_str() << "\n";
    os << "h = " << int_list(s.h.coeffs()) << "\n";
    os << "s = " << s.s.get_str() << "\n";
    os << "t = " << s.t[0].get_str() << "," << s.t[1].get_str() << "\n";
    os << "u = " << s.u.get_str() << "\n";
    os << "v = " << s.v.get_str() << "\n";
    return os.str();
}

PolySetup parse_setup(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (auto& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = line.substr(0, eq);
        std::string v = line.substr(eq + 1);
        auto trim = [](std::string& x) {
            while (!x.empty() && (x.front() == ' ' || x.front() == '\t')) x.erase(x.begin());
            while (!x.empty() && (x.back() == ' ' || x.back() == '\t')) x.pop_back();
        };
        trim(k);
        trim(v);
        kv[k] = v;
    }
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::runtime_error("setup file missing key " + k);
        return it->second;
    };
    PolySetup s;
    s.params.p = Int(need("p"));
    s.params.ell = Int(need("ell"));
    s.params.cofactor = Int(need("cofactor"));
    s.h = IntPoly(parse_int_list(need("h")));
    s.s = Int(need("s"));
    auto t = parse_int_list(need("t"));
    s.t = {t.at(0), t.at(1)};
    s.u = Int(need("u"));
    s.v = Int(need("v"));
    s.f0 = conjugation_f0(s.t, s.u, s.v);
    s.g0 = conjugation_g0(s.t, s.s, s.h);
    s.f = absolute_poly(s.f0, s.h);
    s.g = absolute_poly(s.g0, s.h);
    return s;
}

std::string serialize_factor_base(const FactorBase& fb) {
    std::ostringstream os;
    os << "# side " << fb.side << " bound " << fb.bound << "\n";
    for (const auto& [q, status] : fb.skipped) {
        os << "#skip:" << std::hex << q << std::dec << ":"
           << (status == QStatus::projective ? "projective"
                                             : status == QStatus::ramified ? "ramified" : "unexpected")
           << "\n";
    }
    for (const auto& id : fb.ideals) os << id.str() << "\n";
    return os.str();
}

FactorBase parse_factor_base(const std::string& text) {
    FactorBase fb;
    for (auto& line : lines_of(text)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#skip:", 0) == 0) {
                auto parts = split_on(line.substr(6), ':');
                QStatus st = parts.at(1) == "projective"
                                 ? QStatus::projective
                                 : parts.at(1) == "ramified" ? QStatus::ramified : QStatus::unexpected;
                fb.skipped.emplace_back(std::stoull(parts.at(0), nullptr, 16), st);
            } else {
                std::istringstream is(line);
                std::string hash, word;
                is >> hash >> word;
                if (word == "side") is >> fb.side >> word >> fb.bound;
            }
            continue;
        }
        auto parts = split_on(line, ':');
        PrimeIdeal id;
        id.side = std::stoi(parts.at(0));
        id.q = std::stoull(parts.at(1), nullptr, 16);
        id.degree = std::stoi(parts.at(2));
        size_t data = parts.size() - 3;
        if (id.degree == 1 && data == 2) {
            id.kind = IdealKind::deg1;
            id.r = std::stoull(parts.at(3), nullptr, 16);
            id.R = std::stoull(parts.at(4), nullptr, 16);
        } else if ((id.degree == 2 || id.degree == 4) && data == 1) {
            id.kind = IdealKind::deg2_t1;
            id.r = std::stoull(parts.at(3), nullptr, 16);
        } else if (id.degree == 2 && data == 2) {
            id.kind = IdealKind::deg2_t2;
            id.a0 = std::stoull(parts.at(3), nullptr, 16);
            id.a1 = std::stoull(parts.at(4), nullptr, 16);
        } else if (id.degree == 4 && data == 0) {
            id.kind = IdealKind::deg4;
        } else {
            throw std::runtime_error("factor base parse: bad line " + line);
        }
        id.index = (uint32_t)fb.ideals.size();
        fb.ideals.push_back(id);
    }
    return fb;
}

std::string serialize_relations(const std::vector<Relation>& rels) {
    std::ostringstream os;
    for (const auto& r : rels) os << r.str() << "\n";
    return os.str();
}

std::vector<Relation> parse_relations(const std::string& text) {
    std::vector<Relation> out;
    for (auto& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(Relation::parse(line));
    }
    return out;
}

std::string serialize_relsets(const std::vector<RelationSet>& sets, size_t cols, int sm0, int sm1) {
    std::ostringstream os;
    os << "#" << sets.size() << " " << cols << " " << sm0 << " " << sm1 << "\n";
    for (const auto& rs : sets) {
        bool first = true;
        for (const auto& [idx, coeff] : rs.members) {
            if (!first) os << ",";
            first = false;
            os << idx << "*" << coeff;
        }
        os << "\n";
    }
    return os.str();
}

std::vector<RelationSet> parse_relsets(const std::string& text) {
    std::vector<RelationSet> out;
    for (auto& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        RelationSet rs;
        for (auto& tok : split_on(line, ',')) {
            if (tok.empty()) continue;
            auto star = tok.find('*');
            rs.members.push_back({(uint32_t)std::stoul(tok.substr(0, star)),
                                  std::stoi(tok.substr(star + 1))});
        }
        out.push_back(std::move(rs));
    }
    return out;
}

std::string serialize_sparse_system(const SparseSystem& sys) {
    std::ostringstream os;
    os << "#" << sys.nrows << " " << sys.ncols << " " << sys.ell << " " << sys.sm_rank[0] << " "
       << sys.sm_rank[1] << "\n";
    for (const auto& row : sys.rows) {
        bool first = true;
        for (const auto& [col, val] : row) {
            if (!first) os << ",";
            first = false;
            os << col << ":" << val;
        }
        os << "\n";
    }
    return os.str();
}

std::string serialize_logdb(const LogDatabase& db) {
    std::ostringstream os;
    os << "# ell " << db.ell << " passes " << db.passes << "\n";
    for (int side = 0; side < 2; side++)
        for (size_t j = 0; j < db.sm_vlogs[(size_t)side].size(); j++)
            os << "sm:" << side << ":" << j << " " << db.sm_vlogs[(size_t)side][j] << "\n";
    for (const auto& [id, vlog] : db.ideal_vlogs) os << id.str() << " " << vlog << "\n";
    return os.str();
}

LogDatabase parse_logdb(const std::string& text, uint64_t ell) {
    LogDatabase db;
    db.ell = ell;
    for (auto& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        auto sp = line.rfind(' ');
        if (sp == std::string::npos) continue;
        uint64_t vlog = std::stoull(line.substr(sp + 1));
        std::string keypart = line.substr(0, sp);
        if (keypart.rfind("sm:", 0) == 0) {
            auto parts = split_on(keypart.substr(3), ':');
            int side = std::stoi(parts.at(0));
            size_t j = std::stoul(parts.at(1));
            auto& v = db.sm_vlogs[(size_t)side];
            if (v.size() <= j) v.resize(j + 1);
            v[j] = vlog;
            continue;
        }
        auto parts = split_on(keypart, ':');
        PrimeIdeal id;
        id.side = std::stoi(parts.at(0));
        id.q = std::stoull(parts.at(1), nullptr, 16);
        id.degree = std::stoi(parts.at(2));
        size_t data = parts.size() - 3;
        if (id.degree == 1 && data == 2) {
            id.kind = IdealKind::deg1;
            id.r = std::stoull(parts.at(3), nullptr, 16);
            id.R = std::stoull(parts.at(4), nullptr, 16);
        } else if ((id.degree == 2 || id.degree == 4) && data == 1) {
            id.kind = IdealKind::deg2_t1;
            id.r = std::stoull(parts.at(3), nullptr, 16);
        } else if (id.degree == 2 && data == 2) {
            id.kind = IdealKind::deg2_t2;
            id.a0 = std::stoull(parts.at(3), nullptr, 16);
            id.a1 = std::stoull(parts.at(4), nullptr, 16);
        } else if (id.degree == 4 && data == 0) {
            id.kind = IdealKind::deg4;
        } else {
            throw std::runtime_error("logdb parse: bad line " + line);
        }
        db.ideal_vlogs[id] = vlog;
    }
    return db;
}

}  // namespace extnfs
