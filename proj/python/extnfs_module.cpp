#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "extnfs/descent.hpp"
#include "extnfs/io.hpp"
#include "extnfs/lattice.hpp"
#include "extnfs/linalg.hpp"
#include "extnfs/modpoly.hpp"
#include "extnfs/norms.hpp"
#include "extnfs/record.hpp"
#include "extnfs/relproc.hpp"
#include "extnfs/sieve4d.hpp"
#include "extnfs/smooth.hpp"

namespace py = pybind11;
using namespace extnfs;

namespace {

Int to_int(py::handle h) { return Int(py::str(h).cast<std::string>()); }

py::int_ to_pyint(const Int& z) {
    PyObject* obj = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

IntPoly to_poly(const std::vector<py::object>& coeffs) {
    std::vector<Int> c;
    for (const auto& x : coeffs) c.push_back(to_int(x));
    return IntPoly(std::move(c));
}

Basis4 to_basis(const std::vector<std::vector<py::object>>& cols) {
    if (cols.size() != 4) throw std::invalid_argument("basis needs 4 columns");
    Basis4 b;
    for (int c = 0; c < 4; c++) {
        if (cols[(size_t)c].size() != 4) throw std::invalid_argument("basis needs 4 rows");
        for (int r = 0; r < 4; r++) b.at(r, c) = to_int(cols[(size_t)c][(size_t)r]);
    }
    return b;
}

std::vector<std::vector<py::int_>> from_basis(const Basis4& b) {
    std::vector<std::vector<py::int_>> out(4);
    for (int c = 0; c < 4; c++)
        for (int r = 0; r < 4; r++) out[(size_t)c].push_back(to_pyint(b.at(r, c)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_extnfs, m) {
    m.doc() = "4d lattice siever and F_p^4 discrete-log pipeline (native core)";

    m.def("roots_mod", [](const std::vector<py::object>& coeffs, uint64_t q) {
        return roots_mod(to_poly(coeffs), q);
    });
    m.def("is_irreducible_mod", [](const std::vector<py::object>& coeffs, uint64_t q) {
        return is_irreducible_mod(to_poly(coeffs), q);
    });
    m.def("resultant", [](const std::vector<py::object>& f, const std::vector<py::object>& g) {
        return to_pyint(resultant(to_poly(f), to_poly(g)));
    });
    m.def("irreducible_over_q",
          [](const std::vector<py::object>& f) { return irreducible_over_q(to_poly(f)); });
    m.def("unit_rank", [](const std::vector<py::object>& f) { return unit_rank(to_poly(f)); });
    m.def("count_real_roots",
          [](const std::vector<py::object>& f) { return count_real_roots(to_poly(f)); });

    m.def("lll_reduce", [](const std::vector<std::vector<py::object>>& cols) {
        return from_basis(lll_reduce(to_basis(cols)));
    });
    m.def("cross4", [](const std::vector<py::object>& u, const std::vector<py::object>& v,
                       const std::vector<py::object>& w) {
        std::array<Int, 4> U, V, W;
        for (int i = 0; i < 4; i++) {
            U[(size_t)i] = to_int(u.at((size_t)i));
            V[(size_t)i] = to_int(v.at((size_t)i));
            W[(size_t)i] = to_int(w.at((size_t)i));
        }
        auto n = cross4(U, V, W);
        std::vector<py::int_> out;
        for (const auto& x : n) out.push_back(to_pyint(x));
        return out;
    });

    m.def(
        "smooth_factor",
        [](py::object n, py::object bound, uint64_t budget) -> py::object {
            auto res = smooth_factor(to_int(n), to_int(bound), budget);
            if (!res.accepted()) {
                return py::str(res.reject == SmoothReject::exceeds_bound ? "exceeds-bound"
                                                                         : "budget-exhausted");
            }
            py::list out;
            for (const auto& [p, e] : res.factored->factors)
                out.append(py::make_tuple(to_pyint(p), e));
            return out;
        },
        py::arg("n"), py::arg("bound"), py::arg("budget") = (uint64_t)1 << 22);
    m.def("is_prime", [](py::object n) { return is_prime(to_int(n)); });

    m.def("load_setup", [](const std::string& path) { return serialize_setup(parse_setup(read_file(path))); });
    m.def("norm_side", [](const std::string& setup_text, int side, long long a, long long b,
                          long long c, long long d) {
        PolySetup setup = parse_setup(setup_text);
        return to_pyint(norm_side(setup, side, {a, b, c, d}));
    });
    m.def("canonical_key", [](const std::string& setup_text, long long a, long long b, long long c,
                              long long d) {
        PolySetup setup = parse_setup(setup_text);
        DupKey k = canonical_key({a, b, c, d}, setup.params.p, setup.h);
        return py::make_tuple(k.infinity, to_pyint(k.k0), to_pyint(k.k1));
    });

    m.def("subspace_intersects_box",
          [](const std::vector<long long>& N, const std::vector<long long>& V, long long B) {
              Orthotope box{{B, B, B, B}};
              std::array<long long, 4> n{N.at(0), N.at(1), N.at(2), N.at(3)};
              std::array<long long, 4> v{V.at(0), V.at(1), V.at(2), V.at(3)};
              return subspace_intersects_box(n, v, box);
          });
    m.def("enumerate_box", [](const std::vector<std::vector<py::object>>& cols, long long B) {
        Orthotope box{{B, B, B, B}};
        auto pts = enumerate_box_points(to_basis(cols), box);
        py::list out;
        for (const auto& x : pts) out.append(py::make_tuple(x[0], x[1], x[2], x[3]));
        return out;
    });

    m.def("verify_paper_record", [](const std::string& fixture_path) {
        RecordFixture fix = load_record_fixture(fixture_path);
        SetupReport rep = verify_paper_record(fix);
        py::dict out;
        for (const auto& c : rep.checks) out[py::str(c.name)] = c.pass;
        out["all_pass"] = rep.all_pass();
        return out;
    });
}
