#include "hirz/bundles.hpp"
#include "hirz/cech.hpp"
#include "hirz/criterion.hpp"
#include "hirz/errors.hpp"
#include "hirz/job.hpp"
#include "hirz/line_cohomology.hpp"
#include "hirz/picard.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hirz;

namespace {

Integer to_integer(const py::int_& v) { return Integer(py::str(v).cast<std::string>()); }

py::int_ to_py(const Integer& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

DivisorClass to_divisor(const Surface& s, const py::object& d) {
    std::vector<Integer> coords;
    if (py::isinstance<py::int_>(d)) {
        coords.push_back(to_integer(d.cast<py::int_>()));
    } else {
        for (const auto& c : d) coords.push_back(to_integer(c.cast<py::int_>()));
    }
    DivisorClass out(std::move(coords));
    out.check_on(s);
    return out;
}

py::tuple to_py(const DivisorClass& d) {
    py::tuple out(d.rank());
    for (std::size_t i = 0; i < d.rank(); ++i) out[i] = to_py(d[i]);
    return out;
}

py::tuple to_py(const CohomologyTriple& h) { return py::make_tuple(to_py(h.h0), to_py(h.h1), to_py(h.h2)); }

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Bundle2 bundle(const Surface& s, const std::string& text) { return BundleSpec::parse(text).build(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact sheaf cohomology and splitting decisions on Hirzebruch surfaces and P2";

    auto base = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SurfaceMismatch>(m, "SurfaceMismatch", PyExc_ValueError);
    py::register_exception<InvalidCocycle>(m, "InvalidCocycle", PyExc_ValueError);
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", PyExc_ValueError);
    py::register_exception<InconsistentOracle>(m, "InconsistentOracle", PyExc_RuntimeError);
    py::register_exception<TruncationUnstable>(m, "TruncationUnstable", PyExc_RuntimeError);
    py::register_exception<NotNormalizable>(m, "NotNormalizable", PyExc_ValueError);
    (void)base;

    py::class_<Surface>(m, "Surface")
        .def(py::init([](const std::string& name) { return Surface::parse(name); }), py::arg("name"))
        .def_static("hirzebruch", &Surface::hirzebruch, py::arg("n"))
        .def_static("projective_plane", &Surface::projective_plane)
        .def_property_readonly("name", &Surface::name)
        .def_property_readonly("n", &Surface::n)
        .def_property_readonly("picard_rank", &Surface::picard_rank)
        .def_property_readonly("is_plane", &Surface::is_plane)
        .def("__eq__", [](const Surface& a, const Surface& b) { return a == b; })
        .def("__hash__", [](const Surface& s) { return py::hash(py::str(s.name())); })
        .def("__repr__", [](const Surface& s) { return "Surface('" + s.name() + "')"; });

    m.def("intersect", [](const Surface& s, const py::object& a, const py::object& b) {
        return to_py(intersect(s, to_divisor(s, a), to_divisor(s, b)));
    }, py::arg("surface"), py::arg("d1"), py::arg("d2"));
    m.def("canonical_class", [](const Surface& s) { return to_py(canonical_class(s)); }, py::arg("surface"));
    m.def("chi_line", [](const Surface& s, const py::object& d) { return to_py(chi_line(s, to_divisor(s, d))); },
          py::arg("surface"), py::arg("divisor"));
    m.def("chi_rank2", [](const Surface& s, const py::object& c1, const py::int_& c2) {
        return to_py(chi_rank2(s, {to_divisor(s, c1), to_integer(c2)}));
    }, py::arg("surface"), py::arg("c1"), py::arg("c2"));

    m.def("line_h", [](const Surface& s, const py::object& d, const std::string& oracle) {
        const auto div = to_divisor(s, d);
        const auto kind = parse_oracle_kind(oracle);
        CohomologyTriple h;
        {
            py::gil_scoped_release release;
            h = kind == OracleKind::Closed ? line_h(s, div) : cech::cech_line_h(s, div);
            if (kind == OracleKind::Both && !(h == line_h(s, div))) throw std::logic_error("oracles disagree");
        }
        return to_py(h);
    }, py::arg("surface"), py::arg("divisor"), py::arg("oracle") = "closed",
       "(h0, h1, h2) of O(divisor); oracle is 'closed', 'cech' or 'both'.");
    m.def("ext_dim", [](const Surface& s, const py::object& quot, const py::object& sub) {
        return to_py(cech::ext_dim(s, to_divisor(s, quot), to_divisor(s, sub)));
    }, py::arg("surface"), py::arg("quot"), py::arg("sub"));
    m.def("cocycle_is_coboundary", [](const Surface& s, const std::string& spec) {
        const auto e = bundle(s, spec);
        if (e.is_sum()) throw ParseError("cocycle_is_coboundary needs an ext: bundle");
        return cech::cocycle_is_coboundary(s, e.extension_class());
    }, py::arg("surface"), py::arg("bundle"));

    m.def("bundle_h", [](const Surface& s, const std::string& spec, const py::object& twist, const std::string& oracle) {
        return to_py(bundle_h(bundle(s, spec), to_divisor(s, twist), parse_oracle_kind(oracle)));
    }, py::arg("surface"), py::arg("bundle"), py::arg("twist"), py::arg("oracle") = "closed");
    m.def("chern", [](const Surface& s, const std::string& spec) {
        const auto ch = chern(bundle(s, spec));
        return py::make_tuple(to_py(ch.c1), to_py(ch.c2));
    }, py::arg("surface"), py::arg("bundle"));
    m.def("table", [](const Surface& s, const std::string& spec, const std::optional<std::string>& window,
                      const std::string& oracle) {
        const auto w = window ? Window::parse(*window) : Window::centered(s, 3);
        return to_py(table_json(h_table(bundle(s, spec), w, parse_oracle_kind(oracle))));
    }, py::arg("surface"), py::arg("bundle"), py::arg("window") = py::none(), py::arg("oracle") = "closed",
       "Cohomology table as a dict shaped like the CLI's JSON output.");

    m.def("recover_chern", [](const Surface& s, const std::string& spec, const std::string& oracle) {
        const auto ch = recover_chern(s, bundle_oracle(bundle(s, spec), parse_oracle_kind(oracle)));
        return py::make_tuple(to_py(ch.c1), to_py(ch.c2));
    }, py::arg("surface"), py::arg("bundle"), py::arg("oracle") = "closed");
    m.def("normalize", [](const Surface& s, const py::object& c1, const py::int_& c2) {
        const auto n = normalize(s, {to_divisor(s, c1), to_integer(c2)});
        return py::make_tuple(to_py(n.twist), to_py(n.normal.c1), to_py(n.normal.c2));
    }, py::arg("surface"), py::arg("c1"), py::arg("c2"),
       "(M, c1', c2') with c2' = 0; raises NotNormalizable.");
    m.def("decide", [](const Surface& s, const std::string& spec, const std::optional<std::string>& compare,
                       const std::string& oracle) {
        const auto q = bundle_oracle(bundle(s, spec), parse_oracle_kind(oracle));
        SplitVerdict v;
        if (compare) {
            const auto f = bundle(s, *compare);
            v = s.is_plane() ? theorem5_decide(q, f) : theorem1_decide(s, q, f);
        } else {
            v = decide(s, q);
        }
        return to_py(verdict_json(v));
    }, py::arg("surface"), py::arg("bundle"), py::arg("compare") = py::none(), py::arg("oracle") = "closed",
       "Verdict dict: verdict, and summands, certificate, normalization_twist, reason when present.");

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = ExitUsage;
        try {
            code = run_job(JobSpec::parse(args), out, err);
        } catch (const ParseError& e) {
            err << "error: " << e.what() << '\n';
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Run a CLI job in-process; returns (exit_code, stdout, stderr).");
}
