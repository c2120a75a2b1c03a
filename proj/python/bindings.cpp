#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coxpoly/catalog.hpp"
#include "coxpoly/catalog_file.hpp"
#include "coxpoly/expr.hpp"
#include "coxpoly/search.hpp"

namespace py = pybind11;
using namespace coxpoly;

namespace {

py::tuple signature_tuple(const Signature& s) { return py::make_tuple(s.n_plus, s.n_minus, s.n_zero); }

EdgeLabel dotted_from(const py::object& w) {
    if (w.is_none()) return EdgeLabel::dotted();
    if (py::isinstance<py::str>(w)) return EdgeLabel::dotted(parse_expr(w.cast<std::string>()));
    return EdgeLabel::dotted(w.cast<AlgebraicReal>());
}

}  // namespace

PYBIND11_MODULE(_coxpoly, m) {
    m.doc() = "Compact hyperbolic Coxeter n-polytopes with n+3 facets";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SymbolicDiagramError>(m, "SymbolicDiagramError", PyExc_ValueError);
    py::register_exception<SearchError>(m, "SearchError", PyExc_RuntimeError);

    py::class_<AlgebraicReal>(m, "Algebraic")
        .def(py::init<long>())
        .def("__str__", [](const AlgebraicReal& x) { return format_expr(x); })
        .def("__repr__", [](const AlgebraicReal& x) { return "Algebraic(" + format_expr(x) + ")"; })
        .def("__float__", &AlgebraicReal::to_double)
        .def("sign", &AlgebraicReal::sign)
        .def("minpoly", [](const AlgebraicReal& x) {
            std::vector<std::string> out;
            for (const auto& c : x.minpoly()) out.push_back(c.get_str());
            return out;
        })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self > py::self);
    m.def("parse_expr", [](const std::string& s) { return parse_expr(s); }, py::arg("text"));
    m.def("cos_pi_over", &AlgebraicReal::cos_pi_over, py::arg("m"));

    py::class_<CoxeterDiagram>(m, "Diagram")
        .def(py::init<int, std::string>(), py::arg("order") = 0, py::arg("name") = "")
        .def_static("parse", &parse_diagram, py::arg("text"))
        .def_property_readonly("order", &CoxeterDiagram::order)
        .def_property("name", &CoxeterDiagram::name, &CoxeterDiagram::set_name)
        .def("code", &CoxeterDiagram::code, "2 orthogonal, m for angles, -1 bold, -2 dotted", py::arg("i"), py::arg("j"))
        .def("weight", [](const CoxeterDiagram& s, int i, int j) { return s.edge(i, j).weight; }, py::arg("i"), py::arg("j"))
        .def("set_angle", [](CoxeterDiagram& s, int i, int j, int k) { s.set_edge(i, j, EdgeLabel::angle(k)); },
             py::arg("i"), py::arg("j"), py::arg("m"))
        .def("set_bold", [](CoxeterDiagram& s, int i, int j) { s.set_edge(i, j, EdgeLabel::bold()); }, py::arg("i"), py::arg("j"))
        .def("set_dotted", [](CoxeterDiagram& s, int i, int j, const py::object& w) { s.set_edge(i, j, dotted_from(w)); },
             py::arg("i"), py::arg("j"), py::arg("weight") = py::none())
        .def("add_node", &CoxeterDiagram::add_node, py::arg("name") = "")
        .def("subdiagram", &CoxeterDiagram::subdiagram, py::arg("nodes"))
        .def("is_connected", &CoxeterDiagram::is_connected)
        .def("is_concrete", &CoxeterDiagram::is_concrete)
        .def("determinant", [](const CoxeterDiagram& s) { return determinant(s); })
        .def("signature", [](const CoxeterDiagram& s) { return signature_tuple(signature(s)); })
        .def("classify", [](const CoxeterDiagram& s) { return std::string(to_string(classify(s))); })
        .def("lanner_subdiagrams", &lanner_subdiagrams)
        .def("canonical_string", &canonical_string)
        .def("isomorphic", [](const CoxeterDiagram& a, const CoxeterDiagram& b, bool w) { return is_isomorphic(a, b, w).has_value(); },
             py::arg("other"), py::arg("compare_weights") = false)
        .def("text", &write_diagram)
        .def("dot", &to_dot)
        .def("__eq__", [](const CoxeterDiagram& a, const CoxeterDiagram& b) { return a == b; })
        .def("__repr__", [](const CoxeterDiagram& s) { return "<Diagram " + s.name() + " order " + std::to_string(s.order()) + ">"; });
    m.def("read_diagrams", [](const std::string& text) {
        std::istringstream in(text);
        return read_diagrams(in);
    }, py::arg("text"));
    m.def("lanner_triangle", &lanner_triangle, py::arg("p"), py::arg("q"), py::arg("r"));
    m.def("local_det", &local_det, py::arg("diagram"), py::arg("nodes"));
    m.def("lanner_catalog", &lanner_catalog, py::arg("order"));

    py::class_<GaleDiagram>(m, "Gale")
        .def(py::init([](std::string name, std::vector<int> labels) { return GaleDiagram{std::move(name), std::move(labels)}; }),
             py::arg("name"), py::arg("labels"))
        .def_readonly("name", &GaleDiagram::name)
        .def_readonly("labels", &GaleDiagram::labels)
        .def_property_readonly("k", &GaleDiagram::k)
        .def_property_readonly("dim", &GaleDiagram::dim)
        .def_property_readonly("facets", &GaleDiagram::facets)
        .def("__repr__", &write_gale);
    m.def("enumerate_admissible", &enumerate_admissible, py::arg("n"));
    m.def("gale_by_name", &gale_by_name, py::arg("name"));
    m.def("missing_faces", [](const GaleDiagram& g) {
        std::vector<std::vector<int>> out;
        for (const auto& f : missing_faces(g)) out.push_back(f.facets);
        return out;
    }, py::arg("gale"));
    m.def("face_test", &face_test, py::arg("gale"), py::arg("facets"));
    m.def("congruent", &congruent, py::arg("a"), py::arg("b"));
    m.def("validate", [](const GaleDiagram& g, int n) { return validate(g, n).violations; }, py::arg("gale"), py::arg("n"),
          "List of violations; empty when valid");

    m.def("search_arc", [](const std::string& spec) { return search_arc(ArcSpec::parse(spec)); }, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("weight_polynomial", &weight_polynomial, py::arg("diagram"), py::arg("i"), py::arg("j"),
          "Coefficients [c, b, a] of det = a w^2 + b w + c");
    m.def("solve_unknown_weight", &solve_unknown_weight, py::arg("diagram"), py::arg("i"), py::arg("j"));

    py::class_<CatalogEntry>(m, "Entry")
        .def_readonly("dim", &CatalogEntry::dim)
        .def_readonly("gale", &CatalogEntry::gale)
        .def_readonly("diagram", &CatalogEntry::diagram)
        .def_property_readonly("signature", [](const CatalogEntry& e) { return signature_tuple(e.signature); })
        .def_property_readonly("node_to_facet", [](const CatalogEntry& e) { return e.assignment.node_to_facet; })
        .def_property_readonly("lanner", [](const CatalogEntry& e) { return e.assignment.lanner; })
        .def_property_readonly("lanner_to_face", [](const CatalogEntry& e) { return e.assignment.lanner_to_face; })
        .def("__repr__", [](const CatalogEntry& e) { return "<Entry " + e.diagram.name() + ">"; });
    m.def("verify_polytope", [](const CoxeterDiagram& s, const GaleDiagram& g) -> py::object {
        auto a = verify_polytope(s, g);
        if (!a) return py::none();
        return py::dict(py::arg("node_to_facet") = a->node_to_facet, py::arg("lanner") = a->lanner,
                        py::arg("lanner_to_face") = a->lanner_to_face);
    }, py::arg("diagram"), py::arg("gale"));

    m.def("enumerate_polytopes", [](const GaleDiagram& g, int jobs, int max_mult) {
        SearchOptions opt;
        opt.jobs = jobs;
        opt.max_mult = max_mult;
        return enumerate_polytopes(g, opt);
    }, py::arg("gale"), py::arg("jobs") = 1, py::arg("max_mult") = kDefaultMaxMult, py::call_guard<py::gil_scoped_release>());
    m.def("run_classification", [](int lo, int hi, int jobs, int max_mult) {
        SearchOptions opt;
        opt.jobs = jobs;
        opt.max_mult = max_mult;
        return run_classification(lo, hi, opt);
    }, py::arg("n_min"), py::arg("n_max"), py::arg("jobs") = 1, py::arg("max_mult") = kDefaultMaxMult,
          py::call_guard<py::gil_scoped_release>());

    m.def("write_catalog", py::overload_cast<const std::vector<CatalogEntry>&>(&write_catalog), py::arg("entries"));
    m.def("read_catalog", [](const std::string& text) {
        std::istringstream in(text);
        return read_catalog(in);
    }, py::arg("text"));
    m.def("diff_catalogs", [](const std::vector<CatalogEntry>& a, const std::vector<CatalogEntry>& b) {
        auto d = diff_catalogs(a, b);
        return py::make_tuple(d.only_a, d.only_b);
    }, py::arg("a"), py::arg("b"), "Entries only in a and only in b");
    m.def("expected_counts", &expected_counts);
}
