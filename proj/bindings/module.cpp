#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cusped/bounds.hpp"
#include "cusped/canon.hpp"
#include "cusped/hypgeom.hpp"
#include "cusped/search.hpp"

namespace py = pybind11;
using namespace cusped;

namespace {

Triangulation parse_tri(const std::string& text) { return parse_tri_file(text).tri; }

std::optional<std::vector<Complex>> parse_shapes(const std::string& text) {
    return parse_tri_file(text).shapes;
}

}  // namespace

PYBIND11_MODULE(_cusped, m) {
    m.doc() = "Pachner moves, canonical signatures and explicit bounds for "
              "triangulated cusped 3-manifolds";

    py::register_exception<Error>(m, "CuspedError");

    py::class_<Triangulation>(m, "Triangulation")
        .def_property_readonly("size", &Triangulation::size)
        .def_property_readonly("closed", &Triangulation::closed)
        .def_property_readonly("connected", &Triangulation::connected)
        .def_property_readonly("orientable", &Triangulation::orientable)
        .def_property_readonly("edge_class_count", &Triangulation::edge_class_count)
        .def_property_readonly("vertex_class_count", &Triangulation::vertex_class_count)
        .def_property_readonly("cusp_count", &Triangulation::cusp_count)
        .def("edge_degree", &Triangulation::edge_degree)
        .def("link_euler", &Triangulation::link_euler);

    py::class_<Move>(m, "Move")
        .def_static("two_three", &Move::two_three)
        .def_static("three_two", &Move::three_two)
        .def_static("one_four", &Move::one_four)
        .def_static("four_one", &Move::four_one)
        .def("__repr__", [](const Move& mv) {
            return std::string("<Move ") + move_kind_name(mv.kind) + ">";
        });

    py::class_<MoveResult>(m, "MoveResult")
        .def_readonly("tri", &MoveResult::tri)
        .def_readonly("inverse", &MoveResult::inverse)
        .def_readonly("new_tets", &MoveResult::new_tets);

    py::class_<MoveSequence>(m, "MoveSequence")
        .def_readonly("moves", &MoveSequence::moves)
        .def_readonly("start_signature", &MoveSequence::start_signature)
        .def_readonly("end_signature", &MoveSequence::end_signature)
        .def("to_json", [](const MoveSequence& s) { return move_sequence_to_json(s); });

    py::class_<CuspCrossSection>(m, "CuspCrossSection")
        .def_readonly("cusp", &CuspCrossSection::cusp)
        .def_readonly("u", &CuspCrossSection::u)
        .def_readonly("v", &CuspCrossSection::v)
        .def_readonly("area", &CuspCrossSection::area)
        .def_readonly("shortest", &CuspCrossSection::shortest)
        .def_readonly("edge_lengths", &CuspCrossSection::edge_lengths)
        .def_property_readonly("triangle_count",
                               [](const CuspCrossSection& c) { return c.triangles.size(); });

    m.def("parse_tri", &parse_tri, "Parse a triangulation file's text");
    m.def("parse_shapes", &parse_shapes, "Shapes from a triangulation file's text, if any");
    m.def("canonical_signature", &canonical_signature);
    m.def("is_isomorphic", [](const Triangulation& a, const Triangulation& b) {
        return bool(is_isomorphic(a, b));
    });
    m.def("applicable_moves", &applicable_moves);
    m.def("apply_move", &apply_move);
    m.def("replay", &replay);
    m.def("tet_volume", &tet_volume);
    m.def("regular_ideal_volume", &regular_ideal_volume);
    m.def("lobachevsky", &lobachevsky);
    m.def("ball_volume", &ball_volume);
    m.def("gluing_residual", &gluing_residual);
    m.def("develop_cusp", &develop_cusp, py::arg("tri"), py::arg("shapes"), py::arg("cusp_class"),
          py::arg("residual_tol") = 1e-9);
    m.def("min_dihedral_angle", [](const std::vector<Complex>& shapes) {
        return check_thickness(shapes, std::numbers::pi / 3).min_angle;
    });
    m.def(
        "connect",
        [](const Triangulation& a, const Triangulation& b, int max_moves, int max_tetrahedra,
           int max_states) {
            ConnectResult r = connect(a, b, {max_moves, max_tetrahedra, max_states});
            return py::make_tuple(search_status_name(r.status),
                                  r.status == SearchStatus::Found
                                      ? py::cast(r.sequence)
                                      : py::object(py::none()));
        },
        py::arg("a"), py::arg("b"), py::arg("max_moves") = 8, py::arg("max_tetrahedra") = 0,
        py::arg("max_states") = 100000);
    m.def("bounds_report_json", [](int m1, int m2, double theta0, double epsilon) {
        return bounds_report_json(bounds_report(m1, m2, theta0, epsilon));
    }, py::arg("m1"), py::arg("m2"), py::arg("theta0"), py::arg("epsilon") = 0.29);
    m.def("systole_bound_simplified",
          [](int mm, double theta0) { return systole_bound_simplified(mm, theta0).value(); });
}
