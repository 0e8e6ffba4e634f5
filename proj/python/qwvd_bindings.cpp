#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qwvd/convcorr.hpp"
#include "qwvd/error.hpp"
#include "qwvd/verify.hpp"

namespace py = pybind11;
using namespace qwvd;

namespace {

py::array_t<double> to_array(const SignalGrid& g) {
    const auto n = static_cast<py::ssize_t>(g.spec.n());
    py::array_t<double> out({n, n, py::ssize_t{4}});
    auto a = out.mutable_unchecked<3>();
    for (py::ssize_t i = 0; i < n; ++i) {
        for (py::ssize_t j = 0; j < n; ++j) {
            const auto& q = g.at(static_cast<int>(i), static_cast<int>(j));
            a(i, j, 0) = q.w;
            a(i, j, 1) = q.x;
            a(i, j, 2) = q.y;
            a(i, j, 3) = q.z;
        }
    }
    return out;
}

py::array_t<double> to_array(const WVDGrid& w) {
    const auto nt = static_cast<py::ssize_t>(w.t_spec.n());
    const auto nu = static_cast<py::ssize_t>(w.u_spec.n());
    py::array_t<double> out({nt, nt, nu, nu, py::ssize_t{4}});
    double* p = out.mutable_data();
    for (const auto& q : w.values) {
        *p++ = q.w;
        *p++ = q.x;
        *p++ = q.y;
        *p++ = q.z;
    }
    return out;
}

py::object report_dict(const VerificationReport& r) {
    return py::module_::import("json").attr("loads")(to_json(r).dump());
}

Operation parse_operation(const std::string& name) {
    if (name == "convolution") return Operation::Convolution;
    if (name == "correlation") return Operation::Correlation;
    throw std::invalid_argument("operation must be 'convolution' or 'correlation'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quaternion offset linear canonical Wigner-Ville distribution";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DeterminantError>(m, "DeterminantError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<double, double, double, double>(), py::arg("w") = 0.0, py::arg("x") = 0.0,
             py::arg("y") = 0.0, py::arg("z") = 0.0)
        .def_readwrite("w", &Quaternion::w)
        .def_readwrite("x", &Quaternion::x)
        .def_readwrite("y", &Quaternion::y)
        .def_readwrite("z", &Quaternion::z)
        .def("__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; })
        .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; })
        .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; })
        .def("__mul__", [](const Quaternion& a, double s) { return a * s; })
        .def("__rmul__", [](const Quaternion& a, double s) { return s * a; })
        .def("conj", [](const Quaternion& q) { return conj(q); })
        .def("norm", [](const Quaternion& q) { return norm(q); })
        .def("inverse", [](const Quaternion& q) { return inverse(q); })
        .def("to_tuple", [](const Quaternion& q) { return py::make_tuple(q.w, q.x, q.y, q.z); })
        .def("__repr__", [](const Quaternion& q) {
            std::ostringstream os;
            os << "Quaternion" << q;
            return os.str();
        });

    py::class_<OLCTParams>(m, "OLCTParams")
        .def(py::init(&OLCTParams::make), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
             py::arg("r") = 0.0, py::arg("s") = 0.0)
        .def_readonly("a", &OLCTParams::a)
        .def_readonly("b", &OLCTParams::b)
        .def_readonly("c", &OLCTParams::c)
        .def_readonly("d", &OLCTParams::d)
        .def_readonly("r", &OLCTParams::r)
        .def_readonly("s", &OLCTParams::s)
        .def("determinant", &OLCTParams::determinant);
    m.def("qft_params", &qft_params);
    m.def("qlct_params", &qlct_params);

    py::class_<ParamPair>(m, "ParamPair")
        .def(py::init([](const OLCTParams& a1, const OLCTParams& a2) { return ParamPair{a1, a2}; }),
             py::arg("A1") = qft_params(), py::arg("A2") = qft_params())
        .def_readwrite("A1", &ParamPair::A1)
        .def_readwrite("A2", &ParamPair::A2);

    py::class_<GridSpec2D>(m, "GridSpec2D")
        .def(py::init<int, double>(), py::arg("n"), py::arg("half_width"))
        .def_property_readonly("n", &GridSpec2D::n)
        .def_property_readonly("half_width", &GridSpec2D::half_width)
        .def_property_readonly("spacing", &GridSpec2D::spacing)
        .def("points", &GridSpec2D::points);

    py::class_<AnalyticSignal>(m, "AnalyticSignal")
        .def_static("gaussian", &AnalyticSignal::gaussian, py::arg("coeff") = Quaternion{1.0},
                    py::arg("alpha") = std::numbers::pi, py::arg("shift") = Vec2{0.0, 0.0})
        .def_static("parse", &parse_signal)
        .def("__call__", [](const AnalyticSignal& f, double a, double b) { return f(a, b); })
        .def("__add__", [](const AnalyticSignal& f, const AnalyticSignal& g) { return f + g; })
        .def("describe", &AnalyticSignal::describe);

    m.def("sample", [](const AnalyticSignal& f, const GridSpec2D& spec) { return to_array(sample(f, spec)); });
    m.def("l2_norm", [](const AnalyticSignal& f, const GridSpec2D& spec) { return l2_norm(sample(f, spec)); });

    m.def(
        "qolct",
        [](const AnalyticSignal& f, const ParamPair& p, Vec2 u, const GridSpec2D& spec) {
            return qolct_forward(f, p, u, spec);
        },
        py::arg("f"), py::arg("params"), py::arg("u"), py::arg("spec"));
    m.def(
        "qolct_grid",
        [](const AnalyticSignal& f, const ParamPair& p, const GridSpec2D& spec, const GridSpec2D& u_spec) {
            return to_array(qolct_forward_grid(sample(f, spec), p, u_spec));
        },
        py::arg("f"), py::arg("params"), py::arg("spec"), py::arg("u_spec"));
    m.def("wvd_point", py::overload_cast<const AnalyticSignal&, const AnalyticSignal&, const ParamPair&, Vec2,
                                         Vec2, const GridSpec2D&>(&wvd_point),
          py::arg("f"), py::arg("g"), py::arg("params"), py::arg("t"), py::arg("u"), py::arg("n_spec"));
    m.def(
        "wvd_grid",
        [](const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& p, const GridSpec2D& t,
           const GridSpec2D& u, const GridSpec2D& n, bool serial) {
            return to_array(wvd_grid(f, g, p, t, u, n, serial));
        },
        py::arg("f"), py::arg("g"), py::arg("params"), py::arg("t_spec"), py::arg("u_spec"), py::arg("n_spec"),
        py::arg("serial") = false);
    m.def("convolve", &convolve, py::arg("f"), py::arg("g"), py::arg("params"), py::arg("t"), py::arg("z_spec"));
    m.def("correlate", &correlate, py::arg("f"), py::arg("g"), py::arg("params"), py::arg("t"),
          py::arg("z_spec"));

    py::class_<GridSet>(m, "GridSet")
        .def(py::init<>())
        .def_static("from_n", &GridSet::from_n, py::arg("n"), py::arg("L") = 6.0)
        .def_readwrite("n_t", &GridSet::n_t)
        .def_readwrite("n_u", &GridSet::n_u)
        .def_readwrite("n_n", &GridSet::n_n)
        .def_readwrite("n_w", &GridSet::n_w)
        .def_readwrite("n_s", &GridSet::n_s)
        .def_readwrite("L", &GridSet::L);

    m.def(
        "verify",
        [](const std::string& id, const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& p,
           const GridSet& grids, bool serial) {
            py::list out;
            for (const auto& r : verify_by_id(id, f, g, p, grids, {}, {serial, !serial})) out.append(report_dict(r));
            return out;
        },
        py::arg("theorem"), py::arg("f"), py::arg("g"), py::arg("params") = ParamPair{},
        py::arg("grids") = GridSet{}, py::arg("serial") = false);
    m.def(
        "verify_variants",
        [](const std::string& op, const AnalyticSignal& f, const AnalyticSignal& g, const ParamPair& p,
           const GridSet& grids) {
            const auto all = TheoremVariant::all();
            py::list out;
            for (const auto& r : verify_operation_theorem(parse_operation(op), f, g, p, grids, all)) {
                out.append(report_dict(r));
            }
            return out;
        },
        py::arg("operation"), py::arg("f"), py::arg("g"), py::arg("params") = ParamPair{},
        py::arg("grids") = GridSet{});
    m.def("theorem_ids", &theorem_ids);
}
