#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subpot/errors.hpp"
#include "subpot/expr.hpp"
#include "subpot/frobenius.hpp"
#include "subpot/geometry.hpp"
#include "subpot/jet.hpp"
#include "subpot/report.hpp"
#include "subpot/version.hpp"

namespace py = pybind11;
using namespace subpot;

namespace {

py::array_t<double> tensor_to_array(const Tensor3& t) {
    const int n = t.dim();
    py::array_t<double> arr({n, n, n});
    auto w = arr.mutable_unchecked<3>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) w(i, j, k) = t(i, j, k);
    return arr;
}

LoadedSpec load_any(const std::string& path) { return load_spec(path); }

ToleranceConfig tol_from_kwargs(double residual_tol, double frame_condition_max, bool fd_check) {
    ToleranceConfig tol;
    tol.residual_tol = residual_tol;
    tol.frame_condition_max = frame_condition_max;
    tol.fd_check = fd_check;
    return tol;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical local theory of submanifolds with potential of normals";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "Error");

    py::class_<Jet3>(m, "Jet3")
        .def_readonly("value", &Jet3::value)
        .def_readonly("grad", &Jet3::grad)
        .def_readonly("hess", &Jet3::hess)
        .def_property_readonly("third", [](const Jet3& j) { return tensor_to_array(j.third); })
        .def_property_readonly("dim", &Jet3::dim);

    m.def(
        "eval_jet",
        [](const std::string& expr, int dim, const Eigen::VectorXd& u) {
            return eval_jet(*parse(expr, dim), u);
        },
        py::arg("expr"), py::arg("dim"), py::arg("u"),
        "degree-3 jet of an expression in u1..uN at a point");

    m.def(
        "eval_expr",
        [](const std::string& expr, int dim, const Eigen::VectorXd& u) {
            return eval(*parse(expr, dim), u);
        },
        py::arg("expr"), py::arg("dim"), py::arg("u"));

    m.def(
        "fd_partial",
        [](const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& u,
           const std::vector<int>& indices, double step) {
            return fd_partial(f, u, indices, step);
        },
        py::arg("f"), py::arg("u"), py::arg("indices"), py::arg("step"),
        "central-difference mixed partial, order = len(indices)");

    py::class_<ToleranceConfig>(m, "ToleranceConfig")
        .def(py::init(&tol_from_kwargs), py::arg("residual_tol") = 1e-8,
             py::arg("frame_condition_max") = 1e8, py::arg("fd_check") = false)
        .def_readwrite("residual_tol", &ToleranceConfig::residual_tol)
        .def_readwrite("frame_condition_max", &ToleranceConfig::frame_condition_max)
        .def_readwrite("fd_check", &ToleranceConfig::fd_check)
        .def_readwrite("integration_step", &ToleranceConfig::integration_step);

    py::class_<SubmanifoldSpec>(m, "SubmanifoldSpec")
        .def_readonly("param_dim", &SubmanifoldSpec::param_dim)
        .def_property_readonly("signs",
                               [](const SubmanifoldSpec& s) { return s.ambient.signs; });

    py::class_<FrobeniusSpec>(m, "FrobeniusSpec")
        .def_readonly("param_dim", &FrobeniusSpec::param_dim)
        .def_readonly("eta", &FrobeniusSpec::eta)
        .def_readonly("c", &FrobeniusSpec::c_const);

    m.def(
        "load_submanifold",
        [](const std::string& path) { return std::get<SubmanifoldSpec>(load_any(path).spec); },
        py::arg("path"));
    m.def(
        "load_frobenius",
        [](const std::string& path) { return std::get<FrobeniusSpec>(load_any(path).spec); },
        py::arg("path"));

    py::class_<PointAnalysis>(m, "PointAnalysis")
        .def_readonly("u", &PointAnalysis::u)
        .def_readonly("g", &PointAnalysis::g)
        .def_readonly("h", &PointAnalysis::h)
        .def_property_readonly("a", [](const PointAnalysis& p) { return tensor_to_array(p.a); })
        .def_property_readonly("b", [](const PointAnalysis& p) { return tensor_to_array(p.b); })
        .def_property_readonly("c", [](const PointAnalysis& p) { return tensor_to_array(p.c); })
        .def_property_readonly("d", [](const PointAnalysis& p) { return tensor_to_array(p.d); })
        .def_readonly("gauss_residual", &PointAnalysis::gauss_residual)
        .def_readonly("codazzi_residual", &PointAnalysis::codazzi_residual)
        .def_readonly("ricci_residual", &PointAnalysis::ricci_residual)
        .def_readonly("levi_civita_defect_a", &PointAnalysis::levi_civita_defect_a)
        .def_readonly("levi_civita_defect_d", &PointAnalysis::levi_civita_defect_d)
        .def_readonly("orthogonality_defect", &PointAnalysis::orthogonality_defect)
        .def_readonly("frame_condition", &PointAnalysis::frame_condition)
        .def_readonly("reconstruction_defect", &PointAnalysis::reconstruction_defect);

    m.def("analyze_point", &analyze_point, py::arg("spec"), py::arg("u"),
          py::arg("tol") = ToleranceConfig{});
    m.def("dualize", &dualize, py::arg("spec"));
    m.def(
        "fundamental_forms",
        [](const SubmanifoldSpec& spec, const Eigen::VectorXd& u) {
            return fundamental_forms(spec, u);
        },
        py::arg("spec"), py::arg("u"));
    m.def(
        "curvature_residual",
        [](const SubmanifoldSpec& spec, const Eigen::VectorXd& u) {
            const CurvatureResidual cr = curvature_residual(spec, u);
            return py::make_tuple(cr.gauss, cr.codazzi, cr.ricci);
        },
        py::arg("spec"), py::arg("u"));

    m.def("wdvv_residual", &wdvv_residual, py::arg("spec"), py::arg("u"));
    m.def("flat_connection", &flat_connection, py::arg("spec"), py::arg("u"));
    m.def(
        "flat_curvature",
        [](const FrobeniusSpec& spec, const Eigen::VectorXd& u) {
            const CurvatureResidual cr = flat_curvature(spec, u);
            return py::make_tuple(cr.gauss, cr.codazzi, cr.ricci);
        },
        py::arg("spec"), py::arg("u"));
    m.def(
        "realization_form",
        [](const FrobeniusSpec& spec) {
            const RealizationForm rf = realization_form(spec);
            return py::make_tuple(rf.form.signs, rf.transform);
        },
        py::arg("spec"));

    py::class_<FrameState>(m, "FrameState")
        .def_readonly("u", &FrameState::u)
        .def_readonly("frame", &FrameState::frame)
        .def_readonly("position", &FrameState::position)
        .def_readonly("potential", &FrameState::potential);

    m.def(
        "realize",
        [](const FrobeniusSpec& spec, const std::vector<Eigen::VectorXd>& path, double step,
           double wdvv_gate, double gram_drift_abort) {
            RealizeOptions opt{step, wdvv_gate, gram_drift_abort};
            return realize(spec, path, opt);
        },
        py::arg("spec"), py::arg("path"), py::arg("step") = 1e-3, py::arg("wdvv_gate") = 1e-8,
        py::arg("gram_drift_abort") = 1e-4);
    m.def(
        "realize_verify",
        [](const FrobeniusSpec& spec, const FrameState& state) {
            const RealizeReport rep = realize_verify(spec, state);
            return py::make_tuple(rep.g_defect, rep.h_defect, rep.orth_defect);
        },
        py::arg("spec"), py::arg("state"));

    // report drivers; each returns the structured report as a JSON string
    m.def(
        "analyze_report",
        [](const std::string& spec_path, const std::string& grid, const ToleranceConfig& tol) {
            return analyze_report(load_any(spec_path), GridSpec::parse(grid), tol).dump(2);
        },
        py::arg("spec_path"), py::arg("grid"), py::arg("tol") = ToleranceConfig{});
    m.def(
        "dualize_report",
        [](const std::string& spec_path, const std::string& grid, const ToleranceConfig& tol) {
            return dualize_report(load_any(spec_path), GridSpec::parse(grid), tol).dump(2);
        },
        py::arg("spec_path"), py::arg("grid"), py::arg("tol") = ToleranceConfig{});
    m.def(
        "wdvv_report",
        [](const std::string& spec_path, const std::string& grid, const ToleranceConfig& tol) {
            return wdvv_report(load_any(spec_path), GridSpec::parse(grid), tol).dump(2);
        },
        py::arg("spec_path"), py::arg("grid"), py::arg("tol") = ToleranceConfig{});
    m.def(
        "realize_report",
        [](const std::string& spec_path, const std::vector<Eigen::VectorXd>& path, double step,
           const ToleranceConfig& tol) {
            RealizeOptions opt;
            opt.step = step;
            return realize_report(load_any(spec_path), path, opt, tol).dump(2);
        },
        py::arg("spec_path"), py::arg("path"), py::arg("step") = 1e-3,
        py::arg("tol") = ToleranceConfig{});
}
