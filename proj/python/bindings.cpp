#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tzband/config.hpp"
#include "tzband/decay_fit.hpp"
#include "tzband/experiments.hpp"
#include "tzband/report.hpp"
#include "tzband/spectral.hpp"

namespace py = pybind11;
using namespace tzband;

namespace {

py::dict result_to_dict(const ExperimentResult& r) {
    py::dict tables;
    for (const auto& t : r.tables) tables[py::str(t.name)] = py::dict(py::arg("columns") = t.columns, py::arg("rows") = t.rows);
    py::list criteria;
    for (const auto& c : r.criteria)
        criteria.append(py::dict(py::arg("id") = c.id, py::arg("title") = c.title, py::arg("passed") = c.passed,
                                 py::arg("detail") = c.detail));
    py::list series;
    for (const auto& s : r.series) {
        py::dict d(py::arg("label") = s.label, py::arg("table") = s.table, py::arg("column") = s.column);
        if (s.fit) d["slope"] = s.fit->slope, d["upper_slope"] = s.fit->upper_slope, d["passed"] = s.fit->passed;
        series.append(d);
    }
    return py::dict(py::arg("name") = r.name, py::arg("passed") = r.passed(), py::arg("tables") = tables,
                    py::arg("criteria") = criteria, py::arg("series") = series, py::arg("notes") = r.notes);
}

}  // namespace

PYBIND11_MODULE(_tzband, mod) {
    mod.doc() = "Equivariant Toeplitz spectral projectors on model Kaehler surfaces";

    py::enum_<ModelId>(mod, "ModelId").value("CP1", ModelId::CP1).value("FockPlane", ModelId::FockPlane);

    py::class_<ModelKahlerSurface>(mod, "Model")
        .def_static("cp1", &ModelKahlerSurface::cp1)
        .def_static("fock_plane", &ModelKahlerSurface::fock_plane, py::arg("dim"))
        .def_property_readonly("id", &ModelKahlerSurface::id)
        .def_property_readonly("dim", &ModelKahlerSurface::dim)
        .def("volume", &ModelKahlerSurface::volume);

    py::class_<ChartPoint>(mod, "ChartPoint")
        .def(py::init([](const CVector& z) { return ChartPoint{z}; }), py::arg("z"))
        .def_readonly("z", &ChartPoint::z);

    py::class_<CirclePoint>(mod, "CirclePoint")
        .def(py::init([](cplx z, double theta) { return CirclePoint::of(z, theta); }), py::arg("z"), py::arg("theta") = 0.0)
        .def(py::init([](const CVector& z, double theta) { return CirclePoint{ChartPoint{z}, theta}; }), py::arg("z"),
             py::arg("theta") = 0.0)
        .def_property_readonly("z", [](const CirclePoint& x) { return x.base.z; })
        .def_readonly("theta", &CirclePoint::theta);

    mod.def("psi2", [](const CVector& w, const CVector& v) { return psi2(TangentVector{w}, TangentVector{v}); },
            py::arg("w"), py::arg("v"));
    mod.def("circle_act", &circle_act, py::arg("x"), py::arg("vartheta"));
    mod.def("heisenberg_point",
            [](const ModelKahlerSurface& model, const CVector& m, double theta, const CVector& w, int k) {
                return heisenberg_point(model, ChartPoint{m}, theta, TangentVector{w}, k);
            },
            py::arg("model"), py::arg("m"), py::arg("theta"), py::arg("w"), py::arg("k"));
    mod.def("verify_normalization", &verify_normalization, py::arg("model"));

    py::class_<SectionBasis>(mod, "SectionBasis")
        .def(py::init<const ModelKahlerSurface&, int>(), py::arg("model"), py::arg("k"))
        .def_property_readonly("k", &SectionBasis::level)
        .def("dim", &SectionBasis::dim)
        .def("eval", &SectionBasis::eval, py::arg("j"), py::arg("x"))
        .def("eval_all", &SectionBasis::eval_all, py::arg("x"));

    mod.def("szego_kernel",
            [](const SectionBasis& b, const CirclePoint& x1, const CirclePoint& x2, bool basis_sum) {
                return szego_kernel(b, x1, x2, basis_sum ? KernelMethod::basis_sum : KernelMethod::closed_form).value;
            },
            py::arg("basis"), py::arg("x1"), py::arg("x2"), py::arg("basis_sum") = false);

    py::class_<SymbolFunction>(mod, "Symbol")
        .def_static("by_name", &symbols::by_name, py::arg("name"), py::arg("param") = 0.0)
        .def_readonly("id", &SymbolFunction::id)
        .def_readonly("min", &SymbolFunction::min)
        .def_readonly("max", &SymbolFunction::max)
        .def("__call__", &SymbolFunction::operator(), py::arg("z"));

    py::class_<ToeplitzSpectrum>(mod, "Spectrum")
        .def_readonly("k", &ToeplitzSpectrum::k)
        .def_readonly("matrix", &ToeplitzSpectrum::matrix)
        .def_readonly("eigenvalues", &ToeplitzSpectrum::eigenvalues)
        .def_readonly("eigenvectors", &ToeplitzSpectrum::eigenvectors)
        .def_property_readonly("first_order", [](const ToeplitzSpectrum& t) { return t.order == OperatorOrder::first; });

    mod.def("toeplitz_spectrum",
            [](const SymbolFunction& f, const SectionBasis& b) {
                return eigendecompose(build_toeplitz(f, b, QuadratureGrid::for_level(b.level())));
            },
            py::arg("symbol"), py::arg("basis"));
    mod.def("first_order_spectrum", &first_order_spectrum, py::arg("symbol"), py::arg("basis"));
    mod.def("eigenfunctions_at", &eigenfunctions_at, py::arg("spectrum"), py::arg("basis"), py::arg("x"));
    mod.def("spectral_function",
            py::overload_cast<const ToeplitzSpectrum&, const SectionBasis&, double, const CirclePoint&, const CirclePoint&>(
                &spectral_function),
            py::arg("spectrum"), py::arg("basis"), py::arg("Lambda"), py::arg("x1"), py::arg("x2"));
    mod.def("band_kernel",
            py::overload_cast<const ToeplitzSpectrum&, const SectionBasis&, double, double, const CirclePoint&,
                              const CirclePoint&>(&band_kernel),
            py::arg("spectrum"), py::arg("basis"), py::arg("Lambda1"), py::arg("Lambda2"), py::arg("x1"), py::arg("x2"));

    py::class_<TestFunctionChi>(mod, "TestFunctionChi")
        .def(py::init<double>(), py::arg("epsilon") = 0.5)
        .def("chi", &TestFunctionChi::chi)
        .def("chi_hat", &TestFunctionChi::chi_hat)
        .def("G", &TestFunctionChi::G)
        .def_property_readonly("delta", &TestFunctionChi::delta)
        .def_property_readonly("psi_l1", &TestFunctionChi::psi_l1);

    py::class_<DecayFit>(mod, "DecayFit")
        .def_readonly("slope", &DecayFit::slope)
        .def_readonly("intercept", &DecayFit::intercept)
        .def_readonly("upper_slope", &DecayFit::upper_slope)
        .def_readonly("passed", &DecayFit::passed)
        .def_readonly("all_zero", &DecayFit::all_zero)
        .def("verdict", &DecayFit::verdict);
    mod.def("fit_decay", &fit_decay, py::arg("ks"), py::arg("values"), py::arg("threshold") = -3.0);

    mod.def("experiment_names", &experiment_names);
    mod.def("default_config_json", [] { return config_to_json(ExperimentConfig{}); });
    mod.def("run_experiment",
            [](const std::string& name, const std::string& config_json, const std::string& out_dir) {
                const auto cfg = config_from_json(config_json);
                ExperimentResult r;
                {
                    py::gil_scoped_release release;
                    r = run_by_name(name, cfg);
                }
                if (!out_dir.empty()) emit_report({r}, out_dir);
                return result_to_dict(r);
            },
            py::arg("name"), py::arg("config_json") = "{}", py::arg("out_dir") = "");
}
