#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "gabor/analysis.hpp"
#include "gabor/diagnostics.hpp"
#include "gabor/gallery.hpp"
#include "gabor/twisted.hpp"

namespace py = pybind11;
using namespace gabor;

namespace {

// Lattice sequences cross the boundary as (L/a, L/b) complex arrays.
LatticeSequence as_sequence(const SeparableLattice& lat, const cmat& values) {
  if (values.rows() != lat.time_count() || values.cols() != lat.freq_count())
    throw ShapeError("expected a " + std::to_string(lat.time_count()) + "x" + std::to_string(lat.freq_count()) +
                     " coefficient array");
  return {lat, values};
}

py::dict to_dict(const BoundsReport& r) {
  py::dict d;
  d["frame_lower"] = r.frame_lower;
  d["frame_upper"] = r.frame_upper;
  d["condition_number"] = r.condition_number;
  d["riesz_lower"] = r.riesz_lower;
  d["riesz_upper"] = r.riesz_upper;
  d["is_frame"] = r.is_frame;
  d["is_riesz"] = r.is_riesz;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite Gabor frame toolkit";
  m.attr("__version__") = GABOR_VERSION;

  auto base = py::register_exception<Error>(m, "GaborError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<NotAFrameError>(m, "NotAFrameError", base.ptr());
  py::register_exception<SingularAlgebraError>(m, "SingularAlgebraError", base.ptr());
  py::register_exception<NonCommutativeLatticeError>(m, "NonCommutativeLatticeError", base.ptr());
  py::register_exception<SizeLimitError>(m, "SizeLimitError", base.ptr());

  py::class_<SeparableLattice>(m, "SeparableLattice")
      .def(py::init<index_t, index_t, index_t>(), py::arg("L"), py::arg("a"), py::arg("b"))
      .def_property_readonly("L", &SeparableLattice::length)
      .def_property_readonly("a", &SeparableLattice::a)
      .def_property_readonly("b", &SeparableLattice::b)
      .def_property_readonly("shape", [](const SeparableLattice& l) { return py::make_tuple(l.time_count(), l.freq_count()); })
      .def_property_readonly("size", &SeparableLattice::size)
      .def_property_readonly("covolume", &SeparableLattice::covolume)
      .def_property_readonly("redundancy", &SeparableLattice::redundancy)
      .def("is_commutative", &SeparableLattice::is_commutative)
      .def("points", [](const SeparableLattice& l) {
        std::vector<std::pair<index_t, index_t>> pts;
        for (const auto& p : l.points()) pts.emplace_back(p.x, p.xi);
        return pts;
      })
      .def(py::self == py::self)
      .def("__repr__", [](const SeparableLattice& l) {
        return "SeparableLattice(L=" + std::to_string(l.length()) + ", a=" + std::to_string(l.a()) +
               ", b=" + std::to_string(l.b()) + ")";
      });

  m.def("adjoint_lattice", &adjoint_lattice, py::arg("lattice"));

  m.def(
      "tf_shift",
      [](const cvec& f, index_t x, index_t xi) {
        return tf_shift(FiniteModel(f.size()), {x, xi}, f);
      },
      py::arg("f"), py::arg("x"), py::arg("xi"), "pi(x, xi) f");
  m.def(
      "shift_matrix", [](index_t L, index_t x, index_t xi) { return shift_matrix(FiniteModel(L), {x, xi}); },
      py::arg("L"), py::arg("x"), py::arg("xi"));
  m.def(
      "compose_shifts",
      [](index_t L, std::pair<index_t, index_t> lam, std::pair<index_t, index_t> mu) {
        const auto c = compose_shifts(FiniteModel(L), {lam.first, lam.second}, {mu.first, mu.second});
        return py::make_tuple(c.phase, py::make_tuple(c.sum.x, c.sum.xi));
      },
      py::arg("L"), py::arg("lam"), py::arg("mu"), "(phase, lam + mu) with pi(lam) pi(mu) = phase pi(lam + mu)");

  m.def("periodized_gaussian", [](index_t L) { return periodized_gaussian(L).samples(); }, py::arg("L"));
  m.def(
      "make_window",
      [](const std::string& recipe, index_t L) {
        return make_window(WindowRecipe::parse(recipe), FiniteModel(L)).samples();
      },
      py::arg("recipe"), py::arg("L"));

  m.def(
      "coefficient_map", [](const cvec& g, const SeparableLattice& lat, const cvec& f) {
        return coefficient_map(g, lat, f).values;
      },
      py::arg("g"), py::arg("lattice"), py::arg("f"));
  m.def(
      "synthesis_map",
      [](const cvec& g, const SeparableLattice& lat, const cmat& c) { return synthesis_map(g, as_sequence(lat, c)); },
      py::arg("g"), py::arg("lattice"), py::arg("c"));
  m.def("synthesis_matrix", &synthesis_matrix, py::arg("g"), py::arg("lattice"));
  m.def("coefficient_matrix", &coefficient_matrix, py::arg("g"), py::arg("lattice"));
  m.def("frame_operator_matrix", &frame_operator_matrix, py::arg("g"), py::arg("lattice"));
  m.def("gramian_matrix", &gramian_matrix, py::arg("g"), py::arg("lattice"));
  m.def("autocorrelation_l1", &autocorrelation_l1, py::arg("g"), py::arg("lattice"));

  m.def(
      "twisted_convolve",
      [](const SeparableLattice& lat, const cmat& a, const cmat& b) {
        return twisted_convolve(as_sequence(lat, a), as_sequence(lat, b)).values;
      },
      py::arg("lattice"), py::arg("a"), py::arg("b"));
  m.def(
      "algebra_adjoint",
      [](const SeparableLattice& lat, const cmat& a) { return algebra_adjoint(as_sequence(lat, a)).values; },
      py::arg("lattice"), py::arg("a"));
  m.def(
      "twisted_invert",
      [](const SeparableLattice& lat, const cmat& a, double tol_scale) {
        return twisted_invert(as_sequence(lat, a), tol_scale).values;
      },
      py::arg("lattice"), py::arg("a"), py::arg("tol_scale") = kDefaultTolScale);
  m.def(
      "janssen_coefficients",
      [](const cvec& g, const SeparableLattice& lat) { return janssen_coefficients(g, lat).values; },
      py::arg("g"), py::arg("lattice"));
  m.def(
      "kernel_basis",
      [](const cvec& g, const SeparableLattice& lat, double tol_scale) {
        std::vector<cmat> out;
        for (const auto& s : kernel_basis(g, lat, tol_scale)) out.push_back(s.values);
        return out;
      },
      py::arg("g"), py::arg("lattice"), py::arg("tol_scale") = kDefaultTolScale);
  m.def("index_commutative", &index_commutative, py::arg("g"), py::arg("lattice"),
        py::arg("tol_scale") = kDefaultTolScale);
  m.def(
      "character", [](const SeparableLattice& lat, index_t p, index_t q) { return character(lat, p, q).values; },
      py::arg("lattice"), py::arg("p"), py::arg("q"));

  py::class_<BoundsReport>(m, "BoundsReport")
      .def_readonly("frame_lower", &BoundsReport::frame_lower)
      .def_readonly("frame_upper", &BoundsReport::frame_upper)
      .def_readonly("condition_number", &BoundsReport::condition_number)
      .def_readonly("riesz_lower", &BoundsReport::riesz_lower)
      .def_readonly("riesz_upper", &BoundsReport::riesz_upper)
      .def_readonly("gramian_min_nonzero", &BoundsReport::gramian_min_nonzero)
      .def_readonly("is_frame", &BoundsReport::is_frame)
      .def_readonly("is_riesz", &BoundsReport::is_riesz)
      .def_readonly("threshold", &BoundsReport::threshold)
      .def_readonly("frame_spectrum", &BoundsReport::frame_spectrum)
      .def_readonly("gramian_spectrum", &BoundsReport::gramian_spectrum)
      .def("as_dict", &to_dict);
  m.def("frame_bounds", &frame_bounds, py::arg("g"), py::arg("lattice"), py::arg("tol_scale") = kDefaultTolScale);

  py::class_<EquivalenceVerdict>(m, "EquivalenceVerdict")
      .def_property_readonly("holds",
                             [](const EquivalenceVerdict& v) {
                               py::dict d;
                               for (std::size_t i = 0; i < v.holds.size(); ++i)
                                 d[py::str(std::string(kConditionKeys[i]))] = v.holds[i];
                               return d;
                             })
      .def_property_readonly("witness",
                             [](const EquivalenceVerdict& v) {
                               py::dict d;
                               for (std::size_t i = 0; i < v.witness.size(); ++i)
                                 d[py::str(std::string(kConditionKeys[i]))] = v.witness[i];
                               return d;
                             })
      .def_readonly("threshold", &EquivalenceVerdict::threshold)
      .def_readonly("consistent", &EquivalenceVerdict::consistent)
      .def_readonly("marginal", &EquivalenceVerdict::marginal)
      .def("all_true", &EquivalenceVerdict::all_true)
      .def("all_false", &EquivalenceVerdict::all_false);
  m.def("check_all_conditions", &check_all_conditions, py::arg("g"), py::arg("lattice"),
        py::arg("tol_scale") = kDefaultTolScale);

  py::class_<DualWindow>(m, "DualWindow")
      .def_readonly("samples", &DualWindow::samples)
      .def_readonly("label", &DualWindow::label)
      .def_readonly("wexler_raz_constant", &DualWindow::wexler_raz_constant)
      .def_readonly("biorthogonality_residual", &DualWindow::biorthogonality_residual)
      .def_readonly("frame_lower", &DualWindow::frame_lower)
      .def_readonly("frame_upper", &DualWindow::frame_upper);
  m.def(
      "wexler_raz_dual",
      [](const cvec& g, const SeparableLattice& lat, double tol_scale) { return wexler_raz_dual(g, lat, tol_scale); },
      py::arg("g"), py::arg("lattice"), py::arg("tol_scale") = kDefaultTolScale);
  m.def("cross_gramian", &cross_gramian, py::arg("phi"), py::arg("g"), py::arg("lattice"));
  m.def("wexler_raz_defect", &wexler_raz_defect, py::arg("phi"), py::arg("g"), py::arg("lattice"));

  py::class_<DualityReport>(m, "DualityReport")
      .def_readonly("frame", &DualityReport::frame)
      .def_readonly("adjoint_riesz", &DualityReport::adjoint_riesz)
      .def_readonly("agree", &DualityReport::agree);
  m.def("duality_check", &duality_check, py::arg("g"), py::arg("lattice"), py::arg("tol_scale") = kDefaultTolScale);

  m.def(
      "modulation_norm_proxy", [](const cvec& f, double p) { return modulation_norm_proxy(f, p); }, py::arg("f"),
      py::arg("p") = 1.0, "p in {1, 2, inf}");

  py::class_<AlternatingProbe>(m, "AlternatingProbe")
      .def_readonly("L", &AlternatingProbe::length)
      .def_readonly("side", &AlternatingProbe::side)
      .def_readonly("ratio", &AlternatingProbe::ratio)
      .def_readonly("sigma_min", &AlternatingProbe::sigma_min)
      .def_readonly("sigma_max", &AlternatingProbe::sigma_max)
      .def_readonly("kernel_dimension", &AlternatingProbe::kernel_dimension);
  m.def("alternating_kernel_probe", &alternating_kernel_probe, py::arg("L"), py::arg("g"),
        py::arg("tol_scale") = kDefaultTolScale);
  m.def("gaussian_alternating_kernel_probe", &gaussian_alternating_kernel_probe, py::arg("L"),
        py::arg("tol_scale") = kDefaultTolScale);
  m.def(
      "alternating_sequence", [](const SeparableLattice& lat) { return alternating_sequence(lat).values; },
      py::arg("lattice"));

  py::class_<PartitionKernel>(m, "PartitionKernel")
      .def_readonly("lattice", &PartitionKernel::lattice)
      .def_property_readonly("sequence", [](const PartitionKernel& p) { return p.sequence.values; })
      .def_readonly("partition_value", &PartitionKernel::partition_value)
      .def_readonly("residual", &PartitionKernel::residual);
  m.def("partition_of_unity_kernel", &partition_of_unity_kernel, py::arg("g"), py::arg("period"), py::arg("N"),
        py::arg("alpha"));

  m.def(
      "analyze",
      [](index_t L, index_t a, index_t b, const std::string& window, std::vector<std::string> tasks,
         double tol_scale, std::uint64_t seed) {
        AnalysisConfig c;
        c.length = L;
        c.a = a;
        c.b = b;
        c.window = window;
        c.tasks = std::move(tasks);
        c.tol_scale = tol_scale;
        c.seed = seed;
        const auto report = gabor::analyze(c);
        return py::module_::import("json").attr("loads")(report.document.dump());
      },
      py::arg("L"), py::arg("a"), py::arg("b"), py::arg("window") = "gaussian",
      py::arg("tasks") = std::vector<std::string>{"bounds", "conditions"}, py::arg("tol_scale") = kDefaultTolScale,
      py::arg("seed") = kDefaultSeed, "Report as a dict (same schema as the CLI)");
}
