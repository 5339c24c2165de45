#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steerlab/analysis.hpp"
#include "steerlab/batteries.hpp"
#include "steerlab/error.hpp"
#include "steerlab/freeops.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/scenarios.hpp"
#include "steerlab/seo.hpp"

namespace py = pybind11;
using namespace steerlab;

namespace {

py::dict report_dict(const AnalysisReport& r) {
  py::dict d;
  d["digest"] = r.digest;
  d["dim"] = r.dim;
  d["seo_dim"] = r.seo_dim;
  d["n_x"] = r.n_x;
  d["n_a"] = r.n_a;
  d["commuting"] = r.commuting;
  d["max_commutator_norm"] = r.max_commutator_norm;
  d["p"] = r.p;
  d["tol"] = r.tol;
  d["S"] = r.steerability;
  d["p_g"] = r.p_g;
  d["H_min"] = r.h_min;
  d["measurement_upper_bound"] = r.measurement_upper_bound;
  d["d_lambda"] = r.d_lambda;
  d["lhs_residual"] = r.lhs_residual;
  d["cq_residual"] = r.cq_residual;
  d["no_signaling_residual"] = r.no_signaling_residual;
  d["warnings"] = r.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_steerlab, m) {
  m.doc() = "Semi-device-independent steering via steering-equivalent observables";

  static py::exception<Error> base(m, "SteerlabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  m.attr("INF") = kInfNorm;
  m.attr("DEFAULT_TOL") = kCommutativityTol;

  py::class_<BipartiteState>(m, "BipartiteState")
      .def(py::init<std::size_t, std::size_t, ComplexMatrix>(), py::arg("dA"), py::arg("dB"), py::arg("rho"))
      .def_property_readonly("dA", &BipartiteState::dA)
      .def_property_readonly("dB", &BipartiteState::dB)
      .def_property_readonly("rho", &BipartiteState::rho)
      .def("reduced_a", &BipartiteState::reduced_a)
      .def("reduced_b", &BipartiteState::reduced_b);

  py::class_<MeasurementAssemblage>(m, "MeasurementAssemblage")
      .def(py::init<std::size_t, OperatorFamily>(), py::arg("dim"), py::arg("elements"))
      .def_property_readonly("dim", &MeasurementAssemblage::dim)
      .def_property_readonly("n_x", &MeasurementAssemblage::n_x)
      .def_property_readonly("n_a", &MeasurementAssemblage::n_a)
      .def_property_readonly("elements", &MeasurementAssemblage::elements);

  py::class_<StateAssemblage>(m, "StateAssemblage")
      .def(py::init<std::size_t, OperatorFamily>(), py::arg("dim"), py::arg("elements"))
      .def_property_readonly("dim", &StateAssemblage::dim)
      .def_property_readonly("n_x", &StateAssemblage::n_x)
      .def_property_readonly("n_a", &StateAssemblage::n_a)
      .def_property_readonly("elements", &StateAssemblage::elements)
      .def_property_readonly("reduced", &StateAssemblage::reduced)
      .def("no_signaling_residual", &StateAssemblage::no_signaling_residual);

  py::class_<Seo>(m, "Seo")
      .def_readonly("dim", &Seo::dim)
      .def_readonly("elements", &Seo::elements)
      .def_readonly("isometry", &Seo::isometry)
      .def_readonly("source_rank_deficient", &Seo::source_rank_deficient);

  py::class_<CommutativityVerdict>(m, "CommutativityVerdict")
      .def_readonly("commuting", &CommutativityVerdict::commuting)
      .def_readonly("max_norm", &CommutativityVerdict::max_norm);

  py::class_<GuessingBound>(m, "GuessingBound")
      .def_readonly("p_g", &GuessingBound::p_g)
      .def_readonly("h_min", &GuessingBound::h_min);

  py::class_<LhsModel>(m, "LhsModel")
      .def_readonly("weights", &LhsModel::weights)
      .def_readonly("states", &LhsModel::states)
      .def_readonly("response", &LhsModel::response)
      .def_readonly("warnings", &LhsModel::warnings)
      .def_property_readonly("d_lambda", &LhsModel::d_lambda);

  m.def("isotropic", &isotropic, py::arg("d"), py::arg("alpha"));
  m.def("maximally_entangled", &maximally_entangled, py::arg("d"));
  m.def("pure_entangled", &pure_entangled, py::arg("schmidt"));
  m.def("mub_pair", &mub_pair, py::arg("d"));
  m.def("apply_inefficiency", &apply_inefficiency, py::arg("measurements"), py::arg("eta"));
  m.def("steer", &steer, py::arg("state"), py::arg("measurements"));
  m.def("seo", &seo_of, py::arg("assemblage"), py::arg("tol") = kZeroThreshold);
  m.def("pairwise_commutativity", &pairwise_commutativity, py::arg("elements"), py::arg("p") = 1.0,
        py::arg("tol") = kCommutativityTol);
  m.def("sdi_steerability", py::overload_cast<const StateAssemblage&, double, double>(&sdi_steerability),
        py::arg("assemblage"), py::arg("p") = 1.0, py::arg("tol") = kZeroThreshold);
  m.def("measurement_upper_bound", &measurement_upper_bound, py::arg("measurements"));
  m.def("guessing_bound", &guessing_bound, py::arg("s"), py::arg("tol") = 1e-9);
  m.def("lhs_from_commuting_seo", &lhs_from_commuting_seo, py::arg("assemblage"), py::arg("tol") = kCommutativityTol);
  m.def("lhs_assemblage", &lhs_assemblage, py::arg("model"));
  m.def("assemblage_distance", &assemblage_distance);

  m.def(
      "analyze",
      [](const std::string& text, double p, double tol) {
        AnalysisOptions o;
        o.p = p;
        o.tol = tol > 0.0 ? tol : default_tolerance();
        return report_dict(analyze(parse_problem(text), o, sha256_hex(text)));
      },
      py::arg("problem_json"), py::arg("p") = 1.0, py::arg("tol") = 0.0,
      "Analyze a JSON problem document; returns the report as a dict.");

  m.def(
      "sweep",
      [](const std::string& family, std::size_t d, std::vector<double> alphas, std::vector<double> etas, double p) {
        SweepSpec spec;
        spec.family = family;
        spec.d = d;
        spec.alphas = std::move(alphas);
        spec.etas = std::move(etas);
        spec.p = p;
        return sweep_csv(run_sweep(spec));
      },
      py::arg("family") = "isotropic", py::arg("d") = 2, py::arg("alphas") = std::vector<double>{1.0},
      py::arg("etas") = std::vector<double>{}, py::arg("p") = 1.0, "Run a sweep and return the CSV table.");

  m.def(
      "verify_suite",
      [](const std::string& name, std::uint64_t seed, double scale) {
        const SuiteOptions o{seed, scale};
        const SuiteResult r = name == "discrepancies" ? run_discrepancy_suite(o) : run_core_suite(o);
        return py::make_tuple(r.ok(), format_suite_text(r));
      },
      py::arg("name") = "core", py::arg("seed") = 0, py::arg("scale") = 1.0);
}
