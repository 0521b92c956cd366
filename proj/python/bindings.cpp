#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "spinorq/analysis.hpp"
#include "spinorq/errors.hpp"
#include "spinorq/scaling.hpp"

namespace py = pybind11;
using namespace spinorq;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

InitialState parse_initial(const std::string& s) {
  if (s == "ground") return InitialState::ground;
  if (s == "most_excited") return InitialState::most_excited;
  throw InvalidArgument("initial must be 'ground' or 'most_excited'");
}

py::dict fit_dict(const ScalingFit& f) {
  py::dict d;
  d["offset_a"] = f.offset_a;
  d["amplitude_b"] = f.amplitude_b;
  d["exponent_gamma"] = f.exponent_gamma;
  d["growth_exponent"] = f.growth_exponent();
  d["r_squared"] = f.r_squared;
  d["rmse"] = f.rmse;
  d["sse"] = f.sse;
  return d;
}

std::vector<ScalingPoint> points(const std::vector<double>& n, const std::vector<double>& v) {
  return make_points(n, v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact diagonalization and quench dynamics of the single-mode spin-1 condensate";

  auto base = py::register_exception<Error>(m, "SpinorError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<NoValidWindow>(m, "NoValidWindow", base.ptr());
  py::register_exception<NoKink>(m, "NoKink", base.ptr());
  py::register_exception<UndefinedTimescale>(m, "UndefinedTimescale", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());
  py::register_exception<RetentionError>(m, "RetentionError", base.ptr());

  m.def(
      "build_hamiltonian",
      [](int n_atoms, double c1, double q) {
        const auto op = build_hamiltonian({n_atoms, c1, q});
        return py::make_tuple(to_array(op.diagonal), to_array(op.offdiagonal));
      },
      py::arg("n_atoms"), py::arg("c1"), py::arg("q"),
      "Diagonal and off-diagonal of the zero-magnetization Hamiltonian.");

  m.def(
      "decompose",
      [](std::vector<double> diagonal, std::vector<double> offdiagonal) {
        const EigenSystem es = decompose({std::move(diagonal), std::move(offdiagonal)});
        const auto d = static_cast<py::ssize_t>(es.dim);
        // Column a of the returned matrix is eigenvector a.
        const auto item = static_cast<py::ssize_t>(sizeof(double));
        py::array_t<double> vectors(std::vector<py::ssize_t>{d, d},
                                    std::vector<py::ssize_t>{item, d * item}, es.vectors.data());
        return py::make_tuple(to_array(es.values), vectors);
      },
      py::arg("diagonal"), py::arg("offdiagonal"));

  m.def(
      "participation_ratio",
      [](const std::vector<double>& v) { return participation_ratio(v); }, py::arg("vector"));

  py::class_<QuenchResult>(m, "QuenchResult")
      .def_readonly("n_atoms", &QuenchResult::n_atoms)
      .def_readonly("dim", &QuenchResult::dim)
      .def_property_readonly("energies", [](const QuenchResult& r) { return to_array(r.energies); })
      .def_property_readonly("eon", [](const QuenchResult& r) { return to_array(r.eon); })
      .def_property_readonly("eev", [](const QuenchResult& r) { return to_array(r.eev); })
      .def_property_readonly("amplitudes",
                             [](const QuenchResult& r) { return to_array(r.amplitudes); })
      .def_readonly("mean_energy", &QuenchResult::mean_energy)
      .def_readonly("pde", &QuenchResult::pde)
      .def_readonly("effective_dimension", &QuenchResult::effective_dimension)
      .def_readonly("initial_n0", &QuenchResult::initial_n0)
      .def_readonly("retained", &QuenchResult::retained)
      .def_readonly("retained_weight", &QuenchResult::retained_weight)
      .def("truncation_error", &QuenchResult::truncation_error);

  m.def(
      "run_quench",
      [](int n_atoms, double c1, double q_initial, double q_final, const std::string& initial,
         double retention_tolerance, std::size_t band_width, double band_tolerance) {
        return run_quench({n_atoms, c1, q_initial, q_final, parse_initial(initial)},
                          {retention_tolerance, band_width, band_tolerance});
      },
      py::arg("n_atoms"), py::arg("c1"), py::arg("q_initial"), py::arg("q_final"),
      py::arg("initial") = "ground", py::arg("retention_tolerance") = 1e-8,
      py::arg("band_width") = 5, py::arg("band_tolerance") = 1e-9);

  m.def(
      "evolve_n0",
      [](const QuenchResult& r, const std::vector<double>& times, unsigned threads) {
        return to_array(evolve_n0(r, times, threads));
      },
      py::arg("result"), py::arg("times"), py::arg("threads") = 1);

  m.def(
      "overlap_distribution",
      [](const QuenchResult& r) {
        const auto d = overlap_distribution(r);
        py::dict out;
        out["indices"] = d.indices;
        out["amplitudes"] = to_array(d.amplitudes);
        out["gaps"] = to_array(d.gaps);
        out["weights"] = to_array(d.weights);
        return out;
      },
      py::arg("result"));

  m.def(
      "predict_timescales",
      [](const QuenchResult& r, double sigma_multiplier) {
        const auto t = predict_timescales(r, {sigma_multiplier});
        py::dict d;
        d["t_collapse"] = t.t_collapse;
        d["t_revival"] = t.t_revival;
        d["t_oscillation"] = t.t_oscillation;
        d["t_randomize"] = t.t_randomize;
        d["m_index"] = t.m_index;
        d["sigma_index_offset"] = t.sigma_index_offset;
        return d;
      },
      py::arg("result"), py::arg("sigma_multiplier") = 1.0);

  m.def(
      "classify_region",
      [](int n_atoms, double c1, double q_initial, double q_final, const std::string& initial) {
        const QuenchSpec spec{n_atoms, c1, q_initial, q_final, parse_initial(initial)};
        const EigenSystem es = decompose(build_hamiltonian(spec.final_model()));
        return std::string(to_string(classify_region(spec, run_quench(spec, es), es)));
      },
      py::arg("n_atoms"), py::arg("c1"), py::arg("q_initial"), py::arg("q_final"),
      py::arg("initial") = "ground");

  m.def(
      "eth_indicators",
      [](const std::vector<double>& energies, const std::vector<double>& eev, double center,
         double half_width) {
        const auto r = eth_indicators(make_window(energies, center, half_width), eev);
        py::dict d;
        d["mc_prediction"] = r.mc_prediction;
        d["noise"] = r.noise;
        d["support"] = r.support;
        d["max_divergence"] = r.max_divergence;
        d["mean_eev_difference"] = r.mean_eev_difference;
        d["n_members"] = r.n_members;
        return d;
      },
      py::arg("energies"), py::arg("eev"), py::arg("center"), py::arg("half_width"));

  m.def(
      "ground_state_n0_fraction",
      [](int n_atoms, double c1, const std::vector<double>& qs) {
        return to_array(ground_scan(n_atoms, c1, qs).n0_fraction);
      },
      py::arg("n_atoms"), py::arg("c1"), py::arg("qs"));

  m.def(
      "fit_power_law_with_offset",
      [](const std::vector<double>& n, const std::vector<double>& v) {
        return fit_dict(fit_power_law_with_offset(points(n, v)));
      },
      py::arg("n"), py::arg("values"));
  m.def(
      "fit_pure_power_law",
      [](const std::vector<double>& n, const std::vector<double>& v) {
        return fit_dict(fit_pure_power_law(points(n, v)));
      },
      py::arg("n"), py::arg("values"));
}
