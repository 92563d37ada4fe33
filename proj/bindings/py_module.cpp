#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zikaoc/config.hpp"
#include "zikaoc/csv.hpp"
#include "zikaoc/verify.hpp"

namespace py = pybind11;
using namespace zikaoc;

PYBIND11_MODULE(zikaoc, m) {
    m.doc() = "Optimal control of vertical Zika transmission: compartment model, "
              "Pontryagin adjoint system and forward-backward sweep solver";

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<>())
        .def_readwrite("S", &StateVector::S)
        .def_readwrite("I", &StateVector::I)
        .def_readwrite("W", &StateVector::W)
        .def_readwrite("M", &StateVector::M)
        .def_readwrite("Am", &StateVector::Am)
        .def_readwrite("Sm", &StateVector::Sm)
        .def_readwrite("Em", &StateVector::Em)
        .def_readwrite("Im", &StateVector::Im)
        .def("to_list", [](const StateVector& x) {
            const auto a = x.to_array();
            return std::vector<double>(a.begin(), a.end());
        });

    py::class_<AdjointVector>(m, "AdjointVector")
        .def(py::init<>())
        .def_readwrite("S", &AdjointVector::S)
        .def_readwrite("I", &AdjointVector::I)
        .def_readwrite("W", &AdjointVector::W)
        .def_readwrite("M", &AdjointVector::M)
        .def_readwrite("Am", &AdjointVector::Am)
        .def_readwrite("Sm", &AdjointVector::Sm)
        .def_readwrite("Em", &AdjointVector::Em)
        .def_readwrite("Im", &AdjointVector::Im)
        .def("to_list", [](const AdjointVector& x) {
            const auto a = x.to_array();
            return std::vector<double>(a.begin(), a.end());
        });

    py::class_<ControlPair>(m, "ControlPair")
        .def(py::init<>())
        .def(py::init([](double u1, double u2) { return ControlPair{u1, u2}; }))
        .def_readwrite("u1", &ControlPair::u1)
        .def_readwrite("u2", &ControlPair::u2);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("recruitment", &ModelParams::recruitment)
        .def_readwrite("infected_fraction", &ModelParams::infected_fraction)
        .def_readwrite("biting_rate", &ModelParams::biting_rate)
        .def_readwrite("transmission_mh", &ModelParams::transmission_mh)
        .def_readwrite("transmission_hm", &ModelParams::transmission_hm)
        .def_readwrite("birth_rate_susceptible", &ModelParams::birth_rate_susceptible)
        .def_readwrite("birth_rate_infected", &ModelParams::birth_rate_infected)
        .def_readwrite("maternal_exit_rate", &ModelParams::maternal_exit_rate)
        .def_readwrite("microcephaly_fraction", &ModelParams::microcephaly_fraction)
        .def_readwrite("eggs_per_capita", &ModelParams::eggs_per_capita)
        .def_readwrite("larva_mortality", &ModelParams::larva_mortality)
        .def_readwrite("maturation_rate", &ModelParams::maturation_rate)
        .def_readwrite("incubation_rate", &ModelParams::incubation_rate)
        .def_readwrite("adult_mortality", &ModelParams::adult_mortality)
        .def_readwrite("larva_capacity", &ModelParams::larva_capacity);

    py::class_<ObjectiveWeights>(m, "ObjectiveWeights")
        .def(py::init<>())
        .def_readwrite("w1", &ObjectiveWeights::w1)
        .def_readwrite("w2", &ObjectiveWeights::w2)
        .def_readwrite("w3", &ObjectiveWeights::w3)
        .def_readwrite("w4", &ObjectiveWeights::w4);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<>())
        .def(py::init([](double t_f, std::size_t n_steps) { return TimeGrid{t_f, n_steps}; }))
        .def_readwrite("t_f", &TimeGrid::t_f)
        .def_readwrite("n_steps", &TimeGrid::n_steps)
        .def("dt", &TimeGrid::dt)
        .def("node", &TimeGrid::node);

    py::class_<ControlGrid>(m, "ControlGrid")
        .def(py::init<std::size_t>())
        .def_readwrite("u1", &ControlGrid::u1)
        .def_readwrite("u2", &ControlGrid::u2);

    py::class_<FbsmConfig>(m, "FbsmConfig")
        .def(py::init<>())
        .def_readwrite("max_iters", &FbsmConfig::max_iters)
        .def_readwrite("rel_tol", &FbsmConfig::rel_tol)
        .def_readwrite("relaxation", &FbsmConfig::relaxation)
        .def_readwrite("u_max", &FbsmConfig::u_max)
        .def_readwrite("substeps", &FbsmConfig::substeps);

    py::class_<FbsmSolution>(m, "FbsmSolution")
        .def_readonly("states", &FbsmSolution::states)
        .def_readonly("adjoints", &FbsmSolution::adjoints)
        .def_readonly("controls", &FbsmSolution::controls)
        .def_readonly("objective", &FbsmSolution::objective)
        .def_readonly("iterations", &FbsmSolution::iterations)
        .def_readonly("converged", &FbsmSolution::converged)
        .def_readonly("residual_history", &FbsmSolution::residual_history);

    py::enum_<ControlMode>(m, "ControlMode")
        .value("none", ControlMode::none)
        .value("u1_only", ControlMode::u1_only)
        .value("u2_only", ControlMode::u2_only)
        .value("both", ControlMode::both);

    m.def("default_params", &default_params);
    m.def("study_initial_state", &study_initial_state);
    m.def("total_women", &total_women);
    m.def("total_adult_mosquitoes", &total_adult_mosquitoes);
    m.def("rhs_controlled", &rhs_controlled, py::arg("t"), py::arg("x"), py::arg("u"),
          py::arg("p"));
    m.def("rhs_uncontrolled", &rhs_uncontrolled, py::arg("t"), py::arg("x"), py::arg("p"));
    m.def("hamiltonian", &hamiltonian);
    m.def("adjoint_rhs", &adjoint_rhs);
    m.def("characterize_controls", &characterize_controls);
    m.def("transversality", &transversality);
    m.def("rk4_forward", &rk4_forward, py::arg("x0"), py::arg("u"), py::arg("p"),
          py::arg("grid"), py::arg("substeps") = 0);
    m.def("evaluate_objective", &evaluate_objective);
    m.def("stability_substeps", &stability_substeps);
    m.def("fbsm_solve", &fbsm_solve, py::arg("x0"), py::arg("p"), py::arg("w"), py::arg("grid"),
          py::arg("cfg"), py::arg("mode") = ControlMode::both,
          py::call_guard<py::gil_scoped_release>());

    m.def("fd_adjoint_check",
          [](const ModelParams& p, const ObjectiveWeights& w, std::size_t samples,
             std::uint64_t seed) {
              const auto r = fd_adjoint_check(p, w, samples, seed);
              return py::dict(py::arg("pass_") = r.pass,
                              py::arg("max_rel_error") = r.max_rel_error,
                              py::arg("samples") = r.samples);
          });
    m.def("minimality_check",
          [](const ModelParams& p, const ObjectiveWeights& w, std::size_t samples,
             std::size_t grid_resolution, std::uint64_t seed) {
              const auto r = minimality_check(p, w, samples, grid_resolution, seed);
              return py::dict(py::arg("pass_") = r.pass,
                              py::arg("worst_excess") = r.worst_excess,
                              py::arg("failures") = r.failures);
          });
    m.def("order_check",
          [](const ModelParams& p, const StateVector& x0, double t_f, double dt) {
              const auto r = order_check(p, x0, t_f, dt);
              return py::dict(py::arg("pass_") = r.pass, py::arg("order") = r.order,
                              py::arg("skipped") = r.skipped);
          },
          py::arg("p"), py::arg("x0"), py::arg("t_f") = 160.0, py::arg("dt") = 0.2);
}
