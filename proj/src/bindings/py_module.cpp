#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcdd/bath.hpp"
#include "gcdd/dynamics.hpp"
#include "gcdd/frame.hpp"
#include "gcdd/gates.hpp"
#include "gcdd/linalg.hpp"
#include "gcdd/rb87.hpp"
#include "gcdd/runner.hpp"

namespace py = pybind11;
using namespace gcdd;

PYBIND11_MODULE(_core, m) {
    m.doc() = "continuous dynamical decoupling for d-level systems";

    // ---- linear algebra ----
    py::class_<Eigensystem>(m, "Eigensystem")
        .def_readonly("values", &Eigensystem::values)
        .def_readonly("vectors", &Eigensystem::vectors);
    m.def("eig_hermitian", &eig_hermitian, py::arg("h"));
    m.def("expm_hermitian", &expm_hermitian, py::arg("h"), py::arg("scale"));
    m.def("sqrtm_psd", &sqrtm_psd, py::arg("h"), py::arg("clamp_tol") = 1e-9);
    m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));

    // ---- control frame ----
    py::class_<QuditFrame>(m, "QuditFrame")
        .def_readonly("d", &QuditFrame::d)
        .def_readonly("omega0", &QuditFrame::omega0)
        .def_readonly("t0", &QuditFrame::t0)
        .def_readonly("omega_d", &QuditFrame::omega_d)
        .def_readonly("omega_r", &QuditFrame::omega_r)
        .def_readonly("HL", &QuditFrame::HL)
        .def_readonly("HF", &QuditFrame::HF)
        .def_readonly("F", &QuditFrame::F);
    m.def("build_frame", &build_frame, py::arg("d"), py::arg("omega0"));
    m.def("control_unitary", &control_unitary, py::arg("frame"), py::arg("t"));
    m.def("check_decoupling_identity", &check_decoupling_identity, py::arg("frame"),
          py::arg("a"), py::arg("n_quad"));
    m.def("control_hamiltonian", &control_hamiltonian, py::arg("frame"), py::arg("t"));

    py::class_<GateSpec>(m, "GateSpec")
        .def_readonly("HG", &GateSpec::HG)
        .def_readonly("tau", &GateSpec::tau)
        .def_readonly("g0", &GateSpec::g0)
        .def_readonly("G", &GateSpec::G)
        .def_readonly("omega_g", &GateSpec::omega_g);
    m.def("make_gate_spec", &make_gate_spec, py::arg("frame"), py::arg("HG"), py::arg("tau"));
    m.def("gate_hamiltonian_rotated", &gate_hamiltonian_rotated, py::arg("frame"),
          py::arg("gate"), py::arg("t"));

    py::class_<LabFields>(m, "LabFields")
        .def_readonly("Hlab", &LabFields::Hlab)
        .def_readonly("Upsilon", &LabFields::Upsilon);
    m.def("lab_hamiltonian", &lab_hamiltonian, py::arg("frame"), py::arg("gate"), py::arg("t"));

    // ---- gates ----
    py::class_<NamedGate>(m, "NamedGate")
        .def_readonly("name", &NamedGate::name)
        .def_readonly("d", &NamedGate::d)
        .def_readonly("HG", &NamedGate::HG)
        .def_readonly("UG", &NamedGate::UG)
        .def_readonly("tau", &NamedGate::tau);
    m.def("fourier_basis", &fourier_basis, py::arg("d"));
    m.def("hadamard_qutrit", &hadamard_qutrit, py::arg("tau"));
    m.def("custom_gate", &custom_gate, py::arg("name"), py::arg("HG"), py::arg("tau"));

    // ---- Rb-87 pulse mapping ----
    py::class_<DetuningSet>(m, "DetuningSet")
        .def(py::init([](double d1, double d2, double d3) {
                 DetuningSet det;
                 det.Delta = {d1, d2, d3};
                 return det;
             }),
             py::arg("delta1"), py::arg("delta2"), py::arg("delta3"))
        .def_readonly("Delta", &DetuningSet::Delta);
    m.def("sqrt_negative_detuning", &sqrt_negative_detuning, py::arg("delta"));

    py::class_<RabiSchedule>(m, "RabiSchedule")
        .def_readonly("times", &RabiSchedule::times)
        .def_readonly("omega", &RabiSchedule::omega)
        .def_readonly("Delta", &RabiSchedule::Delta)
        .def_readonly("t0_internal", &RabiSchedule::t0_internal);
    m.def("map_upsilon_to_rabi", &map_upsilon_to_rabi, py::arg("times"),
          py::arg("upsilon_samples"), py::arg("Delta"), py::arg("t0_internal"));
    m.def("build_rabi_schedule", &build_rabi_schedule, py::arg("frame"), py::arg("gate"),
          py::arg("times"), py::arg("Delta"));
    m.def("effective_hamiltonian", &effective_hamiltonian, py::arg("schedule"),
          py::arg("t_index"));

    py::class_<FeasibilityReport>(m, "FeasibilityReport")
        .def_readonly("eta", &FeasibilityReport::eta)
        .def_readonly("max_rabi_hz", &FeasibilityReport::max_rabi_hz)
        .def_readonly("detuning_hz", &FeasibilityReport::detuning_hz)
        .def_readonly("eta_ok", &FeasibilityReport::eta_ok)
        .def_readonly("rabi_ok", &FeasibilityReport::rabi_ok)
        .def_readonly("detuning_ok", &FeasibilityReport::detuning_ok);
    m.def("feasibility_report", &feasibility_report, py::arg("schedule"),
          py::arg("physical_t0"));
    m.def("detunings_from_hz", &detunings_from_hz, py::arg("delta_hz"), py::arg("physical_t0"),
          py::arg("t0_internal"));

    // ---- baths ----
    py::class_<BathConfig>(m, "BathConfig")
        .def(py::init<>())
        .def_readwrite("lambda_damp_m1", &BathConfig::lambda_damp_m1)
        .def_readwrite("lambda_damp_p1", &BathConfig::lambda_damp_p1)
        .def_readwrite("lambda_deph_m1", &BathConfig::lambda_deph_m1)
        .def_readwrite("lambda_deph_p1", &BathConfig::lambda_deph_p1)
        .def_readwrite("alpha", &BathConfig::alpha)
        .def_readwrite("omega_c", &BathConfig::omega_c)
        .def_readwrite("beta", &BathConfig::beta);
    py::class_<CouplingOperators>(m, "CouplingOperators")
        .def(py::init<>())
        .def_readwrite("Lambda1", &CouplingOperators::Lambda1)
        .def_readwrite("Lambda2", &CouplingOperators::Lambda2);
    m.def("coupling_operators", &coupling_operators, py::arg("bath"));
    m.def("spectral_density", &spectral_density, py::arg("omega"), py::arg("bath"));
    m.def("occupation", &occupation, py::arg("omega"), py::arg("bath"));
    m.def("correlation_g1", &correlation_g1, py::arg("s"), py::arg("bath"));
    m.def("correlation_g2", &correlation_g2, py::arg("s"), py::arg("bath"));

    // ---- dynamics ----
    py::class_<SimulationGrid>(m, "SimulationGrid")
        .def(py::init<>())
        .def(py::init([](int n_steps, double memory_window) {
                 return SimulationGrid{n_steps, memory_window};
             }),
             py::arg("n_steps"), py::arg("memory_window") = 0.0)
        .def_readwrite("n_steps", &SimulationGrid::n_steps)
        .def_readwrite("memory_window", &SimulationGrid::memory_window);
    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("frame", &Scenario::frame)
        .def_readwrite("gate", &Scenario::gate)
        .def_readwrite("bath", &Scenario::bath)
        .def_readwrite("couplings", &Scenario::couplings)
        .def_readwrite("psi0", &Scenario::psi0)
        .def_readwrite("control_on", &Scenario::control_on);
    m.def("required_steps", &required_steps, py::arg("scenario"));
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("rho", &Trajectory::rho)
        .def_readonly("fidelity", &Trajectory::fidelity)
        .def_readonly("gate_fidelity", &Trajectory::gate_fidelity)
        .def_readonly("max_trace_dev", &Trajectory::max_trace_dev)
        .def_readonly("max_herm_defect", &Trajectory::max_herm_defect)
        .def_readonly("min_eigenvalue", &Trajectory::min_eigenvalue);
    m.def("integrate", &integrate, py::arg("scenario"), py::arg("grid"),
          py::call_guard<py::gil_scoped_release>());
    m.def("fidelity_trace", &fidelity_trace, py::arg("trajectory"), py::arg("scenario"));
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("n_values", &SweepResult::n_values)
        .def_readonly("protected_runs", &SweepResult::protected_runs)
        .def_readonly("unprotected", &SweepResult::unprotected);
    m.def("sweep_gate_fidelity", &sweep_gate_fidelity, py::arg("base"), py::arg("n_values"),
          py::arg("grid"), py::arg("jobs"), py::call_guard<py::gil_scoped_release>());

    // ---- config / runner ----
    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("jobs", &RunConfig::jobs)
        .def_readwrite("initial_state", &RunConfig::initial_state)
        .def_readwrite("d", &RunConfig::d)
        .def_readwrite("n_periods", &RunConfig::n_periods)
        .def_readwrite("n_steps", &RunConfig::n_steps)
        .def_readwrite("n_values", &RunConfig::n_values);
    m.def("preset_fig2", &preset_fig2);
    m.def("load_config", &load_config, py::arg("path"));
    m.def(
        "execute",
        [](const RunConfig& cfg) {
            const Outputs out = execute(cfg);
            py::dict files;
            for (const auto& [name, content] : out.files) files[py::str(name)] = content;
            return py::make_tuple(files, out.stdout_text, out.exit_code);
        },
        py::arg("config"), "Runs a mode; returns (files, stdout_text, exit_code).");
}
