#include "gcdd/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gcdd/bath.hpp"
#include "gcdd/frame.hpp"
#include "gcdd/rb87.hpp"

namespace gcdd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(values[i]);
    }
    return out;
}

std::string render_matrix(const Matrix& m) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r) out << "; ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << " ";
            const cplx v = m(r, c);
            out << format_g(v.real());
            if (v.imag() != 0.0) {
                out << (v.imag() < 0 ? "-" : "+") << format_g(std::abs(v.imag())) << "i";
            }
        }
    }
    return out.str();
}

}  // namespace

std::string format_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

NamedGate gate_from_config(const RunConfig& cfg) {
    if (cfg.gate_name == "hadamard") return hadamard_qutrit(cfg.tau);
    return custom_gate(cfg.gate_name, cfg.gate_matrix, cfg.tau);
}

QuditFrame frame_from_config(const RunConfig& cfg, int n) {
    const double omega_c = kTwoPi / cfg.tau_c;
    return build_frame(cfg.d, n * omega_c);
}

Scenario scenario_from_config(const RunConfig& cfg, std::optional<int> n) {
    Scenario sc;
    sc.gate = gate_from_config(cfg);
    sc.bath = bath_from_config(cfg);
    if (cfg.d == 3) {
        sc.couplings = coupling_operators(sc.bath);
    } else {
        const bool active = cfg.alpha != 0.0 &&
                            (cfg.lambda_damp_m1 != 0.0 || cfg.lambda_damp_p1 != 0.0 ||
                             cfg.lambda_deph_m1 != 0.0 || cfg.lambda_deph_p1 != 0.0);
        if (active) {
            throw std::invalid_argument(
                "bath couplings are defined for d = 3; set the lambda weights to zero "
                "to simulate other dimensions noise-free");
        }
        sc.couplings.Lambda1 = Matrix::Zero(cfg.d, cfg.d);
        sc.couplings.Lambda2 = Matrix::Zero(cfg.d, cfg.d);
    }
    sc.psi0 = initial_state_vector(cfg);
    sc.control_on = n.has_value();
    if (n) sc.frame = frame_from_config(cfg, *n);
    return sc;
}

SimulationGrid resolve_grid(const RunConfig& cfg, const std::vector<int>& n_values) {
    SimulationGrid grid;
    if (cfg.memory_window) {
        grid.memory_window = *cfg.memory_window;
    } else {
        grid.memory_window = 8.0 * cfg.tau_c;
    }
    if (cfg.n_steps > 0) {
        grid.n_steps = cfg.n_steps;
    } else {
        int need = required_steps(scenario_from_config(cfg, std::nullopt));
        for (int n : n_values) {
            need = std::max(need, required_steps(scenario_from_config(cfg, n)));
        }
        grid.n_steps = need;
    }
    return grid;
}

std::string render_manifest(const RunConfig& cfg, std::optional<SimulationGrid> grid) {
    std::ostringstream out;
    out << "tool = gcdd\n";
    out << "mode = " << mode_name(cfg.mode) << "\n";
    out << "out = " << cfg.out_dir << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "jobs = " << cfg.jobs << "\n";
    out << "initial_state = " << cfg.initial_state << "\n";
    out << "frame.d = " << cfg.d << "\n";
    out << "frame.n_periods = " << cfg.n_periods << "\n";
    if (cfg.has_gate) {
        out << "gate.name = " << cfg.gate_name << "\n";
        out << "gate.tau = " << format_g(cfg.tau) << "\n";
        if (cfg.gate_name == "custom") {
            out << "gate.matrix = " << render_matrix(cfg.gate_matrix) << "\n";
        }
    }
    out << "bath.lambda_damp_m1 = " << format_g(cfg.lambda_damp_m1) << "\n";
    out << "bath.lambda_damp_p1 = " << format_g(cfg.lambda_damp_p1) << "\n";
    out << "bath.lambda_deph_m1 = " << format_g(cfg.lambda_deph_m1) << "\n";
    out << "bath.lambda_deph_p1 = " << format_g(cfg.lambda_deph_p1) << "\n";
    out << "bath.alpha = " << format_g(cfg.alpha) << "\n";
    out << "bath.tau_c = " << format_g(cfg.tau_c) << "\n";
    out << "bath.beta_omega_c = " << format_g(cfg.beta_omega_c) << "\n";
    out << "derived.omega_c = " << format_g(kTwoPi / cfg.tau_c) << "\n";
    if (grid) {
        out << "grid.n_steps = " << grid->n_steps << "\n";
        out << "grid.memory_window = " << format_g(grid->memory_window) << "\n";
    }
    out << "sweep.n_values = " << join_ints(cfg.n_values) << "\n";
    out << "rb87.physical_t0_s = " << format_g(cfg.physical_t0_s) << "\n";
    out << "rb87.delta_ghz = " << format_g(cfg.delta_ghz[0]) << "," << format_g(cfg.delta_ghz[1])
        << "," << format_g(cfg.delta_ghz[2]) << "\n";
    return out.str();
}

namespace {

Outputs run_check_decoupling(const RunConfig& cfg) {
    const QuditFrame frame = frame_from_config(cfg, cfg.n_periods);
    std::mt19937_64 eng(static_cast<std::uint64_t>(cfg.seed));
    std::normal_distribution<double> dist(0.0, 1.0);
    auto random_matrix = [&]() {
        Matrix m(cfg.d, cfg.d);
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                m(r, c) = cplx(dist(eng), dist(eng));
            }
        }
        return m;
    };

    constexpr int kQuadPanels = 2048;
    constexpr double kThreshold = 1e-8;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        Matrix a = random_matrix();
        if (i < 10) a = Matrix(0.5 * (a + a.adjoint()));
        worst = std::max(worst, check_decoupling_identity(frame, a, kQuadPanels));
    }

    const bool pass = worst <= kThreshold;
    std::ostringstream out;
    out << "check-decoupling: d = " << cfg.d << ", omega0 = " << format_g(frame.omega0)
        << ", panels = " << kQuadPanels << ", matrices = 20\n";
    out << "max deviation = " << format_sci(worst) << "\n";
    out << "threshold     = " << format_sci(kThreshold) << "\n";
    out << "result = " << (pass ? "PASS" : "FAIL") << "\n";

    Outputs o;
    o.stdout_text = out.str();
    o.exit_code = pass ? 0 : 2;
    o.files.emplace_back("run-manifest.txt", render_manifest(cfg, std::nullopt));
    return o;
}

std::string render_fidelity_csv(const std::vector<int>& n_values, const Trajectory& unprotected,
                                const std::vector<Trajectory>& protected_runs, double tau) {
    std::string out = "t_over_tau,unprotected";
    for (int n : n_values) out += ",n_" + std::to_string(n);
    out += "\n";
    const std::size_t rows = unprotected.times.size();
    for (std::size_t k = 0; k < rows; ++k) {
        out += format_sci(unprotected.times[k] / tau);
        out += ",";
        out += format_sci(unprotected.fidelity[k]);
        for (const Trajectory& tr : protected_runs) {
            out += ",";
            out += format_sci(tr.fidelity[k]);
        }
        out += "\n";
    }
    return out;
}

std::string render_gate_fidelity_csv(const std::vector<int>& n_values,
                                     const Trajectory& unprotected,
                                     const std::vector<Trajectory>& protected_runs) {
    std::string out = "n,gate_fidelity\n";
    out += "0," + format_sci(unprotected.fidelity.back()) + "\n";
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        out += std::to_string(n_values[i]) + "," + format_sci(protected_runs[i].fidelity.back()) + "\n";
    }
    return out;
}

std::string render_plot_script(const std::vector<int>& n_values) {
    std::ostringstream out;
    out << "set terminal pngcairo size 960,720 enhanced\n";
    out << "set output 'fidelity.png'\n";
    out << "set datafile separator ','\n";
    out << "set multiplot\n";
    out << "set origin 0.0,0.0\n";
    out << "set size 1.0,1.0\n";
    out << "set xlabel 't / tau'\n";
    out << "set ylabel 'fidelity'\n";
    out << "set yrange [*:1.02]\n";
    out << "set key bottom left\n";
    out << "plot 'fidelity.csv' every ::1 using 1:2 with lines lw 2 title 'unprotected'";
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        out << ", \\\n     'fidelity.csv' every ::1 using 1:" << (3 + i)
            << " with lines lw 2 title 'n = " << n_values[i] << "'";
    }
    out << "\n";
    out << "set origin 0.50,0.25\n";
    out << "set size 0.45,0.50\n";
    out << "set xlabel 'n'\n";
    out << "set ylabel 'gate fidelity'\n";
    out << "set yrange [*:*]\n";
    out << "unset key\n";
    out << "plot 'gate_fidelity.csv' every ::1 using 1:2 with linespoints pt 7 lw 2\n";
    out << "unset multiplot\n";
    out << "unset output\n";
    return out.str();
}

Outputs run_sweep(const RunConfig& cfg, const std::vector<int>& n_values) {
    const Scenario base = scenario_from_config(cfg, std::nullopt);
    const SimulationGrid grid = resolve_grid(cfg, n_values);
    const SweepResult result = sweep_gate_fidelity(base, n_values, grid, cfg.jobs);

    Outputs o;
    o.files.emplace_back("fidelity.csv", render_fidelity_csv(result.n_values, result.unprotected,
                                                             result.protected_runs, base.gate.tau));
    o.files.emplace_back("gate_fidelity.csv",
                         render_gate_fidelity_csv(result.n_values, result.unprotected,
                                                  result.protected_runs));
    o.files.emplace_back("plot.gp", render_plot_script(result.n_values));
    o.files.emplace_back("run-manifest.txt", render_manifest(cfg, grid));

    std::ostringstream out;
    out << "steps = " << grid.n_steps << ", memory window = " << format_g(grid.memory_window)
        << "\n";
    out << "gate fidelity, unprotected: " << format_sci(result.unprotected.fidelity.back()) << "\n";
    for (std::size_t i = 0; i < result.n_values.size(); ++i) {
        out << "gate fidelity, n = " << result.n_values[i] << ": "
            << format_sci(result.protected_runs[i].fidelity.back()) << "\n";
    }
    o.stdout_text = out.str();
    return o;
}

struct ScheduleData {
    RabiSchedule schedule;
    FeasibilityReport report;
    double seconds_per_unit = 0.0;
};

ScheduleData build_schedule(const RunConfig& cfg) {
    if (cfg.d != 3) {
        throw std::invalid_argument("pulse schedules require d = 3");
    }
    const QuditFrame frame = frame_from_config(cfg, cfg.n_periods);
    const NamedGate gate = gate_from_config(cfg);
    const GateSpec spec = make_gate_spec(frame, gate.HG, gate.tau);
    const SimulationGrid grid = resolve_grid(cfg, {cfg.n_periods});

    std::vector<double> times(static_cast<std::size_t>(grid.n_steps) + 1);
    const double dt = gate.tau / grid.n_steps;
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = dt * static_cast<double>(k);

    const DetuningSet det = detunings_from_hz(
        {cfg.delta_ghz[0] * 1e9, cfg.delta_ghz[1] * 1e9, cfg.delta_ghz[2] * 1e9},
        cfg.physical_t0_s, frame.t0);

    ScheduleData data;
    data.schedule = build_rabi_schedule(frame, spec, times, det);
    data.report = feasibility_report(data.schedule, cfg.physical_t0_s);
    data.seconds_per_unit = cfg.physical_t0_s / frame.t0;
    return data;
}

// Columns follow the optical addressing layout: row r is the lower level the
// pair couples through, columns run over q = +1, 0, -1.
std::string render_schedule_csv(const ScheduleData& data) {
    static const char* kCol[3] = {"p1", "0", "m1"};
    std::string out = "# {\"delta_rad_per_s\": [";
    for (int i = 0; i < 3; ++i) {
        if (i) out += ", ";
        out += format_sci(data.schedule.Delta.Delta[i] / data.seconds_per_unit);
    }
    out += "], \"eta\": " + format_sci(data.report.eta);
    out += ", \"max_rabi_hz\": " + format_sci(data.report.max_rabi_hz) + "}\n";

    out += "t_s";
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out += std::string(",re_omega_") + std::to_string(r + 1) + "_" + kCol[c];
            out += std::string(",im_omega_") + std::to_string(r + 1) + "_" + kCol[c];
        }
    }
    out += "\n";

    for (std::size_t k = 0; k < data.schedule.times.size(); ++k) {
        out += format_sci(data.schedule.times[k] * data.seconds_per_unit);
        const Matrix& om = data.schedule.omega[k];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                const cplx v = om(r, c) / data.seconds_per_unit;
                out += "," + format_sci(v.real());
                out += "," + format_sci(v.imag());
            }
        }
        out += "\n";
    }
    return out;
}

std::string render_feasibility_text(const FeasibilityReport& rep) {
    std::ostringstream out;
    out << "eta = " << format_sci(rep.eta) << " (perturbative target <= 1e-03): "
        << (rep.eta_ok ? "PASS" : "FAIL") << "\n";
    out << "max Rabi rate = " << format_sci(rep.max_rabi_hz)
        << " Hz (target <= 1e+07 Hz): " << (rep.rabi_ok ? "PASS" : "FAIL") << "\n";
    out << "detunings / 2pi =";
    for (double v : rep.detuning_hz) out << " " << format_sci(v);
    out << " Hz (target 1e+08 .. 1e+10 Hz): " << (rep.detuning_ok ? "PASS" : "FAIL") << "\n";
    return out.str();
}

Outputs run_export_schedule(const RunConfig& cfg) {
    const ScheduleData data = build_schedule(cfg);
    Outputs o;
    o.files.emplace_back("schedule.csv", render_schedule_csv(data));
    o.files.emplace_back("run-manifest.txt",
                         render_manifest(cfg, resolve_grid(cfg, {cfg.n_periods})));
    std::ostringstream out;
    out << "schedule samples = " << data.schedule.times.size() << "\n";
    out << render_feasibility_text(data.report);
    o.stdout_text = out.str();
    return o;
}

Outputs run_feasibility(const RunConfig& cfg) {
    const ScheduleData data = build_schedule(cfg);
    Outputs o;
    const std::string text = render_feasibility_text(data.report);
    o.files.emplace_back("feasibility.txt", text);
    o.files.emplace_back("run-manifest.txt",
                         render_manifest(cfg, resolve_grid(cfg, {cfg.n_periods})));
    o.stdout_text = text;
    return o;
}

}  // namespace

Outputs execute(const RunConfig& cfg) {
    validate_config(cfg);
    switch (cfg.mode) {
        case RunMode::CheckDecoupling:
            return run_check_decoupling(cfg);
        case RunMode::Run:
            return run_sweep(cfg, {cfg.n_periods});
        case RunMode::Sweep:
            return run_sweep(cfg, cfg.n_values);
        case RunMode::ExportSchedule:
            return run_export_schedule(cfg);
        case RunMode::Feasibility:
            return run_feasibility(cfg);
    }
    throw std::logic_error("unhandled mode");
}

void write_outputs(const Outputs& outputs, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    }
    std::vector<fs::path> written;
    for (const auto& [name, content] : outputs.files) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            for (const fs::path& p : written) fs::remove(p, ec);
            throw std::runtime_error("failed to write '" + path.string() + "'");
        }
        written.push_back(path);
    }
}

}  // namespace gcdd
