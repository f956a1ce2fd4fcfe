#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gcdd/bath.hpp"
#include "gcdd/linalg.hpp"

namespace gcdd {

enum class RunMode { CheckDecoupling, Run, Sweep, ExportSchedule, Feasibility };

RunMode parse_mode(const std::string& name);  // throws listing the valid modes
std::string mode_name(RunMode mode);

// Resolved configuration. Defaults (equal to the "fig2" preset values) are
// filled for everything except the gate block, whose presence is required by
// the modes that need one.
struct RunConfig {
    RunMode mode = RunMode::Sweep;
    std::string out_dir = "out";
    long seed = 12345;
    int jobs = 0;               // 0 = number of hardware threads
    int initial_state = 1;      // logical index; 1 is the middle level |0> for d=3

    int d = 3;
    int n_periods = 4;          // control periods per bath correlation time
                                // (single-run modes; sweep uses n_values)

    bool has_gate = false;
    std::string gate_name = "hadamard";  // "hadamard" or "custom"
    double tau = 1.0;
    Matrix gate_matrix;                  // generator for custom gates

    double lambda_damp_m1 = 1.0;
    double lambda_damp_p1 = 1.0;
    double lambda_deph_m1 = 1.0;
    double lambda_deph_p1 = 1.0;
    double alpha = 0.1;
    double tau_c = 0.25;         // bath correlation time; omega_c = 2 pi / tau_c
    double beta_omega_c = 1.0;   // beta * omega_c

    int n_steps = 10240;                      // 0 = auto (minimum valid)
    std::optional<double> memory_window;      // unset = 8 tau_c; 0 = full

    std::vector<int> n_values{2, 4, 16};

    double physical_t0_s = 0.1;
    std::array<double, 3> delta_ghz{-1.0, -1.5, -2.2};  // Delta_s/(2 pi), GHz
};

// Fig. 2-style defaults with the gate block marked present.
RunConfig preset_fig2();

// Flat INI file: [section] headers, key = value lines, '#' comments. Unknown
// sections/keys, duplicates, or malformed values raise std::invalid_argument
// with the line number; cross-field violations name the offending field path.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);  // same grammar, for tests

// Cross-field validation used by load_config and after flag overrides.
void validate_config(const RunConfig& cfg);

// Derived objects.
BathConfig bath_from_config(const RunConfig& cfg);
Vector initial_state_vector(const RunConfig& cfg);

// Complex scalar literal: "1.5", "2i", "1+2i", "1.0e-3-2e-4i".
cplx parse_complex(const std::string& text);

}  // namespace gcdd
