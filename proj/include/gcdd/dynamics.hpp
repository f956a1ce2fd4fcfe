#pragma once

#include <optional>
#include <vector>

#include "gcdd/bath.hpp"
#include "gcdd/frame.hpp"
#include "gcdd/gates.hpp"
#include "gcdd/linalg.hpp"

namespace gcdd {

// Time grid for one gate window [0, tau]. dt = tau / n_steps must resolve the
// fastest drive frequency (20 samples per period of (d^2-1) omega0 when the
// control is on), the bath correlation time, and the gate's own eigenfrequency
// spread. memory_window <= 0 means the full history is kept.
struct SimulationGrid {
    int n_steps = 0;
    double memory_window = 0.0;
};

// One dissipative run. With control_on the couplings are conjugated by
// U_c(t) U_G(t) (doubly rotated picture); without it only U_G(t) remains and
// the frame is ignored.
struct Scenario {
    std::optional<QuditFrame> frame;
    NamedGate gate;
    BathConfig bath;
    CouplingOperators couplings;
    Vector psi0;
    bool control_on = true;
};

void validate_scenario(const Scenario& scn, const char* context);

// Minimum n_steps acceptable for this scenario at gate time tau.
int required_steps(const Scenario& scn);

// Throws std::invalid_argument naming the required n_steps if too coarse.
void validate_grid(const Scenario& scn, const SimulationGrid& grid, const char* context);

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> rho;        // doubly rotated picture
    std::vector<double> fidelity;   // <psi0| rho(t) |psi0>
    double gate_fidelity = 0.0;     // fidelity at t = tau
    double max_trace_dev = 0.0;
    double max_herm_defect = 0.0;
    double min_eigenvalue = 0.0;    // most negative rho eigenvalue observed
};

// Coupling operator carried to the doubly rotated picture:
// U_G^dagger(t) U_c^dagger(t) L U_c(t) U_G(t).
Matrix rotate_coupling(const Scenario& scn, double t, const Matrix& L);

// Integrates
//   d rho/dt = -sum_s int_0^t { [rho L_s^dag(t'), L_s(t)] G1(t-t')
//                             - [L_s(t') rho, L_s^dag(t)] G1(t-t')*
//                             + [rho L_s(t'), L_s^dag(t)] G2(t-t')
//                             - [L_s^dag(t') rho, L_s(t)] G2(t-t')* } dt'
// (L_s = rotated coupling of bath s, rho time-local) with a Heun
// predictor-corrector. The memory integral is a trapezoid sum over
// precomputed coupling samples and kernel tables; because it is independent
// of rho it is accumulated once per node, so a step costs O(window) small
// matrix updates.
Trajectory integrate(const Scenario& scn, const SimulationGrid& grid);

// Recomputed overlap trace (same quantity integrate() records).
std::vector<double> fidelity_trace(const Trajectory& traj, const Scenario& scn);

struct SweepResult {
    std::vector<int> n_values;             // ascending
    std::vector<Trajectory> protected_runs;  // aligned with n_values
    Trajectory unprotected;
};

// One protected run per n (omega0 = n * omega_c, i.e. n control periods per
// bath correlation time) plus an unprotected baseline, all on the shared
// grid. Runs execute on up to `jobs` worker threads; results are merged by
// slot so the output does not depend on scheduling.
SweepResult sweep_gate_fidelity(const Scenario& base, std::vector<int> n_values,
                                const SimulationGrid& grid, int jobs);

}  // namespace gcdd
