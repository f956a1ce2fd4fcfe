#pragma once

#include <array>
#include <vector>

#include "gcdd/frame.hpp"
#include "gcdd/linalg.hpp"

namespace gcdd {

// Red detunings of the three laser colors (all negative, angular frequency).
// Feasible experimental sets also keep the pairwise splittings at or above
// one tenth of the largest magnitude; that is enforced by
// validate_detuning_separation (config boundary), not by the mapping itself.
struct DetuningSet {
    std::array<double, 3> Delta{};
};

void require_negative_detunings(const DetuningSet& det, const char* context);
void validate_detuning_separation(const DetuningSet& det, const char* context);

// Convention for the square root of a negative detuning: sqrt(Delta) = i sqrt(-Delta),
// so that conj(sqrt(Delta)) * sqrt(Delta) = -Delta.
cplx sqrt_negative_detuning(double Delta_s);

// Sampled two-photon Rabi frequencies. omega[k](r, c) is the complex Rabi
// frequency of laser color s = r+1 and polarization q at time times[k], with
// columns ordered q = +1, 0, -1 (the polarization that couples logical state
// c in the basis {|-1>, |0>, |1>} back to the eliminated excited state).
// t0_internal is the control period in internal time units; it fixes the
// conversion to physical units in feasibility_report.
struct RabiSchedule {
    std::vector<double> times;
    std::vector<Matrix> omega;
    DetuningSet Delta;
    double t0_internal = 0.0;
};

// Entrywise mapping Omega(r, c) = sqrt(Delta_{r+1}) * Upsilon(r, c). The six
// upper-triangle entries are the independent choices; the lower triangle is
// the Hermiticity completion (diagonal entries come out purely imaginary).
RabiSchedule map_upsilon_to_rabi(const std::vector<double>& times,
                                 const std::vector<Matrix>& upsilon_samples,
                                 const DetuningSet& Delta, double t0_internal);

// Samples Upsilon(t) of the laboratory construction on the given grid and
// maps it to a schedule.
RabiSchedule build_rabi_schedule(const QuditFrame& frame, const GateSpec& gate,
                                 const std::vector<double>& times,
                                 const DetuningSet& Delta);

// Reconstruction of the adiabatically eliminated level structure:
// H_eff = -Theta^dagger Theta with Theta(r, c) = Omega(r, c) / sqrt(Delta_{r+1}).
Matrix effective_hamiltonian(const RabiSchedule& schedule, std::size_t t_index);

// Advisory experimental-feasibility summary. eta = max |Omega/Delta| is
// dimensionless; magnitudes are converted to physical units through
// seconds-per-internal-unit = physical_t0 / t0_internal.
struct FeasibilityReport {
    double eta = 0.0;
    double max_rabi_hz = 0.0;                 // max |Omega| / (2 pi), Hz
    std::array<double, 3> detuning_hz{};      // |Delta_s| / (2 pi), Hz
    bool eta_ok = false;                      // eta <= 1e-3
    bool rabi_ok = false;                     // max Rabi <= 10 MHz
    bool detuning_ok = false;                 // all |Delta|/2pi in [0.1, 10] GHz
};

FeasibilityReport feasibility_report(const RabiSchedule& schedule, double physical_t0);

// Convert physical detunings given as Delta_s/(2 pi) in Hz (negative) into
// internal angular-frequency units for a frame whose control period lasts
// physical_t0 seconds.
DetuningSet detunings_from_hz(const std::array<double, 3>& delta_hz,
                              double physical_t0, double t0_internal);

}  // namespace gcdd
