#include "gcdd/rb87.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gcdd {

namespace {
constexpr double kPi = std::numbers::pi;
}

void require_negative_detunings(const DetuningSet& det, const char* context) {
    for (double Delta : det.Delta)
        if (!(Delta < 0.0))
            throw std::invalid_argument(std::string(context) + ": detunings must be negative");
}

void validate_detuning_separation(const DetuningSet& det, const char* context) {
    require_negative_detunings(det, context);
    double max_abs = 0.0;
    for (double Delta : det.Delta) max_abs = std::max(max_abs, std::abs(Delta));
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (std::abs(det.Delta[a] - det.Delta[b]) < 0.1 * max_abs)
                throw std::invalid_argument(
                    std::string(context) +
                    ": detunings must differ pairwise by at least 0.1 * max|Delta|");
}

cplx sqrt_negative_detuning(double Delta_s) {
    if (!(Delta_s < 0.0))
        throw std::invalid_argument("sqrt_negative_detuning: detuning must be negative");
    return cplx(0.0, std::sqrt(-Delta_s));
}

RabiSchedule map_upsilon_to_rabi(const std::vector<double>& times,
                                 const std::vector<Matrix>& upsilon_samples,
                                 const DetuningSet& Delta, double t0_internal) {
    if (times.size() != upsilon_samples.size())
        throw std::invalid_argument("map_upsilon_to_rabi: times/samples size mismatch");
    if (!(t0_internal > 0.0))
        throw std::invalid_argument("map_upsilon_to_rabi: t0_internal must be positive");
    require_negative_detunings(Delta, "map_upsilon_to_rabi");

    std::array<cplx, 3> root{};
    for (int s = 0; s < 3; ++s) root[s] = sqrt_negative_detuning(Delta.Delta[s]);

    RabiSchedule sched;
    sched.times = times;
    sched.Delta = Delta;
    sched.t0_internal = t0_internal;
    sched.omega.reserve(upsilon_samples.size());
    for (const Matrix& U : upsilon_samples) {
        if (U.rows() != 3 || U.cols() != 3)
            throw std::invalid_argument("map_upsilon_to_rabi: samples must be 3x3");
        require_hermitian(U, "map_upsilon_to_rabi");
        Matrix omega(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) omega(r, c) = root[r] * U(r, c);
        sched.omega.push_back(std::move(omega));
    }
    return sched;
}

RabiSchedule build_rabi_schedule(const QuditFrame& frame, const GateSpec& gate,
                                 const std::vector<double>& times,
                                 const DetuningSet& Delta) {
    if (frame.d != 3)
        throw std::invalid_argument("build_rabi_schedule: the Rabi mapping is a qutrit scheme");
    std::vector<Matrix> ups;
    ups.reserve(times.size());
    for (double t : times) ups.push_back(lab_hamiltonian(frame, gate, t).Upsilon);
    return map_upsilon_to_rabi(times, ups, Delta, frame.t0);
}

Matrix effective_hamiltonian(const RabiSchedule& schedule, std::size_t t_index) {
    if (t_index >= schedule.omega.size())
        throw std::invalid_argument("effective_hamiltonian: sample index out of range");

    std::array<cplx, 3> root{};
    for (int s = 0; s < 3; ++s) root[s] = sqrt_negative_detuning(schedule.Delta.Delta[s]);

    Matrix Theta(3, 3);
    const Matrix& omega = schedule.omega[t_index];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) Theta(r, c) = omega(r, c) / root[r];

    Matrix Heff = -(Theta.adjoint() * Theta);
    return (Heff + Heff.adjoint()) / 2.0;
}

FeasibilityReport feasibility_report(const RabiSchedule& schedule, double physical_t0) {
    if (!(physical_t0 > 0.0))
        throw std::invalid_argument("feasibility_report: physical_t0 must be positive");
    if (!(schedule.t0_internal > 0.0))
        throw std::invalid_argument("feasibility_report: schedule lacks a control period");

    const double seconds_per_unit = physical_t0 / schedule.t0_internal;

    FeasibilityReport rep;
    double max_omega = 0.0;
    for (const Matrix& omega : schedule.omega) {
        for (int r = 0; r < 3; ++r) {
            double inv_delta = 1.0 / std::abs(schedule.Delta.Delta[r]);
            for (int c = 0; c < 3; ++c) {
                double mag = std::abs(omega(r, c));
                max_omega = std::max(max_omega, mag);
                rep.eta = std::max(rep.eta, mag * inv_delta);
            }
        }
    }
    rep.max_rabi_hz = max_omega / seconds_per_unit / (2.0 * kPi);
    for (int s = 0; s < 3; ++s)
        rep.detuning_hz[s] = std::abs(schedule.Delta.Delta[s]) / seconds_per_unit / (2.0 * kPi);

    rep.eta_ok = rep.eta <= 1e-3;
    rep.rabi_ok = rep.max_rabi_hz <= 10e6;
    rep.detuning_ok = true;
    for (double f : rep.detuning_hz)
        rep.detuning_ok = rep.detuning_ok && f >= 0.1e9 && f <= 10e9;
    return rep;
}

DetuningSet detunings_from_hz(const std::array<double, 3>& delta_hz,
                              double physical_t0, double t0_internal) {
    if (!(physical_t0 > 0.0) || !(t0_internal > 0.0))
        throw std::invalid_argument("detunings_from_hz: time scales must be positive");
    const double seconds_per_unit = physical_t0 / t0_internal;
    DetuningSet det;
    for (int s = 0; s < 3; ++s)
        det.Delta[s] = 2.0 * kPi * delta_hz[s] * seconds_per_unit;
    require_negative_detunings(det, "detunings_from_hz");
    return det;
}

}  // namespace gcdd
